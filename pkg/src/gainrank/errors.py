"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed gain-graph text, a non-unit gain, or an invalid edge."""


class SizeLimitError(RuntimeError):
    """An exhaustive search was asked to run beyond its configured limit."""


class TheoremViolation(RuntimeError):
    """A proven bound or equivalence failed on a concrete instance.

    This never means the mathematics is wrong; it means the code is. The
    offending instance rides along so it can be serialized and replayed.
    """

    def __init__(self, message: str, instance=None):
        super().__init__(message)
        self.instance = instance
