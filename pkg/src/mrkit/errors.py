"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed input text. ``line`` is the 1-based offending line, if known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapExceeded(RuntimeError):
    """An exact search refused to run because the instance is over a size cap."""


class HypothesisError(ValueError):
    """A characterization was asked about an input outside its hypotheses.

    This is deliberately distinct from a negative verdict.
    """
