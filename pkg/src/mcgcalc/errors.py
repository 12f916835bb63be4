"""Exception types shared across the package."""


class McgError(Exception):
    """Base class for all errors raised by this package."""


class SystemMismatch(McgError):
    """Operands were built over different curve systems."""


class UnknownCurve(McgError):
    """A curve name is not declared in the ambient system."""


class UnknownClass(McgError):
    """A homology class is needed but the curve was declared opaque."""


class DimensionError(McgError):
    """A vector or matrix has the wrong size for the ambient genus."""


class NotSymplectic(McgError):
    """A matrix does not preserve the standard symplectic form."""


class NotARelator(McgError):
    """A word whose homological image is not the identity."""


class MalformedRelation(McgError):
    """A relation declaration with the wrong arity or shape."""


class InvalidRelation(McgError):
    """A relation that failed homological validation."""


class SubstMismatch(McgError):
    """The word does not match the relation side at the given position."""

    def __init__(self, expected, found):
        super().__init__(f"expected subword {expected!r}, found {found!r}")
        self.expected = expected
        self.found = found


class ScriptError(McgError):
    """A derivation script step failed; carries the 1-based step index."""

    def __init__(self, step, move, message):
        super().__init__(f"step {step} ({move}): {message}")
        self.step = step
        self.move = move


class ParseError(McgError):
    """A syntax or resolution error in an input file."""

    def __init__(self, message, line=None, col=None, token=None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if col is not None:
                loc += f", col {col}"
            loc += ": "
        tok = f" (at {token!r})" if token else ""
        super().__init__(f"{loc}{message}{tok}")
        self.line = line
        self.col = col
        self.token = token
