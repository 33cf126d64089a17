"""Exception types shared across the package."""


class DigraphError(ValueError):
    """Malformed digraph: self-loop, duplicate edge or undeclared endpoint."""


class ResourceLimitError(RuntimeError):
    """A configured size budget (path count, vertex count) was exceeded."""


class MorseError(ValueError):
    """Invalid Morse function input (negative value, missing vertex)."""


class MatchingError(RuntimeError):
    """A path was found in two matching pairs."""


class PreconditionError(ValueError):
    """An operation was called outside its stated preconditions."""


class DocumentError(ValueError):
    """A JSON document does not follow the expected schema."""
