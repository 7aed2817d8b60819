"""Resource caps shared by the enumeration-heavy modules."""
import os

from .errors import InvalidInputError

DEFAULT_MAX_ARITY = 24
SEPARABILITY_MAX_WIDTH = 12
EQ_MATRIX_MAX_WIDTH = 40
DEFAULT_COUNTEREXAMPLE_LIMIT = 32


def max_arity() -> int:
    """Arity cap for exhaustive enumeration; ``NNREPR_MAX_ARITY`` overrides it."""
    raw = os.environ.get("NNREPR_MAX_ARITY")
    if raw is None:
        return DEFAULT_MAX_ARITY
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInputError(f"NNREPR_MAX_ARITY must be an integer, got {raw!r}") from None
    if value < 1:
        raise InvalidInputError("NNREPR_MAX_ARITY must be positive")
    return value
