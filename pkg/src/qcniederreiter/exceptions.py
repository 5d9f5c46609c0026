"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid code, field or analysis parameters."""


class BudgetExceeded(RuntimeError):
    """A retry budget, table budget or enumeration cap was exhausted."""


class SyndromeCollision(RuntimeError):
    """Two distinct low-weight errors share a syndrome (code cannot correct t errors)."""


class KeyFormatError(ValueError):
    """Malformed key, ciphertext or plaintext file."""
