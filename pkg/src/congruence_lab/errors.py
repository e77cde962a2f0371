"""Exception types shared across the package."""


class CongruenceLabError(Exception):
    """Base class for all errors raised by this package."""


class NonInvertibleError(CongruenceLabError, ValueError):
    """Raised when asked to invert a residue that shares a factor with the modulus."""


class GroupMismatchError(CongruenceLabError, ValueError):
    """Raised when combining characters that belong to different groups."""


class ModulusMismatchError(CongruenceLabError, ValueError):
    """Raised when combining residue sets over different moduli."""


class PreconditionFailedError(CongruenceLabError, ValueError):
    """Raised when an operation's stated precondition does not hold."""


class BudgetExceededError(CongruenceLabError, RuntimeError):
    """Raised when a request would exceed a configured enumeration or memory budget."""


class DomainError(CongruenceLabError, ValueError):
    """Raised when a numeric argument lies outside its admissible range."""


class ConfigError(CongruenceLabError, ValueError):
    """Raised for invalid experiment configuration."""
