"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ModeError(ValueError):
    """The operation's hypotheses do not hold; a different routine applies."""


class ConfigError(ValueError):
    """A tuning parameter violates its admissible range."""


class ResourceError(RuntimeError):
    """A computation would exceed its configured size budget."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed, signalling a construction bug."""
