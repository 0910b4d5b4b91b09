class DomainError(ValueError):
    """Raised when an argument lies outside the supported domain of an operation."""
