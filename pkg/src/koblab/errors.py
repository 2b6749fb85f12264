"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class KoblabError(Exception):
    """Base class for all library errors."""


class DomainError(KoblabError):
    """A point, curve, or map violates a domain contract (CLI exit code 3)."""


class ConfigError(KoblabError):
    """Malformed configuration or input file (CLI exit code 2)."""


class BudgetError(KoblabError):
    """An optimization budget was exhausted before reaching its target (CLI exit code 4)."""
