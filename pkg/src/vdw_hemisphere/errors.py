"""Exception hierarchy shared by all modules."""


class VdwError(Exception):
    """Base class for every error raised by this package."""


class DomainError(VdwError, ValueError):
    """A point or parameter lies outside the admissible region."""


class SingularityError(VdwError, ValueError):
    """Evaluation requested exactly at a singular point."""


class ConvergenceError(VdwError, RuntimeError):
    """Successive refinement levels of a numerical scheme disagree."""


class ResolutionError(VdwError, RuntimeError):
    """A root bracket implied by grid data could not be confirmed."""


class ConfigError(VdwError, ValueError):
    """Invalid run configuration (CLI input)."""
