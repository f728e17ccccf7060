"""Exception hierarchy shared across the planner."""


class PlannerError(Exception):
    """Base class for all planner-specific failures."""


class ConfigError(PlannerError):
    """Invalid or inconsistent configuration input (CLI exit code 2)."""


class InfeasibleError(PlannerError):
    """No deployment satisfies the stated constraints (CLI exit code 1)."""


class DegenerateCoverageError(PlannerError):
    """The coverage region collapsed to a point; downstream quantities undefined."""


class QuadratureError(PlannerError):
    """Numerical integration failed to reach the requested tolerance."""
