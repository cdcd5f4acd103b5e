"""Exception hierarchy for mvbounds."""


class MVBoundsError(Exception):
    """Base class for all mvbounds errors."""


class OutOfRangeError(MVBoundsError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidSpecError(MVBoundsError):
    """The moment specification makes the constraint set empty or degenerate."""


class DegenerateStrikeError(MVBoundsError):
    """The strike makes the optimization problem degenerate (cap always binds)."""


class InfeasibleError(MVBoundsError):
    """No grid-supported distribution satisfies the moment constraints.

    Usually signals a grid that is too narrow for the requested moments, or
    moments that are inconsistent with the support restriction.
    """


class IllConditionedError(MVBoundsError):
    """Every candidate support subset produced a numerically singular system."""
