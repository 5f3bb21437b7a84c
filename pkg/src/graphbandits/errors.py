"""Exception types shared across the package."""


class GraphBanditError(Exception):
    """Base class for package-specific failures."""


class DegenerateInstanceError(GraphBanditError):
    """An instance violates the unique-optimal-arm requirement."""


class DegenerateContextsError(GraphBanditError):
    """The context set has no linear content (all zero vectors)."""


class SpannerConvergenceError(GraphBanditError):
    """The determinant-swap iteration exceeded its iteration cap."""


class SingularGramError(GraphBanditError):
    """A Gram matrix required to be invertible is singular."""


class InfeasibleProgramError(GraphBanditError):
    """An allocation program has no feasible point."""


class ConfigError(GraphBanditError):
    """An experiment configuration is invalid."""
