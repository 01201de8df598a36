"""Exception hierarchy shared by all modules."""


class PilotWaveError(Exception):
    """Base class for every error raised by this package."""


class NonConvergence(PilotWaveError):
    """Adaptive quadrature exhausted its subdivision budget."""


class StepFailure(PilotWaveError):
    """ODE step size underflowed, or the velocity field became non-finite."""


class DomainError(PilotWaveError):
    """A closed-form field was evaluated outside its certified domain."""


class NodeSingularity(PilotWaveError):
    """Velocity requested at a node of the density."""


class DegenerateEquilibrium(PilotWaveError):
    """Recurrence seeded exactly at the unstable fixed point x = 0."""


class EmptyInput(PilotWaveError):
    """A statistic was requested from an empty sample."""
