"""Common interface of the guided-wave models."""

from abc import ABC, abstractmethod

LEFT_SIDE = "LEFT"
RIGHT_SIDE = "RIGHT"


class WaveModel(ABC):
    """A closed-form wave function seen through its density and guidance field.

    Subclasses also expose ``velocity_kernel`` (a numba-compiled
    ``v(x, t, args)`` returning NaN where the Python-level ``velocity`` would
    raise) and ``kernel_args`` so the integrator can run fully compiled.
    """

    name: str
    default_horizon: float
    velocity_kernel = None
    kernel_args = ()

    @abstractmethod
    def density(self, x, t): ...

    @abstractmethod
    def density_dt(self, x, t): ...

    @abstractmethod
    def velocity(self, x, t): ...

    @abstractmethod
    def cumulative(self, x, t):
        """Integral of the density from 0 to x."""

    @abstractmethod
    def reference_density(self, x): ...

    @abstractmethod
    def reference_cdf(self, x): ...

    def in_domain(self, x, t):
        return True

    def well_center(self, t, side):
        return well_center(self, t, side)

    def __repr__(self):
        return f"{type(self).__name__}()"


def well_center(model, t, side):
    """Centre of the well the particle occupies: packets recede at unit speed."""
    if t < 0:
        raise ValueError("t must be non-negative")
    side = str(getattr(side, "value", side)).upper()
    if side == LEFT_SIDE:
        return -float(t)
    if side == RIGHT_SIDE:
        return float(t)
    raise ValueError(f"side must be LEFT or RIGHT, got {side!r}")


def reference_density(model, x):
    return model.reference_density(x)
