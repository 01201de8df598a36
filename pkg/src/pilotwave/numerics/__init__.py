from .finite_diff import central_diff, forward_diff
from .ode import OdeSpec, Trajectory, solve_ode
from .quadrature import QuadratureSpec, integrate
from .special import erf, erfc, erfcx

__all__ = [
    "OdeSpec",
    "QuadratureSpec",
    "Trajectory",
    "central_diff",
    "erf",
    "erfc",
    "erfcx",
    "forward_diff",
    "integrate",
    "solve_ode",
]
