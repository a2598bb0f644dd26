"""Spectral calculus for the Grushin operator and its estimate harness.

The operator L = -lap_x1 - |x1|^2 lap_x2 on R^d1 x R^d2 diagonalizes over
scaled Hermite modes after a Fourier transform in the degenerate block;
this package realizes that diagonalization on a box-times-torus grid where
every Plancherel identity is exact, and verifies the quantitative kernel
estimates built on top of it (weighted Plancherel bounds, heat kernel
asymptotics, uniformity of smoothed spectral cutoffs, sharpness of local
Sobolev norm growth) at desk scale.
"""

from ._accel import backend_name
from .geometry import Dimensions, Point
from .multipliers import JointMultiplier, Multiplier
from .report import EstimateReport
from .spectral import Field, SpectralCoeffs, TorusGrid

__version__ = "0.1.0"

__all__ = [
    "Dimensions",
    "EstimateReport",
    "Field",
    "JointMultiplier",
    "Multiplier",
    "Point",
    "SpectralCoeffs",
    "TorusGrid",
    "backend_name",
    "__version__",
]
