"""Maxwell's equations as a complex matrix system on S3 and H3 backgrounds."""

from .errors import AssemblyError, ConvergenceError, CoordinateError, QuantizationError
from .geometry import Coordinates, Kind, SpaceModel
from .matrix_core import Basis, FieldVector
from .modes import ModeGrid, ModeSpec, evaluate_mode, spectrum, to_physical_fields
from .radial import RadialParams, solve_radial
from .special import HypParams, hyp2f1

__all__ = [
    "AssemblyError",
    "Basis",
    "ConvergenceError",
    "Coordinates",
    "CoordinateError",
    "FieldVector",
    "HypParams",
    "Kind",
    "ModeGrid",
    "ModeSpec",
    "QuantizationError",
    "RadialParams",
    "SpaceModel",
    "evaluate_mode",
    "hyp2f1",
    "solve_radial",
    "spectrum",
    "to_physical_fields",
]

__version__ = "0.1.0"
