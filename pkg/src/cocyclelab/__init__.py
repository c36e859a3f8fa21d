"""Numerical toolkit for bounded cocycles of isometries over minimal
circle dynamics: Pos(n) geometry, CAT(0) centers, twisted
cohomological-equation solvers, and reduction of bounded matrix cocycles
to orthogonal / conformal ones."""

from .circle import GOLDEN_MEAN, ParabolicBase, RotationBase
from .cocycles import (
    FiniteIsometry,
    IsometryCocycle,
    MatrixCocycle,
    ShiftCocycle,
)
from .solvers import Section, TrigPoly, TwistedEquation

__version__ = "0.1.0"

__all__ = [
    "GOLDEN_MEAN",
    "ParabolicBase",
    "RotationBase",
    "FiniteIsometry",
    "IsometryCocycle",
    "MatrixCocycle",
    "ShiftCocycle",
    "Section",
    "TrigPoly",
    "TwistedEquation",
    "__version__",
]
