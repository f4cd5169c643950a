"""Canonical heights of torsion translates of the line x0+x1+x2 = 0.

Computes the height of the intersection point C ∩ ωC for torsion points ω
of the 2-torus, reproduces the limit constant 2ζ(3)/(3ζ(2)) by three
independent numerical routes (Galois-orbit sums over grids, singular
quadrature of the reduced torus integral, and averages over the amoeba of
1+z1+z2), and provides experiment harnesses over torsion grids and curves.
"""

from .amoeba import AmoebaPoint, RegionTag
from .constants import SpecialValues, eta, special_values, theta
from .curves import TorsionCurve
from .errors import EmptyIntersection, IllConditioned, NontrivialityError
from .grid import DistStats, HeightGrid, compute_grid
from .quad import BudgetExceeded, QuadResult
from .torsion import (
    Extremality,
    HeightBreakdown,
    TorsionPoint,
    archimedean_height,
    classify_extremal,
    intersection_point,
    nonarchimedean_height,
    order,
    total_height,
)

__version__ = "0.1.0"

__all__ = [
    "AmoebaPoint",
    "BudgetExceeded",
    "DistStats",
    "EmptyIntersection",
    "Extremality",
    "HeightBreakdown",
    "HeightGrid",
    "IllConditioned",
    "NontrivialityError",
    "QuadResult",
    "RegionTag",
    "SpecialValues",
    "TorsionCurve",
    "TorsionPoint",
    "archimedean_height",
    "classify_extremal",
    "compute_grid",
    "eta",
    "intersection_point",
    "nonarchimedean_height",
    "order",
    "special_values",
    "theta",
    "total_height",
]
