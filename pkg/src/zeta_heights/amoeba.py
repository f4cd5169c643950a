"""The amoeba of 1 + z1 + z2: membership, moments, Ronkin function, and duals.

Points live in tropicalization coordinates u = (-log|z1|, -log|z2|).  A
point u belongs to the amoeba exactly when the moduli (1, e^{-u1}, e^{-u2})
can close a (possibly degenerate) triangle, which turns membership into
three inequalities evaluated overflow-free in the log domain.

The Ronkin function

    rho(u) = -avg over the unit torus of log|1 + z1 e^{-u1} + z2 e^{-u2}|

is evaluated through the inner Jensen identity
avg_z log|a + b z| = log max(|a|, |b|), which collapses the double average
to a single integral

    rho(u) = -integral(0,1) log max(|1 + e^{-u1} e^{2 pi i s}|, e^{-u2}) ds.

rho is concave, coincides with Psi(u) = min(0, u1, u2) off the amoeba, and
the determinant of its Hessian equals 1/pi^2 on the amoeba's interior.
The average of -Psi over the amoeba is the limit height eta, giving a
route to that constant independent of both the zeta series and the torus
quadrature.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import quad
from .errors import IllConditioned

# The objective of the dual search is linear outside a compact neighborhood
# of the amoeba, so minima for interior simplex points fall well inside
# this box.
SEARCH_RADIUS = 25.0

_COORD_LIMIT = 700.0  # exp(|u|) must stay inside double range

_TAU = 2.0 * math.pi


@dataclass(frozen=True)
class AmoebaPoint:
    u1: float
    u2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.u1) and math.isfinite(self.u2)):
            raise ValueError("coordinates must be finite")


class RegionTag(enum.Enum):
    EAST = "east"
    WEST = "west"
    SOUTH = "south"
    OUTSIDE = "outside"
    BOUNDARY = "boundary"


def psi(u: AmoebaPoint) -> float:
    """Support function of the standard simplex: min(0, u1, u2)."""
    return min(0.0, u.u1, u.u2)


def _triangle_slacks(u: AmoebaPoint) -> tuple[float, float, float]:
    # log((r1+r2)/1), log((1+r2)/r1), log((1+r1)/r2); all >= 0 iff u is in
    # the amoeba.
    return (
        float(np.logaddexp(-u.u1, -u.u2)),
        float(np.logaddexp(0.0, -u.u2)) + u.u1,
        float(np.logaddexp(0.0, -u.u1)) + u.u2,
    )


def contains(u: AmoebaPoint) -> bool:
    """True iff each of 1, e^{-u1}, e^{-u2} is at most the sum of the others."""
    return min(_triangle_slacks(u)) >= 0.0


def region(u: AmoebaPoint, boundary_tol: float = 1e-12) -> RegionTag:
    """Locate u among the three tentacle regions of the amoeba."""
    slack = min(_triangle_slacks(u))
    if slack < 0.0:
        return RegionTag.OUTSIDE
    if slack <= boundary_tol:
        return RegionTag.BOUNDARY
    if min(0.0, u.u1) >= u.u2:
        return RegionTag.SOUTH
    if min(0.0, u.u2) >= u.u1:
        return RegionTag.WEST
    return RegionTag.EAST


def south_moment(m: int, tol: float = 1e-10, *, budget: int = quad.DEFAULT_BUDGET) -> quad.QuadResult:
    """integral of u2^m over the south region {u in amoeba : min(0,u1) >= u2}.

    Integrating out u1 leaves integral(-inf, 0) -u2^m log(1 - e^{u2}) du2;
    the closed form is (-1)^m m! zeta(m+2).
    """
    if m < 0:
        raise ValueError(f"moment order must be >= 0, got {m}")

    def integrand(u: np.ndarray) -> np.ndarray:
        # log1p/expm1 keep the u -> 0 tail finite until the last ulp
        return -(u**m) * np.log(-np.expm1(u))

    return quad.integrate_semiinfinite(integrand, tol, budget=budget)


def volume(tol: float = 1e-10) -> float:
    """Area of the amoeba: 3 * vol(south) = 3*zeta(2) = pi^2/2.

    The south region maps onto the other two thirds by (u1,u2) -> (-u2,u1-u2)
    and by the diagonal swap, both measure-preserving.
    """
    return 3.0 * south_moment(0, tol).value


def psi_average(tol: float = 1e-10) -> float:
    """-(1/vol) * integral of Psi over the amoeba; equals eta.

    Psi vanishes on the east region and contributes the same integral on
    the west and south ones, so the integral is 2 * south_moment(1).
    """
    psi_integral = 2.0 * south_moment(1, tol).value
    return -psi_integral / volume(tol)


def _check_coord_range(u: AmoebaPoint) -> None:
    if max(abs(u.u1), abs(u.u2)) > _COORD_LIMIT:
        raise ValueError(f"coordinates exceed the supported range +-{_COORD_LIMIT}")


def _switch_breaks(rr: float, floor_log: float) -> tuple[float, ...]:
    """Parameters s where the scaled modulus crosses the scaled floor.

    Works on |1 + rr e^{2 pi i s}|^2 = (1-rr)^2 + 4 rr cos(pi s)^2 with
    rr <= 1, whose two nonnegative terms keep the crossing location
    accurate even when the modulus nearly vanishes.
    """
    if floor_log > 1.0:  # floor above the largest possible modulus 1 + rr
        return ()
    floor = math.exp(floor_log)
    q = (floor * floor - (1.0 - rr) * (1.0 - rr)) / (4.0 * rr)
    if not (0.0 < q < 1.0):
        return ()
    s_lo = math.acos(math.sqrt(q)) / math.pi
    return (s_lo, 1.0 - s_lo)


def ronkin(u: AmoebaPoint, tol: float = 1e-9, *, budget: int = quad.DEFAULT_BUDGET) -> float:
    """The Ronkin function of 1 + z1 + z2 at u, by adaptive quadrature.

    The integrand log max(|1 + e^{-u1} e^{2 pi i s}|, e^{-u2}) is bounded
    (the floor is positive) with kinks at the crossing parameters, which
    are declared as break points.  The larger of the moduli 1 and e^{-u1}
    is factored out first, so the evaluation never overflows on the
    supported coordinate range.
    """
    _check_coord_range(u)
    # |1 + r z| = max(1, r) * |1 + rr z'| with rr = min(r, 1/r) <= 1
    scale = max(0.0, -u.u1)
    rr = math.exp(-abs(u.u1))
    floor_log = -u.u2 - scale
    sq_dist = (1.0 - rr) * (1.0 - rr)
    four_rr = 4.0 * rr

    def integrand(s: np.ndarray) -> np.ndarray:
        m2 = sq_dist + four_rr * np.cos(math.pi * s) ** 2
        return np.maximum(0.5 * np.log(m2), floor_log)

    res = quad.integrate(integrand, 0.0, 1.0, tol, break_points=_switch_breaks(rr, floor_log), budget=budget)
    return -(scale + res.value)


# Fixed composite rule used only to scan many points at once during the
# coarse stage of the dual search; accuracy ~1e-5 near kinks is plenty for
# locating a minimum that a refinement stage then polishes.
_BATCH_PANELS = 16
_BATCH_EDGES = np.linspace(0.0, 1.0, _BATCH_PANELS + 1)
_BATCH_S = (
    0.5 * (_BATCH_EDGES[:-1] + _BATCH_EDGES[1:])[:, None] + (0.5 / _BATCH_PANELS) * quad.NODES[None, :]
).ravel()
_BATCH_W = np.tile(quad.KRONROD_WEIGHTS, _BATCH_PANELS) * (0.5 / _BATCH_PANELS)
_BATCH_COS2 = np.cos(math.pi * _BATCH_S) ** 2


def _ronkin_batch(u1: np.ndarray, u2: np.ndarray) -> np.ndarray:
    r = np.exp(-np.asarray(u1, dtype=float))
    m2 = (1.0 - r[..., None]) ** 2 + 4.0 * r[..., None] * _BATCH_COS2
    integrand = np.maximum(0.5 * np.log(m2), -np.asarray(u2, dtype=float)[..., None])
    return -(integrand @ _BATCH_W)


_PATTERN_STEPS = ((-1, 0), (1, 0), (0, -1), (0, 1), (-1, -1), (-1, 1), (1, -1), (1, 1))


def legendre_dual(x: tuple[float, float], tol: float = 1e-9) -> float:
    """Concave conjugate of the Ronkin function at x in the standard simplex.

    Minimizes u -> <x, u> - rho(u) by a coarse grid scan over the search
    box followed by pattern refinement; the objective is convex, so local
    descent from the grid minimum is safe.  On the simplex boundary the
    true infimum is approached along tentacle directions and the reported
    value carries the search-box truncation (well below 1e-3).
    """
    x1, x2 = float(x[0]), float(x[1])
    if x1 < -1e-12 or x2 < -1e-12 or x1 + x2 > 1.0 + 1e-12:
        raise ValueError(f"({x1}, {x2}) lies outside the standard simplex")

    r_box = SEARCH_RADIUS
    n = 51
    g1, g2 = np.meshgrid(np.linspace(-r_box, r_box, n), np.linspace(-r_box, r_box, n), indexing="ij")
    objective = x1 * g1 + x2 * g2 - _ronkin_batch(g1, g2)
    idx = np.unravel_index(int(np.argmin(objective)), objective.shape)
    u1, u2 = float(g1[idx]), float(g2[idx])

    def f(a: float, b: float) -> float:
        return x1 * a + x2 * b - ronkin(AmoebaPoint(a, b), tol)

    best = f(u1, u2)
    step = 2.0 * r_box / (n - 1)
    while step > 1e-4:
        for d1, d2 in _PATTERN_STEPS:
            a = min(max(u1 + step * d1, -r_box), r_box)
            b = min(max(u2 + step * d2, -r_box), r_box)
            val = f(a, b)
            if val < best - 1e-15:
                best, u1, u2 = val, a, b
                break
        else:
            step *= 0.5
    return best


def monge_ampere_density(u: AmoebaPoint, h: float = 1e-2, tol: float = 1e-10) -> float:
    """Determinant of the Hessian of -rho at u, expected 1/pi^2 inside.

    Central second differences with step h, Richardson-extrapolated with
    h/2.  In two dimensions det Hess(-rho) = det Hess(rho), so the stencil
    is applied to rho directly.
    """
    if h <= 0.0:
        raise ValueError(f"step must be positive, got {h}")
    for k in range(16):
        phi = _TAU * k / 16.0
        probe = AmoebaPoint(u.u1 + 3.0 * h * math.cos(phi), u.u2 + 3.0 * h * math.sin(phi))
        if not contains(probe):
            raise IllConditioned(
                f"({u.u1}, {u.u2}) is within 3h of the amoeba boundary; the stencil would leave it"
            )

    def det_at(step: float) -> float:
        def rho(a: float, b: float) -> float:
            return ronkin(AmoebaPoint(a, b), tol)

        center = rho(u.u1, u.u2)
        fxx = (rho(u.u1 + step, u.u2) - 2.0 * center + rho(u.u1 - step, u.u2)) / step**2
        fyy = (rho(u.u1, u.u2 + step) - 2.0 * center + rho(u.u1, u.u2 - step)) / step**2
        fxy = (
            rho(u.u1 + step, u.u2 + step)
            - rho(u.u1 + step, u.u2 - step)
            - rho(u.u1 - step, u.u2 + step)
            + rho(u.u1 - step, u.u2 - step)
        ) / (4.0 * step**2)
        return fxx * fyy - fxy * fxy

    coarse = det_at(h)
    fine = det_at(0.5 * h)
    return (4.0 * fine - coarse) / 3.0
