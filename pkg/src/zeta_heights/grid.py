"""Height grids over all nontrivial d-torsion points, with symmetry sharing.

The height is invariant under the order-12 residue symmetry group, so the
grid is computed once per canonical orbit representative and broadcast to
the orbit.  Values obtained this way are bit-identical to a cell-by-cell
recomputation because the per-term evaluation in ``torsion`` only depends
on orbit invariants.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import constants, symmetry
from .torsion import LOG2, TorsionPoint, total_height

THREADS_ENV_VAR = "ZETA_HEIGHTS_THREADS"
HISTOGRAM_BINS = 256

# |h| below this counts as an exact height zero; the computed minima are
# cancellation residues of order 1e-16.
ZERO_TOL = 1e-12


@dataclass(frozen=True)
class HeightGrid:
    """d x d array of heights with NaN sentinel at the trivial cell (0,0).

    ``rep_codes[c1, c2]`` holds r1*d + r2 for the canonical representative
    (r1, r2) of the cell's symmetry orbit.
    """

    d: int
    values: np.ndarray
    rep_codes: np.ndarray

    def height(self, c1: int, c2: int) -> float:
        if (c1 % self.d, c2 % self.d) == (0, 0):
            raise ValueError("the sentinel cell (0,0) carries no height")
        return float(self.values[c1 % self.d, c2 % self.d])

    def representative(self, c1: int, c2: int) -> tuple[int, int]:
        code = int(self.rep_codes[c1 % self.d, c2 % self.d])
        return divmod(code, self.d)

    def nontrivial_values(self) -> np.ndarray:
        """The d*d - 1 heights in row-major cell order, sentinel skipped by index."""
        return self.values.ravel()[1:]


@dataclass(frozen=True)
class DistStats:
    d: int
    eps: float
    mean: float
    min: float
    max: float
    count_near_eta: int
    count_near_theta: int
    count_zero: int
    histogram: tuple[int, ...]


def _resolve_threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get(THREADS_ENV_VAR)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _rep_codes(d: int) -> np.ndarray:
    """Canonical representative code (r1*d + r2) for every cell, vectorized."""
    c1g, c2g = np.meshgrid(np.arange(d, dtype=np.int64), np.arange(d, dtype=np.int64), indexing="ij")
    best = None
    for m in symmetry.matrices():
        i1 = (m[0][0] * c1g + m[0][1] * c2g) % d
        i2 = (m[1][0] * c1g + m[1][1] * c2g) % d
        code = i1 * d + i2
        best = code if best is None else np.minimum(best, code)
    return best


def _heights_for(d: int, codes: list[int]) -> list[tuple[int, float]]:
    out = []
    for code in codes:
        r1, r2 = divmod(code, d)
        out.append((code, total_height(TorsionPoint(d, r1, r2)).total))
    return out


def compute_grid(d: int, threads: int | None = None) -> HeightGrid:
    """Heights of all nontrivial d-torsion points.

    One height evaluation per symmetry orbit, broadcast to the orbit's
    cells.  Results are independent of the worker count; ``threads=None``
    falls back to the ZETA_HEIGHTS_THREADS environment variable, then 1.
    """
    if d < 2:
        raise ValueError(f"grid needs d >= 2, got {d}")
    nworkers = _resolve_threads(threads)
    codes = _rep_codes(d)
    reps = np.unique(codes.ravel())
    reps = reps[reps != 0].tolist()

    value_by_code = np.full(d * d, np.nan)
    if nworkers == 1 or len(reps) < 64:
        results = _heights_for(d, reps)
    else:
        chunks = [reps[i::nworkers] for i in range(nworkers)]
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            futures = [pool.submit(_heights_for, d, chunk) for chunk in chunks]
            results = [pair for fut in futures for pair in fut.result()]
    for code, value in results:
        value_by_code[code] = value

    values = value_by_code[codes]
    values.flags.writeable = False
    codes.flags.writeable = False
    return HeightGrid(d=d, values=values, rep_codes=codes)


def stats(grid: HeightGrid, eps: float) -> DistStats:
    """Distribution summary; comparisons against eta/theta are strict."""
    vals = grid.nontrivial_values()
    eta = constants.eta()
    theta = constants.theta()
    mean = math.fsum(vals.tolist()) / vals.size
    bins = np.clip((vals * (HISTOGRAM_BINS / LOG2)).astype(np.int64), 0, HISTOGRAM_BINS - 1)
    hist = np.bincount(bins, minlength=HISTOGRAM_BINS)
    return DistStats(
        d=grid.d,
        eps=eps,
        mean=mean,
        min=float(vals.min()),
        max=float(vals.max()),
        count_near_eta=int(np.count_nonzero(np.abs(vals - eta) < eps)),
        count_near_theta=int(np.count_nonzero(np.abs(vals - theta) < eps)),
        count_zero=int(np.count_nonzero(np.abs(vals) <= ZERO_TOL)),
        histogram=tuple(int(n) for n in hist),
    )


def mean_below_eta_scan(d_range: list[int], threads: int | None = None) -> list[tuple[int, float, bool]]:
    """Rows (d, mean height, mean < eta?) over the given moduli."""
    eta = constants.eta()
    out = []
    for d in d_range:
        grid = compute_grid(d, threads)
        vals = grid.nontrivial_values()
        mean = math.fsum(vals.tolist()) / vals.size
        out.append((d, mean, mean < eta))
    return out


def small_height_census(d: int, eps: float, threads: int | None = None) -> list[TorsionPoint]:
    """Nontrivial d-torsion points with 0 < height < theta - eps.

    Probes whether any heights fall strictly between the exact zeros and
    the first conjectured accumulation value theta.
    """
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    grid = compute_grid(d, threads)
    cutoff = constants.theta() - eps
    out = []
    for c1 in range(d):
        for c2 in range(d):
            if (c1, c2) == (0, 0):
                continue
            h = float(grid.values[c1, c2])
            if ZERO_TOL < h < cutoff:
                out.append(TorsionPoint(d, c1, c2))
    return out
