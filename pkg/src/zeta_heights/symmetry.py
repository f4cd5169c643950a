"""The order-12 symmetry group acting on residue pairs mod d.

Heights over the torsion grid are invariant under the group generated by

    alpha: (c1, c2) -> (c2, c1)
    beta:  (c1, c2) -> (-c2, c1 - c2)
    gamma: (c1, c2) -> (-c1, -c2)

subject to alpha^2 = beta^3 = gamma^2 = 1.  The twelve elements are used
to deduplicate grid computation: each orbit is computed once at its
lexicographically smallest member.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NontrivialityError

Pair = tuple[int, int]
_Matrix = tuple[tuple[int, int], tuple[int, int]]

_ALPHA: _Matrix = ((0, 1), (1, 0))
_BETA: _Matrix = ((0, -1), (1, -1))
_GAMMA: _Matrix = ((-1, 0), (0, -1))
_ID: _Matrix = ((1, 0), (0, 1))


def _matmul(a: _Matrix, b: _Matrix) -> _Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _matpow(m: _Matrix, k: int) -> _Matrix:
    out = _ID
    for _ in range(k):
        out = _matmul(m, out)
    return out


@dataclass(frozen=True)
class SymmetryElement:
    """The group element alpha^e1 * beta^e2 * gamma^e3."""

    e1: int
    e2: int
    e3: int

    def __post_init__(self) -> None:
        if self.e1 not in (0, 1) or self.e2 not in (0, 1, 2) or self.e3 not in (0, 1):
            raise ValueError(f"exponents out of range: {(self.e1, self.e2, self.e3)}")

    @property
    def matrix(self) -> _Matrix:
        return _matmul(_matpow(_ALPHA, self.e1), _matmul(_matpow(_BETA, self.e2), _matpow(_GAMMA, self.e3)))


@lru_cache(maxsize=1)
def elements() -> tuple[SymmetryElement, ...]:
    """All twelve group elements, in lexicographic (e1, e2, e3) order."""
    return tuple(
        SymmetryElement(e1, e2, e3) for e1 in (0, 1) for e2 in (0, 1, 2) for e3 in (0, 1)
    )


@lru_cache(maxsize=1)
def matrices() -> tuple[_Matrix, ...]:
    return tuple(g.matrix for g in elements())


def apply(g: SymmetryElement, c: Pair, d: int) -> Pair:
    """Apply g to the residue pair c, reduced mod d into [0, d)."""
    if d < 1:
        raise ValueError(f"modulus must be >= 1, got {d}")
    m = g.matrix
    c1, c2 = c
    return ((m[0][0] * c1 + m[0][1] * c2) % d, (m[1][0] * c1 + m[1][1] * c2) % d)


def _check_nontrivial(c: Pair, d: int) -> None:
    if (c[0] % d, c[1] % d) == (0, 0):
        raise NontrivialityError("the trivial pair (0,0) is a fixed point of the whole group")


def orbit(c: Pair, d: int) -> set[Pair]:
    """The set {g.c : g in the group}; its size divides 12."""
    _check_nontrivial(c, d)
    c1, c2 = c[0] % d, c[1] % d
    return {((m[0][0] * c1 + m[0][1] * c2) % d, (m[1][0] * c1 + m[1][1] * c2) % d) for m in matrices()}


def canonical_representative(c: Pair, d: int) -> Pair:
    """Lexicographically smallest member of the orbit of c; idempotent."""
    _check_nontrivial(c, d)
    return min(orbit(c, d))
