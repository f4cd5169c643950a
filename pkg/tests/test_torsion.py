import cmath
import math
import random
from math import fsum, gcd, log, pi

import pytest

from zeta_heights import arith, torsion
from zeta_heights.errors import NontrivialityError
from zeta_heights.torsion import Extremality, TorsionPoint


def oracle_total(d: int, c1: int, c2: int) -> float:
    """Height via the full-level orbit sum: raw complex powers over units mod d.

    This keeps the sum at level d (not the reduced order) and uses plain
    complex arithmetic throughout, so it shares nothing with the production
    evaluation path except the final formula.
    """
    w1 = cmath.exp(2j * pi * c1 / d)
    w2 = cmath.exp(2j * pi * c2 / d)
    terms = []
    for k in arith.modular_units(d):
        a, b = w1**k, w2**k
        terms.append(log(max(abs(b - a), abs(b - 1), abs(a - 1))))
    arch = fsum(terms) / len(terms)
    e = d // gcd(gcd(c1, c2), d)
    lam = arith.von_mangoldt(e)
    return arch + (0.0 if lam.is_zero else -lam.value / arith.euler_phi(e))


class TestTorsionPoint:
    def test_residues_normalized(self):
        pt = TorsionPoint(5, 7, -1)
        assert (pt.c1, pt.c2) == (2, 4)

    def test_bad_modulus(self):
        with pytest.raises(ValueError):
            TorsionPoint(0, 1, 1)


class TestOrder:
    @pytest.mark.parametrize("d,c,expected", [(12, (4, 6), 6), (5, (1, 2), 5), (8, (4, 4), 2)])
    def test_examples(self, d, c, expected):
        assert torsion.order(TorsionPoint(d, *c)) == expected


class TestIntersectionPoint:
    def test_order_two(self):
        pt = torsion.intersection_point(TorsionPoint(2, 1, 1))
        x = pt.normalized()
        # proportional to (0, 1, -1)
        assert abs(x[0]) <= 1e-15
        assert abs(x[1] / x[2] + 1.0) <= 1e-12

    def test_direct_complex_oracle(self):
        # omega = (i, -1): coordinates (w2^-1 - w1^-1, 1 - w2^-1, w1^-1 - 1)
        pt = torsion.intersection_point(TorsionPoint(4, 1, 2))
        expect = (complex(-1, 1), complex(2, 0), complex(-1, -1))
        for got, want in zip(pt.coords, expect):
            assert abs(got - want) <= 1e-12

    def test_order_three_equal_moduli(self):
        pt = torsion.intersection_point(TorsionPoint(3, 1, 2))
        mods = [abs(z) for z in pt.coords]
        assert max(mods) - min(mods) <= 1e-12

    def test_coordinates_sum_to_zero(self):
        for d in range(2, 30):
            for c in ((1, 0), (1, d // 2), (d - 1, 1)):
                pt = torsion.intersection_point(TorsionPoint(d, *c))
                assert abs(sum(pt.normalized())) <= 1e-12

    def test_trivial_rejected(self):
        with pytest.raises(NontrivialityError):
            torsion.intersection_point(TorsionPoint(6, 0, 0))


class TestArchimedeanHeight:
    def test_two_term_orbit(self):
        # omega = (i, -1): both k=1 and k=3 summands equal log 2
        assert abs(torsion.archimedean_height(TorsionPoint(4, 1, 2)) - log(2)) <= 1e-14

    def test_order_two_point(self):
        # omega = (-1, 1): single summand log max(2, 0, 2); the total height
        # is 0 only because the non-Archimedean part contributes -log 2.
        assert abs(torsion.archimedean_height(TorsionPoint(2, 1, 0)) - log(2)) <= 1e-14

    def test_cancels_nonarchimedean_at_order_three(self):
        pt = TorsionPoint(3, 1, 2)
        arch = torsion.archimedean_height(pt)
        assert abs(arch + torsion.nonarchimedean_height(pt)) <= 1e-14
        assert abs(arch - log(3) / 2) <= 1e-14


class TestNonArchimedeanHeight:
    def test_prime_power_orders(self):
        assert torsion.nonarchimedean_height(TorsionPoint(4, 1, 2)) == -log(2) / 2
        assert torsion.nonarchimedean_height(TorsionPoint(5, 1, 0)) == -log(5) / 4

    def test_composite_order_vanishes(self):
        assert torsion.nonarchimedean_height(TorsionPoint(6, 1, 1)) == 0.0

    def test_depends_only_on_order(self):
        points = [TorsionPoint(8, 1, 3), TorsionPoint(8, 3, 5), TorsionPoint(16, 2, 6)]
        values = {torsion.nonarchimedean_height(p) for p in points}
        assert len(values) == 1  # all have order 8


class TestTotalHeight:
    def test_known_values(self):
        assert abs(torsion.total_height(TorsionPoint(4, 1, 2)).total - 0.5 * log(2)) <= 1e-10
        expect5 = 0.25 * log((3 + math.sqrt(5)) / 2)
        assert abs(torsion.total_height(TorsionPoint(5, 1, 2)).total - expect5) <= 1e-10
        assert abs(torsion.total_height(TorsionPoint(3, 1, 2)).total) <= 1e-10

    def test_breakdown_sums(self):
        for d, c in [(7, (2, 3)), (12, (5, 8)), (30, (7, 11))]:
            parts = torsion.total_height(TorsionPoint(d, *c))
            assert parts.total == parts.archimedean + parts.nonarchimedean
            assert parts.orbit_size == arith.euler_phi(torsion.order(TorsionPoint(d, *c)))

    def test_matches_full_level_oracle(self):
        for d in range(2, 21):
            for c1 in range(d):
                for c2 in range(d):
                    if (c1, c2) == (0, 0):
                        continue
                    got = torsion.total_height(TorsionPoint(d, c1, c2)).total
                    assert abs(got - oracle_total(d, c1, c2)) <= 1e-12

    def test_range(self):
        for d in range(2, 61):
            for c1 in range(d):
                for c2 in range(d):
                    if (c1, c2) == (0, 0):
                        continue
                    h = torsion.total_height(TorsionPoint(d, c1, c2)).total
                    assert -1e-12 <= h <= log(2) + 1e-12

    def test_galois_invariance(self):
        rng = random.Random(3)
        for _ in range(60):
            d = rng.randrange(2, 61)
            c1, c2 = rng.randrange(d), rng.randrange(d)
            if (c1, c2) == (0, 0):
                continue
            base = torsion.total_height(TorsionPoint(d, c1, c2)).total
            for k in arith.modular_units(d):
                moved = torsion.total_height(TorsionPoint(d, k * c1 % d, k * c2 % d)).total
                assert abs(moved - base) <= 1e-12

    def test_trivial_rejected(self):
        with pytest.raises(NontrivialityError):
            torsion.total_height(TorsionPoint(9, 0, 0))


class TestClassifyExtremal:
    def test_examples(self):
        assert torsion.classify_extremal(TorsionPoint(7, 0, 3)) is Extremality.MIN
        assert torsion.classify_extremal(TorsionPoint(6, 3, 1)) is Extremality.MAX
        assert torsion.classify_extremal(TorsionPoint(8, 4, 1)) is Extremality.INTERIOR

    def test_consistent_with_heights(self):
        for d in range(2, 49):
            for c1 in range(d):
                for c2 in range(d):
                    if (c1, c2) == (0, 0):
                        continue
                    h = torsion.total_height(TorsionPoint(d, c1, c2)).total
                    cls = torsion.classify_extremal(TorsionPoint(d, c1, c2))
                    assert (cls is Extremality.MIN) == (abs(h) <= 1e-10)
                    assert (cls is Extremality.MAX) == (abs(h - log(2)) <= 1e-10)


class TestNonArchimedeanViaPadicDistances:
    def test_matches_sum_of_padic_distance_logs(self):
        # the finite-place total equals the sum over primes p of
        # log |zeta_e - 1|_p, nonzero only when e is a power of p
        def primes_to(n):
            return [p for p in range(2, n + 1) if all(p % q for q in range(2, p))]

        for d in range(2, 61):
            pt = TorsionPoint(d, 1, 3)
            e = torsion.order(pt)
            from_distances = fsum(
                log(float(arith.padic_distance_to_one(p, e))) for p in primes_to(e)
            )
            assert abs(torsion.nonarchimedean_height(pt) - from_distances) <= 1e-15
