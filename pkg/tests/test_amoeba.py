import math
from math import exp, log, pi

import numpy as np
import pytest

from zeta_heights import amoeba, constants, quad
from zeta_heights.amoeba import AmoebaPoint, RegionTag
from zeta_heights.errors import IllConditioned

ETA = constants.eta()
THETA = constants.theta()


def ronkin_2d_oracle(u1: float, u2: float, panels: int = 48) -> float:
    """Ronkin value by brute tensor-product quadrature over both circles.

    Slow and independent of the single-integral reduction used by
    amoeba.ronkin; accuracy is limited by the log singularity along a curve
    when u is inside the amoeba.
    """
    edges = np.linspace(0.0, 1.0, panels + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    s = (centers[:, None] + (0.5 / panels) * quad.NODES[None, :]).ravel()
    w = np.tile(quad.KRONROD_WEIGHTS, panels) * (0.5 / panels)
    z1 = exp(-u1) * np.exp(2j * pi * s)
    z2 = exp(-u2) * np.exp(2j * pi * s)
    vals = np.log(np.abs(1.0 + z1[:, None] + z2[None, :]))
    return -float(w @ vals @ w)


class TestMembership:
    def test_origin_inside(self):
        assert amoeba.contains(AmoebaPoint(0.0, 0.0))

    def test_far_west_outside(self):
        assert not amoeba.contains(AmoebaPoint(-3.0, 0.0))

    def test_boundary_curve_points(self):
        # a point of the northeast contour e^{-u1} + e^{-u2} = 1 ...
        u1 = 0.1
        u2 = -math.log(-math.expm1(-u1))
        assert amoeba.contains(AmoebaPoint(u1, u2))
        assert amoeba.region(AmoebaPoint(u1, u2), 1e-9) is RegionTag.BOUNDARY
        # ... and one on the south contour e^{-u1} + 1 = e^{-u2}
        v2 = -math.log1p(math.exp(-u1))
        assert amoeba.contains(AmoebaPoint(u1, v2))
        assert amoeba.region(AmoebaPoint(u1, v2), 1e-9) is RegionTag.BOUNDARY

    def test_tentacles_inside(self):
        assert amoeba.contains(AmoebaPoint(-8.0, -8.0))
        assert amoeba.contains(AmoebaPoint(14.0, 4e-7))

    def test_regions(self):
        assert amoeba.region(AmoebaPoint(0.2, -0.5)) is RegionTag.SOUTH
        assert amoeba.region(AmoebaPoint(-0.5, 0.2)) is RegionTag.WEST
        assert amoeba.region(AmoebaPoint(0.5, 0.4)) is RegionTag.EAST
        assert amoeba.region(AmoebaPoint(5.0, -1.0)) is RegionTag.OUTSIDE

    def test_psi_vanishes_on_east(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            u = AmoebaPoint(*rng.uniform(-3, 3, size=2))
            if amoeba.region(u) is RegionTag.EAST:
                assert amoeba.psi(u) == 0.0

    def test_finite_validation(self):
        with pytest.raises(ValueError):
            AmoebaPoint(float("inf"), 0.0)


class TestSouthMoments:
    def test_closed_forms(self):
        for m in range(5):
            res = amoeba.south_moment(m, 1e-10)
            expect = (-1) ** m * math.factorial(m) * constants.zeta(m + 2)
            assert abs(res.value - expect) <= 1e-6

    def test_examples(self):
        assert abs(amoeba.south_moment(0).value - 1.6449341) <= 1e-7
        assert abs(amoeba.south_moment(1).value + 1.2020569) <= 1e-7
        assert abs(amoeba.south_moment(3).value + 6.0 * constants.zeta(5)) <= 1e-6

    def test_domain(self):
        with pytest.raises(ValueError):
            amoeba.south_moment(-1)


class TestVolume:
    def test_closed_form(self):
        assert abs(amoeba.volume() - pi**2 / 2) <= 1e-8
        assert abs(amoeba.volume() - 4.9348022) <= 1e-7

    def test_matches_three_zeta2(self):
        assert abs(amoeba.volume() - 3.0 * constants.zeta(2)) <= 1e-12

    def test_monte_carlo_oracle(self):
        # stratified sampling of the exact slice length at random abscissae
        rng = np.random.default_rng(20260810)
        n = 1_000_000
        lo, hi = -20.0, 20.0
        edges = np.linspace(lo, hi, n + 1)
        u1 = edges[:-1] + (edges[1] - edges[0]) * rng.random(n)
        r1 = np.exp(-u1)
        slice_len = np.log((1.0 + r1) / np.abs(1.0 - r1))
        mc = float(np.mean(slice_len) * (hi - lo))
        assert abs(mc - amoeba.volume()) <= 5e-4


class TestPsiAverage:
    def test_integral_of_psi(self):
        integral = 2.0 * amoeba.south_moment(1).value
        assert abs(integral - (-2.4041138)) <= 1e-6
        assert abs(integral + 2.0 * constants.zeta(3)) <= 1e-9

    def test_equals_eta(self):
        assert abs(amoeba.psi_average() - ETA) <= 1e-6


class TestRonkin:
    def test_equals_psi_off_amoeba(self):
        assert abs(amoeba.ronkin(AmoebaPoint(-3.0, 0.0)) + 3.0) <= 1e-9
        assert abs(amoeba.ronkin(AmoebaPoint(10.0, 10.0))) <= 1e-9

    def test_mahler_measure_at_origin(self):
        assert abs(amoeba.ronkin(AmoebaPoint(0.0, 0.0)) + THETA) <= 1e-6

    def test_lattice_bound_and_off_amoeba_equality(self):
        us = np.linspace(-5.0, 5.0, 101)
        for u1 in us:
            for u2 in us:
                u = AmoebaPoint(float(u1), float(u2))
                rho = amoeba.ronkin(u, 1e-9)
                bound = amoeba.psi(u)
                assert rho <= bound + 1e-8
                if not amoeba.contains(u):
                    assert abs(rho - bound) <= 1e-8

    def test_concavity(self):
        rng = np.random.default_rng(99)
        for _ in range(50):
            a = rng.uniform(-4, 4, size=2)
            b = rng.uniform(-4, 4, size=2)
            mid = 0.5 * (a + b)
            lhs = amoeba.ronkin(AmoebaPoint(*mid), 1e-9)
            rhs = 0.5 * (amoeba.ronkin(AmoebaPoint(*a), 1e-9) + amoeba.ronkin(AmoebaPoint(*b), 1e-9))
            assert lhs >= rhs - 1e-8

    def test_against_2d_product_quadrature(self):
        for u1, u2, tol in [(0.0, 0.0, 2e-3), (1.2, -0.7, 1e-6), (-3.0, 0.0, 1e-6)]:
            assert abs(amoeba.ronkin(AmoebaPoint(u1, u2)) - ronkin_2d_oracle(u1, u2)) <= tol

    def test_deep_coordinates_do_not_overflow(self):
        # the prefactor e^{-u1} alone exceeds float range here; the scaled
        # evaluation must still return Psi exactly off the amoeba
        for u1, u2 in [(-400.0, 0.0), (-700.0, 0.0), (700.0, 700.0), (-700.0, -700.0)]:
            u = AmoebaPoint(u1, u2)
            assert abs(amoeba.ronkin(u) - amoeba.psi(u)) <= 1e-8

    def test_coordinate_range_guard(self):
        with pytest.raises(ValueError):
            amoeba.ronkin(AmoebaPoint(-701.0, 0.0))


class TestLegendreDual:
    def test_boundary_vertices_and_edge(self):
        assert abs(amoeba.legendre_dual((0.0, 0.0))) <= 1e-3
        assert abs(amoeba.legendre_dual((0.5, 0.5))) <= 1e-3
        assert abs(amoeba.legendre_dual((1.0, 0.0))) <= 1e-3
        assert abs(amoeba.legendre_dual((0.0, 0.25))) <= 1e-3

    def test_center_oracle_value(self):
        # frozen from a dense grid + pattern search run; numerically equals
        # -ronkin(0,0), though only the oracle value is asserted here
        got = amoeba.legendre_dual((1.0 / 3.0, 1.0 / 3.0))
        assert abs(got - 0.3230659472194505) <= 1e-6

    def test_nonnegative_on_simplex(self):
        rng = np.random.default_rng(17)
        for _ in range(8):
            x1 = rng.uniform(0.0, 1.0)
            x2 = rng.uniform(0.0, 1.0 - x1)
            assert amoeba.legendre_dual((x1, x2)) >= -1e-8

    def test_outside_simplex_rejected(self):
        with pytest.raises(ValueError):
            amoeba.legendre_dual((0.7, 0.7))
        with pytest.raises(ValueError):
            amoeba.legendre_dual((-0.2, 0.1))


class TestMongeAmpere:
    def test_density_inside(self):
        target = 1.0 / pi**2
        for u in [AmoebaPoint(0.0, 0.0), AmoebaPoint(0.3, -0.2)]:
            got = amoeba.monge_ampere_density(u, h=1e-2)
            assert abs(got - target) <= 0.05 * target

    def test_outside_rejected(self):
        with pytest.raises(IllConditioned):
            amoeba.monge_ampere_density(AmoebaPoint(10.0, 10.0), h=1e-2)

    def test_near_boundary_rejected(self):
        # just inside the east contour but within 3h of it
        u1 = 1.0
        u2 = -math.log1p(math.exp(-u1)) + 1e-3
        assert amoeba.contains(AmoebaPoint(u1, u2))
        with pytest.raises(IllConditioned):
            amoeba.monge_ampere_density(AmoebaPoint(u1, u2), h=1e-2)

    def test_step_validated(self):
        with pytest.raises(ValueError):
            amoeba.monge_ampere_density(AmoebaPoint(0.0, 0.0), h=0.0)
