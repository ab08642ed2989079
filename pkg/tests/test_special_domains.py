"""Starlike compacts, arcs and disjoint unions."""

import cmath
import math

import numpy as np
import pytest

from chordal_approx import (
    INFINITY,
    ApproxResult,
    Arc,
    ClosedDisc,
    ConstantInfinity,
    ExtendedComplex,
    GridSpec,
    MembershipError,
    PoleRational,
    Polynomial,
    StarlikeCompact,
    SupEstimate,
    ValidationError,
    approximate_on_arc,
    approximate_on_disc,
    approximate_on_disjoint_union,
    approximate_on_starlike,
    approximate_poly,
    evaluate,
    sup_chordal,
)
from chordal_approx.special_domains import ridge_polyfit

F_BOUNDARY_POLE = PoleRational(1.0, (0, 1))


def starlike_unit_disc(samples=64):
    return StarlikeCompact(0j, [1.0] * samples)


class TestRidgePolyfit:
    def test_recovers_exact_polynomial(self):
        rng = np.random.default_rng(3)
        z = rng.normal(size=50) + 1j * rng.normal(size=50)
        want = (1.0, -2.0 + 1j, 0.5)
        vals = want[0] + want[1] * z + want[2] * z * z
        got = ridge_polyfit(z, vals, 2)
        assert max(abs(a - b) for a, b in zip(got, want)) < 1e-8


class TestStarlike:
    def test_specializes_to_unit_disc_construction(self):
        eps = 0.2
        disc_like = starlike_unit_disc()
        res_star = approximate_on_starlike(disc_like, F_BOUNDARY_POLE, eps)
        res_poly = approximate_poly(F_BOUNDARY_POLE, eps)
        assert res_star.achieved_error.value < eps
        assert res_poly.achieved_error.value < eps

    def test_square_with_outside_pole(self):
        square = StarlikeCompact.square(1.0)
        f = PoleRational(2.0, (0, 1))
        res = approximate_on_starlike(square, f, 0.1)
        assert res.achieved_error.value < 0.1
        assert "geometric expansion" in res.notes

    def test_constant_infinity(self):
        square = StarlikeCompact.square(1.0)
        res = approximate_on_starlike(square, ConstantInfinity(), 0.5)
        assert res.approximant == Polynomial((3,))
        assert res.achieved_error.value == pytest.approx(1 / math.sqrt(10), abs=1e-12)

    def test_interior_pole_rejected(self):
        square = StarlikeCompact.square(1.0)
        with pytest.raises(MembershipError):
            approximate_on_starlike(square, PoleRational(0.2 + 0.1j, (0, 1)), 0.2)

    def test_geometric_tail_bound_soundness(self):
        from chordal_approx.disc import max_abs_on_circle
        from chordal_approx.funcspec import dilate, poles_of
        from chordal_approx.supmetric import domain_grid_points

        square = StarlikeCompact.square(1.0)
        f = PoleRational(2.0, (0, 1))
        eps = 0.1
        res = approximate_on_starlike(square, f, eps)
        fr = dilate(f, res.dilation_r, square.center)
        grid_pts = domain_grid_points(square, GridSpec())
        centroid = complex(grid_pts.mean())
        r_l = math.sqrt(2)
        d_min = min(abs(p - centroid) for p, _ in poles_of(fr))
        rho = 0.5 * (r_l + d_min)
        q = r_l / rho
        m = max_abs_on_circle(fr, centroid, rho)
        assert m * q ** (res.degree_N + 1) / (1 - q) < eps / 2


class TestArc:
    def test_constant_infinity_samples(self):
        arc = Arc(np.linspace(-1, 1, 65))
        res = approximate_on_arc(arc, [INFINITY] * 65, 0.5)
        assert res.approximant == Polynomial((3,))

    def test_exponential_low_degree(self):
        pts = np.linspace(-1, 1, 129)
        arc = Arc(pts)
        vals = [cmath.exp(z) for z in pts]
        res = approximate_on_arc(arc, vals, 1e-6, symbolic=lambda z: cmath.exp(z))
        assert res.degree_N <= 16
        assert res.achieved_error.value < 1e-6

    def test_reciprocal_through_infinity(self):
        pts = np.linspace(-1, 1, 257)
        arc = Arc(pts)
        inv = PoleRational(0.0, (0, 1))  # 1/z
        vals = [evaluate(inv, z) for z in pts]
        res = approximate_on_arc(arc, vals, 0.3, symbolic=inv)
        assert res.achieved_error.value < 0.3

    def test_rejects_value_count_mismatch(self):
        arc = Arc(np.linspace(-1, 1, 17))
        with pytest.raises(ValidationError):
            approximate_on_arc(arc, [0.0] * 5, 0.3)

    def test_rejects_implausible_jumps(self):
        arc = Arc(np.linspace(-1, 1, 33))
        vals = [0.0] * 33
        vals[16] = 100.0
        with pytest.raises(ValidationError):
            approximate_on_arc(arc, vals, 0.3)


def make_constant_part(disc, value, eps):
    poly = Polynomial((value,)) if value else Polynomial(())
    est = sup_chordal(poly, poly, disc)
    res = ApproxResult(poly, eps, est, None, 0, "exact constant")
    return (disc, res)


class TestDisjointUnion:
    def test_single_part_passthrough(self):
        part = make_constant_part(ClosedDisc(0, 0.5), 1.0, 0.05)
        res = approximate_on_disjoint_union([part], 0.1)
        assert res is part[1]

    def test_two_discs_with_constant_targets(self):
        d1 = ClosedDisc(-2.0, 0.5)
        d2 = ClosedDisc(2.0, 0.5)
        parts = [make_constant_part(d1, 0.0, 0.1), make_constant_part(d2, 1.0, 0.1)]
        res = approximate_on_disjoint_union(parts, 0.2)
        assert res.achieved_error.value < 0.2
        # the single polynomial hugs each constant on its disc
        for disc, value in ((d1, 0.0), (d2, 1.0)):
            for t in np.linspace(0, 2 * math.pi, 32):
                z = disc.center + 0.45 * disc.radius * cmath.exp(1j * t)
                got = evaluate(res.approximant, z).value
                assert abs(got - value) < 0.1

    def test_overlapping_parts_rejected(self):
        d1 = ClosedDisc(0.0, 1.0)
        d2 = ClosedDisc(0.5, 1.0)
        parts = [make_constant_part(d1, 0.0, 0.1), make_constant_part(d2, 1.0, 0.1)]
        with pytest.raises(ValidationError):
            approximate_on_disjoint_union(parts, 0.2)

    def test_parts_must_be_preverified_to_half_eps(self):
        d1 = ClosedDisc(-2.0, 0.5)
        d2 = ClosedDisc(2.0, 0.5)
        sloppy = ApproxResult(
            Polynomial((1.0,)),
            0.5,
            SupEstimate(0.3, 2.0 + 0j, GridSpec(), True),
            None,
            0,
            "not good enough for eps = 0.2",
        )
        parts = [make_constant_part(d1, 0.0, 0.1), (d2, sloppy)]
        with pytest.raises(ValidationError):
            approximate_on_disjoint_union(parts, 0.2)

    def test_mixed_with_real_approximant(self):
        d1 = ClosedDisc(-2.0, 0.5)
        d2 = ClosedDisc(2.0, 0.4)
        f2 = PoleRational(3.0, (0, 1))  # analytic on d2, pole off the disc
        r2 = approximate_on_disc(f2, d2, 0.05)
        parts = [make_constant_part(d1, 0.5, 0.1), (d2, r2)]
        res = approximate_on_disjoint_union(parts, 0.22)
        assert res.achieved_error.value < 0.22
