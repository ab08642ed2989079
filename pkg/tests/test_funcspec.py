"""Function specs: evaluation, exact coefficients, Moebius algebra, membership."""

import cmath
import math

import numpy as np
import pytest

from chordal_approx import (
    INFINITY,
    Arc,
    ClosedAnnulus,
    ClosedDisc,
    ConstantInfinity,
    DisjointUnion,
    ExtendedComplex,
    LaurentPoly,
    PartialFractions,
    PoleRational,
    PoleSampleError,
    PoleTerm,
    Polynomial,
    StarlikeCompact,
    Sum,
    ValidationError,
    classify_membership,
    dilate,
    evaluate,
    evaluate_array,
    fft_laurent_coeffs,
    fft_taylor_coeffs,
    mobius_compose,
    poles_of,
    taylor_coeffs,
    to_partial_fractions,
)

ONE_OVER_Z_MINUS_1 = PoleRational(1.0, (0, 1))


def ec(z):
    return ExtendedComplex.finite(z)


class TestSpecInvariants:
    def test_trailing_zeros_trimmed(self):
        assert Polynomial((1, 2, 0, 0)).coeffs == (1 + 0j, 2 + 0j)
        assert Polynomial((0,)).coeffs == ()

    def test_laurent_zero_coeffs_dropped(self):
        lp = LaurentPoly({-1: 1, 0: 0, 1: 1})
        assert lp.terms == ((-1, 1 + 0j), (1, 1 + 0j))

    def test_partial_fraction_multiplicity_positive(self):
        with pytest.raises(ValidationError):
            PoleTerm(1.0, 0, 1.0)

    def test_partial_fraction_duplicate_keys_merged(self):
        pf = PartialFractions((), [PoleTerm(1.0, 1, 1.0), PoleTerm(1.0, 1, 2.0)])
        assert len(pf.poles) == 1
        assert pf.poles[0].c == 3 + 0j

    def test_sum_constant_infinity_must_be_alone(self):
        with pytest.raises(ValidationError):
            Sum((ConstantInfinity(), Polynomial((1,))))
        Sum((ConstantInfinity(),))  # singleton is fine

    def test_domain_invariants(self):
        with pytest.raises(ValidationError):
            ClosedDisc(0, -1.0)
        with pytest.raises(ValidationError):
            ClosedAnnulus(0, 0.9, 0.5)
        with pytest.raises(ValidationError):
            StarlikeCompact(0, [1.0] * 4)
        with pytest.raises(ValidationError):
            Arc([1.0])
        with pytest.raises(ValidationError):
            DisjointUnion((ClosedDisc(0, 1.0), ClosedDisc(0.5, 1.0)))


class TestEvaluate:
    def test_pole_hit_is_structural(self):
        assert evaluate(ONE_OVER_Z_MINUS_1, 1.0) == INFINITY
        # near-but-not-at pole stays finite
        assert not evaluate(ONE_OVER_Z_MINUS_1, 1.0 + 1e-9).is_infinity

    def test_simple_pole_value(self):
        assert evaluate(ONE_OVER_Z_MINUS_1, 0) == ec(-1)

    def test_double_pole_partial_fraction(self):
        f = PartialFractions((), [PoleTerm(1.0, 2, 1.0)])  # 1/(z-1)^2
        assert evaluate(f, 0) == ec(1)

    def test_constant_infinity_everywhere(self):
        assert evaluate(ConstantInfinity(), 0.3 + 0.1j) == INFINITY

    def test_sum_absorbs_infinity(self):
        f = Sum((Polynomial((5,)), ONE_OVER_Z_MINUS_1))
        assert evaluate(f, 1.0) == INFINITY
        assert evaluate(f, 0) == ec(4)

    def test_laurent_pole_at_origin(self):
        f = LaurentPoly({-1: 1, 1: 1})  # z + 1/z
        assert evaluate(f, 0) == INFINITY
        assert evaluate(f, 2).value == pytest.approx(2.5)

    def test_constant_pole_rational_has_no_pole(self):
        f = PoleRational(1.0, (7.0,))
        assert evaluate(f, 1.0) == ec(7)

    def test_array_agrees_with_scalar(self):
        rng = np.random.default_rng(5)
        specs = [
            ONE_OVER_Z_MINUS_1,
            Polynomial((1, 2, 3)),
            LaurentPoly({-2: 1j, 0: 2, 3: 1}),
            PartialFractions((1, 1), [PoleTerm(1j, 1, 2.0), PoleTerm(-1, 2, 1.0)]),
            Sum((Polynomial((1,)), PoleRational(2.0, (0, 0, 1)))),
        ]
        z = rng.normal(size=64) + 1j * rng.normal(size=64)
        for f in specs:
            vals, inf = evaluate_array(f, z)
            for zz, v, m in zip(z, vals, inf):
                ref = evaluate(f, zz)
                assert m == ref.is_infinity
                if not m:
                    assert abs(v - ref.value) <= 1e-12 * max(1.0, abs(ref.value))


class TestTaylorCoeffs:
    def test_polynomial_passthrough(self):
        assert taylor_coeffs(Polynomial((1, 2)), 0, 3) == [1, 2, 0]

    def test_geometric_series(self):
        assert taylor_coeffs(ONE_OVER_Z_MINUS_1, 0, 3) == [-1, -1, -1]

    def test_differentiated_geometric_series(self):
        f = PartialFractions((), [PoleTerm(1.0, 2, 1.0)])
        assert taylor_coeffs(f, 0, 3) == [1, 2, 3]

    def test_rejects_center_on_pole(self):
        with pytest.raises(ValidationError):
            taylor_coeffs(ONE_OVER_Z_MINUS_1, 1.0, 3)

    def test_rejects_constant_infinity(self):
        with pytest.raises(ValidationError):
            taylor_coeffs(ConstantInfinity(), 0, 3)

    def test_partial_sums_converge_geometrically(self):
        f = Sum((Polynomial((0.5, 1)), PoleRational(1.5j, (0, 1))))
        coeffs = taylor_coeffs(f, 0, 40)
        rng = np.random.default_rng(7)
        z = 0.6 * (rng.normal(size=16) + 1j * rng.normal(size=16))
        z = z[np.abs(z) < 0.9]
        for zz in z:
            exact = evaluate(f, zz).value
            errs = []
            for n in (10, 20, 40):
                approx = sum(c * zz**j for j, c in enumerate(coeffs[:n]))
                errs.append(abs(exact - approx))
            assert errs[2] <= errs[1] * 1.01 + 1e-14
            assert errs[2] < 1e-6


class TestFftOracle:
    def test_constant(self):
        got = fft_taylor_coeffs(Polynomial((5,)), 0, 0.5, 4)
        assert got[0] == pytest.approx(5, abs=1e-12)
        assert max(abs(c) for c in got[1:]) < 1e-12

    def test_matches_closed_form_for_simple_pole(self):
        got = fft_taylor_coeffs(ONE_OVER_Z_MINUS_1, 0, 0.5, 8)
        want = taylor_coeffs(ONE_OVER_Z_MINUS_1, 0, 8)
        assert max(abs(g - w) for g, w in zip(got, want)) < 1e-10

    def test_circle_through_pole_raises(self):
        with pytest.raises(PoleSampleError):
            fft_taylor_coeffs(ONE_OVER_Z_MINUS_1, 0, 1.0, 4)

    def test_sample_count_validation(self):
        with pytest.raises(ValidationError):
            fft_taylor_coeffs(Polynomial((1,)), 0, 0.5, 8, samples=24)

    def test_laurent_coefficients(self):
        f = LaurentPoly({-2: 3j, -1: 1, 0: 2, 2: -1})
        got = fft_laurent_coeffs(f, 0, 0.8, 3)
        for n, want in [(-3, 0), (-2, 3j), (-1, 1), (0, 2), (1, 0), (2, -1), (3, 0)]:
            assert abs(got[n] - want) < 1e-11


class TestMobiusCompose:
    @pytest.mark.parametrize(
        "f",
        [
            Polynomial((1, 2, 1j)),
            ONE_OVER_Z_MINUS_1,
            PartialFractions((0.5,), [PoleTerm(2.0, 2, 1.0), PoleTerm(-1j, 1, 3.0)]),
            LaurentPoly({-1: 2, 1: 1}),
            Sum((Polynomial((1, 1)), PoleRational(3.0, (0, 1, 1)))),
        ],
    )
    @pytest.mark.parametrize(
        "m", [(0.75, 0, 0, 1), (2, 1j, 0, 1), (0, 1, 1, 0), (1, 2, 3, 4), (1j, 0.5, 1, -2)]
    )
    def test_evaluation_oracle(self, f, m):
        a, b, c, d = m
        g = mobius_compose(f, a, b, c, d)
        rng = np.random.default_rng(11)
        checked = 0
        for _ in range(40):
            z = 2.5 * complex(rng.normal(), rng.normal())
            if c != 0 and abs(c * z + d) < 0.2:
                continue
            w = (a * z + b) / (c * z + d)
            direct = evaluate(f, w)
            composed = evaluate(g, z)
            if direct.is_infinity or composed.is_infinity:
                continue
            scale = max(1.0, abs(direct.value))
            if abs(direct.value) > 1e6:
                continue
            assert abs(direct.value - composed.value) <= 1e-8 * scale
            checked += 1
        assert checked > 10

    def test_rejects_degenerate_map(self):
        with pytest.raises(ValidationError):
            mobius_compose(Polynomial((1,)), 1, 2, 2, 4)

    def test_dilation_shortcut(self):
        f = ONE_OVER_Z_MINUS_1
        g = dilate(f, 0.5)
        # f(0.5 z) = 1/(0.5 z - 1); pole moved to 2
        assert poles_of(g) == ((2 + 0j, 1),)
        assert evaluate(g, 1.0).value == pytest.approx(-2.0)

    def test_dilation_about_center(self):
        f = PoleRational(2.0, (0, 1))
        g = dilate(f, 0.5, center=1.0)
        # g(z) = f(1 + 0.5 (z-1)); pole where 1 + 0.5 (z-1) = 2 -> z = 3
        assert poles_of(g) == ((3 + 0j, 1),)


class TestPartialFractionsConversion:
    @pytest.mark.parametrize(
        "f",
        [
            Polynomial((1j, 0, 2)),
            PoleRational(1.5, (1, 2, 3)),
            LaurentPoly({-3: 1, -1: 2, 0: 1, 2: 1}),
            Sum((Polynomial((1,)), PoleRational(-2.0, (0, 1)), LaurentPoly({-1: 1}))),
        ],
    )
    def test_evaluation_preserved(self, f):
        pf = to_partial_fractions(f)
        rng = np.random.default_rng(13)
        for _ in range(30):
            z = 3 * complex(rng.normal(), rng.normal())
            v1 = evaluate(f, z)
            v2 = evaluate(pf, z)
            if v1.is_infinity or v2.is_infinity:
                assert v1.is_infinity == v2.is_infinity
                continue
            assert abs(v1.value - v2.value) <= 1e-9 * max(1.0, abs(v1.value))

    def test_rejects_constant_infinity(self):
        with pytest.raises(ValidationError):
            to_partial_fractions(ConstantInfinity())


class TestClassifyMembership:
    def test_boundary_pole_is_member(self):
        report = classify_membership(ONE_OVER_Z_MINUS_1, ClosedDisc(0, 1.0))
        assert report.member
        assert report.boundary_poles == (1 + 0j,)

    def test_interior_pole_is_not_member(self):
        report = classify_membership(PoleRational(0.5, (0, 1)), ClosedDisc(0, 1.0))
        assert not report.member
        assert report.offending_poles == (0.5 + 0j,)

    def test_inner_circle_pole_disqualified_for_polynomial_limits(self):
        ann = ClosedAnnulus(0, 0.5, 1.0)
        report = classify_membership(
            PoleRational(0.5, (0, 1)), ann, polynomial_limit=True
        )
        assert not report.member
        assert "inner circle" in report.reason

    def test_annulus_default_mode_allows_hole_poles(self):
        ann = ClosedAnnulus(0, 0.5, 1.0)
        assert classify_membership(PoleRational(0.2, (0, 1)), ann).member
        assert not classify_membership(PoleRational(0.75, (0, 1)), ann).member

    def test_constant_infinity_is_member(self):
        report = classify_membership(ConstantInfinity(), ClosedDisc(0, 1.0))
        assert report.member and report.constant_infinity

    def test_rejects_unsupported_domain(self):
        with pytest.raises(ValidationError):
            classify_membership(Polynomial((1,)), Arc([0, 1]))


class TestStarlikeGeometry:
    def test_square_hits_corners(self):
        sq = StarlikeCompact.square(1.0, samples=256)
        assert sq.rho(math.pi / 4) == pytest.approx(math.sqrt(2), abs=1e-12)
        assert sq.rho(0.0) == pytest.approx(1.0, abs=1e-12)
        assert sq.max_radius == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_rho_array_matches_scalar(self):
        sq = StarlikeCompact.square(1.0)
        thetas = np.linspace(0, 2 * math.pi, 37)
        arr = sq.rho_array(thetas)
        for t, r in zip(thetas, arr):
            assert r == pytest.approx(sq.rho(t), abs=1e-12)


class TestPolesOf:
    def test_sum_merges_multiplicities(self):
        f = Sum((PoleRational(1.0, (0, 1)), PartialFractions((), [PoleTerm(1.0, 3, 1.0)])))
        assert poles_of(f) == ((1 + 0j, 3),)

    def test_polynomial_has_no_poles(self):
        assert poles_of(Polynomial((1, 2))) == ()
