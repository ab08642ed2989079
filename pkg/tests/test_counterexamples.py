"""Numeric counterexamples with their closed-form expected values."""

import math

import numpy as np
import pytest

from chordal_approx import (
    ClosedDisc,
    PartialFractions,
    PoleRational,
    PoleTerm,
    ValidationError,
    area_mean_iterated,
    boundary_pole_function,
    classify_membership,
    evaluate,
    inner_circle_mean,
    mean_value_pv,
    re_identity_max_deviation,
    sup_bound_counterexample,
)


class TestSupBound:
    def test_paper_scale_values(self):
        got = sup_bound_counterexample(100, 0.5)
        assert got.global_sup == pytest.approx(1.0, abs=1e-12)
        assert got.annulus_sup == pytest.approx(1 / math.sqrt(2501), abs=1e-12)

    def test_small_n(self):
        got = sup_bound_counterexample(1, 0.5)
        assert got.annulus_sup == pytest.approx(1 / math.sqrt(1.25), abs=1e-12)

    def test_annulus_near_full_boundary(self):
        n, r = 3, 0.99
        got = sup_bound_counterexample(n, r)
        assert got.annulus_sup == pytest.approx(
            1 / math.sqrt(1 + n * n * r * r), abs=1e-12
        )

    def test_no_uniform_constant_exists(self):
        # the ratio global/annulus grows without bound in n
        ratios = [
            sup_bound_counterexample(n, 0.5).global_sup
            / sup_bound_counterexample(n, 0.5).annulus_sup
            for n in (1, 10, 100)
        ]
        assert ratios[0] < ratios[1] < ratios[2]

    def test_input_validation(self):
        with pytest.raises(ValidationError):
            sup_bound_counterexample(0, 0.5)
        with pytest.raises(ValidationError):
            sup_bound_counterexample(5, 1.0)


class TestMeanValuePV:
    def test_limit_is_minus_half(self):
        got = mean_value_pv(4096)
        assert got.principal_value == pytest.approx(-0.5, abs=1e-6)

    def test_imaginary_part_cancels(self):
        got = mean_value_pv(2048)
        assert got.imaginary_magnitude < 1e-8

    def test_contrast_with_center_value(self):
        f = PoleRational(1.0, (0, 1))
        center = evaluate(f, 0)
        assert center.value == -1
        assert abs(mean_value_pv().principal_value - center.value.real) > 0.49

    def test_re_identity(self):
        assert re_identity_max_deviation(10_000, seed=3) < 1e-12

    def test_rejects_coarse_quadrature(self):
        with pytest.raises(ValidationError):
            mean_value_pv(512)


class TestAreaMean:
    def test_recovers_center_value(self):
        assert area_mean_iterated(256) == pytest.approx(1.0, abs=1e-4)

    def test_inner_integral_midway(self):
        got = inner_circle_mean(0.5)
        assert abs(got - 2 * math.pi) < 1e-10

    def test_inner_integral_near_pole(self):
        got = inner_circle_mean(0.99)
        assert abs(got - 2 * math.pi) < 1e-6

    def test_rejects_coarse_radial_grid(self):
        with pytest.raises(ValidationError):
            area_mean_iterated(100)


class TestBoundaryPoleFunction:
    def test_single_pole_at_one(self):
        f = boundary_pole_function([1.0])
        assert f == PartialFractions((), [PoleTerm(1.0, 1, 1.0)])
        assert evaluate(f, 0).value == -1

    def test_two_poles_value_at_i(self):
        f = boundary_pole_function([1.0, -1.0])
        got = evaluate(f, 1j)
        assert abs(got.value - (-1j)) < 1e-14

    def test_infinity_exactly_on_the_set(self):
        f = boundary_pole_function([1.0, 1j], [1, 2])
        assert evaluate(f, 1.0).is_infinity
        assert evaluate(f, 1j).is_infinity
        assert not evaluate(f, -1.0).is_infinity

    def test_membership_on_closed_disc(self):
        f = boundary_pole_function([1.0, -1.0, 1j])
        report = classify_membership(f, ClosedDisc(0, 1.0))
        assert report.member
        assert set(report.boundary_poles) == {1 + 0j, -1 + 0j, 1j}

    def test_pole_sharpness(self):
        f = boundary_pole_function([1.0, -1.0])
        rng = np.random.default_rng(17)
        for zeta in (1.0, -1.0):
            for _ in range(20):
                z = zeta + 8e-4 * np.exp(1j * rng.uniform(0, 2 * math.pi))
                got = evaluate(f, complex(z))
                assert got.is_infinity or abs(got.value) > 1e3

    def test_rejects_non_unimodular(self):
        with pytest.raises(ValidationError):
            boundary_pole_function([0.5])

    def test_rejects_duplicates_and_bad_multiplicities(self):
        with pytest.raises(ValidationError):
            boundary_pole_function([1.0, 1.0])
        with pytest.raises(ValidationError):
            boundary_pole_function([1.0], [0])
        with pytest.raises(ValidationError):
            boundary_pole_function([1.0], [1, 2])
        with pytest.raises(ValidationError):
            boundary_pole_function([])
