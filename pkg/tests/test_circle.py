"""Circle pipeline: clipping, trig approximation, end-to-end runs."""

import cmath
import math

import numpy as np
import pytest

from chordal_approx import (
    INFINITY,
    AllSamplesExceedError,
    CircleSamples,
    ConstantInfinity,
    ExtendedComplex,
    LaurentPoly,
    PoleRational,
    ValidationError,
    approximate_on_circle,
    chordal_clip,
    chordal_dist,
    evaluate_array,
    exterior_threshold,
    sample_circle,
    trig_approx,
)
from chordal_approx.sphere import chi_array

F_BOUNDARY_POLE = PoleRational(1.0, (0, 1))


class TestCircleSamples:
    def test_requires_power_of_two_count(self):
        with pytest.raises(ValidationError):
            CircleSamples([ExtendedComplex.finite(0)] * 100)
        with pytest.raises(ValidationError):
            CircleSamples([ExtendedComplex.finite(0)] * 32)

    def test_continuity_plausibility_check(self):
        vals = [ExtendedComplex.finite(0)] * 64
        vals[10] = ExtendedComplex.finite(50.0)  # wild jump
        with pytest.raises(ValidationError):
            CircleSamples(vals)

    def test_sampling_marks_structural_poles(self):
        s = sample_circle(F_BOUNDARY_POLE, 64)
        assert s[0] == INFINITY
        assert not s[1].is_infinity

    def test_accepts_callable(self):
        s = sample_circle(lambda z: z * z, 64)
        assert abs(s[1].value - cmath.exp(2j * 2 * math.pi / 64)) < 1e-12


class TestChordalClip:
    def test_in_range_samples_unchanged(self):
        s = sample_circle(lambda z: 0.3 * z + 0.1, 128)
        assert chordal_clip(s, 5.0) is s

    def test_all_infinite_signals_fast_path(self):
        s = sample_circle(ConstantInfinity(), 64)
        with pytest.raises(AllSamplesExceedError):
            chordal_clip(s, 10.0)

    def test_clip_of_boundary_pole_samples(self):
        eps = 0.2
        m = exterior_threshold(eps / 2)
        s = sample_circle(F_BOUNDARY_POLE, 1024)
        g = chordal_clip(s, m)
        # all finite, moduli <= M (+ rounding)
        assert not g.infinity_mask.any()
        assert np.abs(g.array).max() <= m + 1e-12
        # chordal deviation below the exterior-set diameter bound
        chis = chi_array(s.array, s.infinity_mask, g.array, g.infinity_mask)
        assert chis.max() <= 2 / math.sqrt(1 + m * m) + 1e-12
        assert chis.max() < eps / 2

    def test_replaced_runs_sit_on_threshold_circle(self):
        m = exterior_threshold(0.1)
        s = sample_circle(F_BOUNDARY_POLE, 1024)
        g = chordal_clip(s, m)
        moved = np.abs(g.array - s.array) > 1e-9
        moved &= ~s.infinity_mask
        moved |= s.infinity_mask
        assert np.allclose(np.abs(g.array[moved]), m)

    def test_adjacent_increments_stay_plausible(self):
        m = exterior_threshold(0.25)
        s = sample_circle(F_BOUNDARY_POLE, 1024)
        g = chordal_clip(s, m)
        adjacent = chi_array(
            g.array, g.infinity_mask, np.roll(g.array, -1), np.roll(g.infinity_mask, -1)
        )
        assert adjacent.max() <= 0.6

    def test_rejects_threshold_below_one(self):
        s = sample_circle(lambda z: z, 64)
        with pytest.raises(ValidationError):
            chordal_clip(s, 0.5)


class TestTrigApprox:
    def test_exact_trig_polynomial_recovered_at_low_degree(self):
        s = sample_circle(LaurentPoly({-1: 1, 1: 1}), 256)  # z + 1/z
        q = trig_approx(s, 0.2)
        assert q.max_index == 1
        pts = s.points
        qv, _ = evaluate_array(q, pts)
        assert np.abs(qv - s.array).max() < 1e-10

    def test_constant_samples(self):
        c = 2.5 - 1j
        s = sample_circle(lambda z: c, 64)
        q = trig_approx(s, 0.1)
        assert set(dict(q.terms)) == {0}
        assert abs(q.coeff(0) - c) < 1e-12

    def test_sawtooth_error_decreases_with_degree(self):
        k = 1024
        theta = 2 * math.pi * np.arange(k) / k
        g = np.abs(theta - math.pi).astype(complex)
        s = CircleSamples([complex(v) for v in g])
        fhat = np.fft.fft(s.array) / k

        def fejer_err(n):
            from chordal_approx.circle import _coefficient_window

            vals = np.fft.ifft(_coefficient_window(fhat, n, True)) * k
            return np.abs(vals - s.array).max()

        errs = [fejer_err(n) for n in (8, 16, 32, 64, 128)]
        assert all(a >= b for a, b in zip(errs, errs[1:]))

    def test_rejects_infinite_samples(self):
        s = sample_circle(F_BOUNDARY_POLE, 1024)
        with pytest.raises(ValidationError):
            trig_approx(s, 0.1)


class TestApproximateOnCircle:
    def test_constant_infinity_fast_path(self):
        s = sample_circle(ConstantInfinity(), 1024)
        res = approximate_on_circle(s, 0.1, symbolic=ConstantInfinity())
        assert res.approximant == LaurentPoly({1: 11})
        want = 1 / math.sqrt(1 + 121)
        assert res.achieved_error.value == pytest.approx(want, abs=1e-12)
        assert res.achieved_error.value == pytest.approx(0.0905, abs=1e-4)

    def test_finite_continuous_target_skips_clipping(self):
        f = lambda z: z + 0.3  # noqa: E731
        s = sample_circle(f, 1024)
        res = approximate_on_circle(s, 0.05, symbolic=f)
        assert res.achieved_error.value < 0.05
        assert chordal_clip(s, exterior_threshold(0.025)) is s

    def test_boundary_pole_end_to_end(self):
        s = sample_circle(F_BOUNDARY_POLE, 1024)
        res = approximate_on_circle(s, 0.2, symbolic=F_BOUNDARY_POLE)
        assert isinstance(res.approximant, LaurentPoly)
        assert res.achieved_error.value < 0.2
        # the verification resampling is 4x finer than the input
        assert res.achieved_error.grid_used.angular_count == 4096

    def test_sample_only_verification_when_no_symbolic_target(self):
        s = sample_circle(F_BOUNDARY_POLE, 1024)
        res = approximate_on_circle(s, 0.2)
        assert res.achieved_error.value < 0.2

    def test_rejects_bad_eps(self):
        s = sample_circle(lambda z: z, 64)
        with pytest.raises(ValidationError):
            approximate_on_circle(s, 1.0)


def test_chordal_dist_consistency_between_members():
    # spot check: the measured circle error of the fast path matches the
    # scalar metric at one point
    n = 11
    assert chordal_dist(n * cmath.exp(0.7j), INFINITY) == pytest.approx(
        1 / math.sqrt(1 + n * n), abs=1e-12
    )
