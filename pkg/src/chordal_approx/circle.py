"""Chordal approximation on the unit circle by trigonometric polynomials.

Pipeline for a continuous sphere-valued target sampled on the circle: clip
the values at a modulus threshold M chosen so the exterior region (including
infinity) has small chordal diameter, bridging each over-threshold run by an
arc of the circle |w| = M; then approximate the now-finite samples by a
trigonometric polynomial, Fejer means first with a truncated-Fourier
de-biasing fallback.  Errors combine by the metric triangle inequality.
"""

import math
from dataclasses import dataclass

import numpy as np

from .disc import DEGREE_CAP, ApproxResult, infinity_level
from .errors import (
    AllSamplesExceedError,
    DegreeCapError,
    ValidationError,
)
from .funcspec import Circle, LaurentPoly, evaluate_array
from .sphere import INFINITY, ExtendedComplex, chi_array, exterior_threshold
from .supmetric import GridSpec, SupEstimate, sup_chordal, verification_grid

__all__ = [
    "CircleSamples",
    "sample_circle",
    "chordal_clip",
    "trig_approx",
    "approximate_on_circle",
]

UNIT_CIRCLE = Circle(0j, 1.0)

# Plausibility bound on adjacent-sample chordal increments for data that is
# supposed to come from a continuous function.
_ADJACENT_CHI_BOUND = 0.5


class CircleSamples:
    """Sphere-valued samples at equispaced angles 2*pi*k/K on the unit circle.

    K must be a power of two, at least 64.  Construction checks that
    adjacent samples stay chordally within 0.5 of each other - a
    plausibility filter for "came from a continuous function", not a proof.
    Clipped outputs may legitimately exceed that bound slightly, so internal
    constructors can disable the check.
    """

    def __init__(self, values, check: bool = True):
        vals = []
        for v in values:
            if isinstance(v, ExtendedComplex):
                vals.append(v)
            elif v is None:
                vals.append(INFINITY)
            else:
                vals.append(ExtendedComplex.finite(v))
        k = len(vals)
        if k < 64 or k & (k - 1):
            raise ValidationError(
                f"sample count must be a power of two >= 64, got {k}"
            )
        self._values = tuple(vals)
        self._array = np.array(
            [0j if v.is_infinity else v.value for v in vals], complex
        )
        self._inf = np.array([v.is_infinity for v in vals], bool)
        if check:
            chis = chi_array(
                self._array,
                self._inf,
                np.roll(self._array, -1),
                np.roll(self._inf, -1),
            )
            if chis.max() > _ADJACENT_CHI_BOUND:
                raise ValidationError(
                    "adjacent samples differ chordally by "
                    f"{chis.max():.3g} > {_ADJACENT_CHI_BOUND}; the data does "
                    "not look like samples of a continuous function"
                )

    def __len__(self) -> int:
        return len(self._values)

    def __getitem__(self, i) -> ExtendedComplex:
        return self._values[i]

    @property
    def values(self) -> tuple[ExtendedComplex, ...]:
        return self._values

    @property
    def array(self) -> np.ndarray:
        return self._array.copy()

    @property
    def infinity_mask(self) -> np.ndarray:
        return self._inf.copy()

    @property
    def angles(self) -> np.ndarray:
        k = len(self._values)
        return 2 * math.pi * np.arange(k) / k

    @property
    def points(self) -> np.ndarray:
        return np.exp(1j * self.angles)

    def all_infinite(self) -> bool:
        return bool(self._inf.all())


def sample_circle(f, count: int = 1024) -> CircleSamples:
    """Sample a function spec (or callable) on the unit circle."""
    z = np.exp(2j * math.pi * np.arange(count) / count)
    if callable(f) and not hasattr(f, "__dataclass_fields__"):
        return CircleSamples([f(zz) for zz in z])
    vals, inf = evaluate_array(f, z)
    return CircleSamples(
        [INFINITY if m else ExtendedComplex.finite(v) for v, m in zip(vals, inf)]
    )


def _shorter_arc_delta(phi_in: float, phi_out: float) -> float:
    """Signed angular step along the shorter arc; counterclockwise on ties."""
    d = (phi_out - phi_in + math.pi) % (2 * math.pi) - math.pi
    if d == -math.pi:
        d = math.pi
    return d


def chordal_clip(samples: CircleSamples, m_threshold: float) -> CircleSamples:
    """Replace over-threshold runs by arcs of the circle |w| = M.

    Samples with modulus <= M pass through unchanged.  Each maximal run of
    samples with |value| > M (or the value infinity) is replaced by points
    on |w| = M whose angles interpolate from the run's entry value to its
    exit value along the shorter arc; entry and exit are the neighbouring
    in-range values radially projected onto |w| = M.  The output is finite
    everywhere with moduli <= M, and every replaced sample stays within the
    chordal diameter of {infinity} union {|w| >= M} of the original.
    """
    if m_threshold < 1:
        raise ValidationError(f"clip threshold must be >= 1, got {m_threshold}")
    vals = samples.array
    inf = samples.infinity_mask
    over = inf | (np.abs(vals) > m_threshold)
    if not over.any():
        return samples
    if over.all():
        raise AllSamplesExceedError(
            "all samples exceed the clip threshold; use the constant-infinity "
            "fast path"
        )
    k = len(vals)
    # rotate so index 0 is in range; runs then never wrap the seam
    i0 = int(np.argmin(over))
    over_r = np.roll(over, -i0)
    vals_r = np.roll(vals, -i0)
    out = vals_r.copy()
    i = 1
    while i < k:
        if not over_r[i]:
            i += 1
            continue
        j = i
        while j < k and over_r[j]:
            j += 1
        entry = vals_r[i - 1]
        exit_ = vals_r[j % k]
        phi_in = float(np.angle(entry)) if entry != 0 else 0.0
        phi_out = float(np.angle(exit_)) if exit_ != 0 else 0.0
        delta = _shorter_arc_delta(phi_in, phi_out)
        run_len = j - i
        for t in range(i, j):
            lam = (t - i + 1) / (run_len + 1)
            out[t] = m_threshold * np.exp(1j * (phi_in + delta * lam))
        i = j
    out = np.roll(out, i0)
    return CircleSamples([complex(v) for v in out], check=False)


def _coefficient_window(fhat: np.ndarray, n: int, fejer: bool) -> np.ndarray:
    k = len(fhat)
    w = np.zeros(k)
    w[0] = 1.0
    for j in range(1, n + 1):
        wt = 1.0 - j / (n + 1) if fejer else 1.0
        w[j] = wt
        w[k - j] = wt
    return fhat * w

def _laurent_from_fft(windowed: np.ndarray, n: int) -> LaurentPoly:
    k = len(windowed)
    coeffs = {}
    for j in range(0, n + 1):
        coeffs[j] = windowed[j]
    for j in range(1, n + 1):
        coeffs[-j] = windowed[k - j]
    return LaurentPoly(coeffs)


def trig_approx(samples: CircleSamples, eps: float) -> LaurentPoly:
    """Trigonometric polynomial within chordal sample error eps/2.

    Builds Fejer (Cesaro) means of the discrete Fourier series of the
    (finite) samples and raises the degree until the maximum chordal sample
    error drops below eps/2.  Fejer means underfit exact trigonometric
    polynomials, so whenever they miss the target at some degree the
    truncated Fourier sum - the least-squares trigonometric fit on
    equispaced samples - is tried at the same degree before escalating.
    """
    if not eps > 0:
        raise ValidationError(f"eps must be positive, got {eps}")
    if samples.infinity_mask.any():
        raise ValidationError("trig_approx needs finite samples; clip first")
    g = samples.array
    k = len(g)
    fhat = np.fft.fft(g) / k
    n_cap = min(k // 2 - 1, DEGREE_CAP)
    target = eps / 2
    n = 1
    while n <= n_cap:
        for fejer in (True, False):
            windowed = _coefficient_window(fhat, n, fejer)
            qvals = np.fft.ifft(windowed) * k
            err = chi_array(g, np.zeros(k, bool), qvals, np.zeros(k, bool)).max()
            if err < target:
                return _laurent_from_fft(windowed, n)
        n = min(2 * n, n_cap) if n != n_cap else n_cap + 1
    raise DegreeCapError(
        f"no trigonometric degree up to {n_cap} reached sample error {target}",
        cap=n_cap,
    )


def _sample_error(samples: CircleSamples, q) -> tuple[float, complex]:
    pts = samples.points
    qv, qi = evaluate_array(q, pts)
    chis = chi_array(samples.array, samples.infinity_mask, qv, qi)
    idx = int(np.argmax(chis))
    return float(chis[idx]), complex(pts[idx])


def approximate_on_circle(
    samples: CircleSamples,
    eps: float,
    symbolic=None,
    grid: GridSpec | None = None,
) -> ApproxResult:
    """End-to-end chordal approximation of circle samples.

    If every sample is the point at infinity (or everything exceeds the clip
    threshold) the approximant is Q(z) = n*z for the constant level n, whose
    error on the circle is exactly 1/sqrt(1 + n^2).  Otherwise the target is
    clipped at M = exterior_threshold(eps/2) and handed to trig_approx; the
    triangle inequality bounds the total error by eps, confirmed on the
    samples and - when a symbolic target is supplied - on a resampling
    ``refinement_factor`` times finer.
    """
    if not 0 < eps < 1:
        raise ValidationError(f"eps must lie in (0, 1), got {eps}")
    k = len(samples)
    if grid is None:
        grid = GridSpec(radial_count=8, angular_count=k)

    clipped = None
    fast_reason = None
    if samples.all_infinite():
        fast_reason = "all samples are the point at infinity"
        level = infinity_level(eps)
    else:
        try:
            clipped = chordal_clip(samples, exterior_threshold(eps / 2))
        except AllSamplesExceedError:
            fast_reason = "all samples exceed the clip threshold"
            level = infinity_level(eps / 2)

    if fast_reason is not None:
        q = LaurentPoly({1: level})
        err, argmax = _sample_error(samples, q)
        est = _verified_estimate(q, samples, symbolic, grid, err, argmax)
        return ApproxResult(
            q, eps, est, None, 1, f"{fast_reason}; Q(z) = {level}*z"
        )

    q = trig_approx(clipped, eps / 2)
    err, argmax = _sample_error(samples, q)
    est = _verified_estimate(q, samples, symbolic, grid, err, argmax)
    return ApproxResult(
        q,
        eps,
        est,
        None,
        q.max_index,
        f"clipped at M = {exterior_threshold(eps / 2):.6g}, trigonometric "
        f"degree {q.max_index}",
    )


def _verified_estimate(q, samples, symbolic, grid, sample_err, argmax) -> SupEstimate:
    if symbolic is None:
        return SupEstimate(min(sample_err, 1.0), argmax, grid, True)
    if callable(symbolic) and not hasattr(symbolic, "__dataclass_fields__"):
        vgrid = verification_grid(grid)
        kk = vgrid.angular_count
        pts = np.exp(2j * math.pi * np.arange(kk) / kk)
        fv = []
        fm = []
        for zz in pts:
            v = symbolic(zz)
            v = v if isinstance(v, ExtendedComplex) else ExtendedComplex.finite(v)
            fv.append(0j if v.is_infinity else v.value)
            fm.append(v.is_infinity)
        qv, qi = evaluate_array(q, pts)
        chis = chi_array(np.array(fv), np.array(fm), qv, qi)
        idx = int(np.argmax(chis))
        return SupEstimate(float(min(chis[idx], 1.0)), complex(pts[idx]), vgrid, True)
    return sup_chordal(symbolic, q, UNIT_CIRCLE, verification_grid(grid))
