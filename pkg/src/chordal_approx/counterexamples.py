"""Executable numeric counterexamples about the chordal sup metric.

Each construction here computes, rather than asserts, a number with a known
closed form: the failure of boundary-sup control over the global sup, the
principal-value failure of the circle mean-value property, the iterated
area mean that still recovers f(0), and rational functions whose infinity
set is a prescribed finite boundary set.
"""

import math
from typing import NamedTuple

import numpy as np

from .errors import ValidationError
from .funcspec import (
    ClosedAnnulus,
    ClosedDisc,
    ConstantInfinity,
    PartialFractions,
    PoleTerm,
    Polynomial,
)
from .supmetric import GridSpec, sup_chordal

__all__ = [
    "SupBoundResult",
    "sup_bound_counterexample",
    "mean_value_pv",
    "re_identity_max_deviation",
    "area_mean_iterated",
    "inner_circle_mean",
    "boundary_pole_function",
]


class SupBoundResult(NamedTuple):
    global_sup: float
    annulus_sup: float


def sup_bound_counterexample(n: int, r: float, grid: GridSpec | None = None) -> SupBoundResult:
    """Grid sups of chi(n*z, infinity) over the unit disc and over r <= |z| <= 1.

    The global sup is 1 (attained at z = 0) while the annulus sup is
    1/sqrt(1 + n^2 r^2), which tends to 0 as n grows: no finite constant can
    bound the global sup by the annulus sup uniformly.  Both values are
    measured on grids and match the closed forms to rounding.
    """
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if not 0 < r < 1:
        raise ValidationError(f"r must lie in (0, 1), got {r}")
    if grid is None:
        grid = GridSpec()
    f = Polynomial((0, n))
    g = ConstantInfinity()
    global_sup = sup_chordal(f, g, ClosedDisc(0j, 1.0), grid).value
    annulus_sup = sup_chordal(f, g, ClosedAnnulus(0j, r, 1.0), grid).value
    return SupBoundResult(global_sup, annulus_sup)


def _circle_chord(t):
    """e^{it} - 1 with the real part formed as -2*sin^2(t/2).

    The textbook subtraction cos(t) - 1 cancels catastrophically for small
    t and would pollute the reciprocal's real part by ~1e-11 near t = 1e-3.
    """
    half = np.asarray(t) / 2.0
    return -2.0 * np.sin(half) ** 2 + 1j * np.sin(np.asarray(t))


def _pv_integral(eps: float, quad_points: int) -> complex:
    """Trapezoid of (1/2pi) * integral of 1/(e^{i t} - 1) over [eps, 2pi - eps]."""
    t = np.linspace(eps, 2 * math.pi - eps, quad_points + 1)
    vals = 1.0 / _circle_chord(t)
    return np.trapezoid(vals, t) / (2 * math.pi)


class MeanValuePV(NamedTuple):
    principal_value: float
    imaginary_magnitude: float


def mean_value_pv(quad_points: int = 4096) -> MeanValuePV:
    """Principal value of the circle mean of 1/(z - 1).

    The symmetric quadrature kills the imaginary part (the integrand at t
    and 2pi - t are conjugate); the real part is identically -1/2, so the
    eps -> 0 limit is -1/2.  The limit is extrapolated by Richardson from
    the last three of eps = 2^-k, k = 4..12.  Contrast with the value at the
    center: f(0) = -1.
    """
    if quad_points < 1024:
        raise ValidationError(f"quad_points must be >= 1024, got {quad_points}")
    values = [_pv_integral(2.0**-k, quad_points) for k in range(4, 13)]
    imag_mag = max(abs(v.imag) for v in values)
    if imag_mag >= 1e-8:
        raise ValidationError(
            f"imaginary part failed to cancel: {imag_mag:.3g} (quadrature bug)"
        )
    v10, v11, v12 = (v.real for v in values[-3:])
    r1 = 2 * v12 - v11
    r2 = 2 * v11 - v10
    limit = (4 * r1 - r2) / 3
    return MeanValuePV(float(limit), float(imag_mag))


def re_identity_max_deviation(
    num_angles: int = 10_000, seed: int = 0, min_angle: float = 1e-3
) -> float:
    """max |Re(1/(e^{i t} - 1)) + 1/2| over random angles away from 0."""
    rng = np.random.default_rng(seed)
    t = rng.uniform(min_angle, 2 * math.pi - min_angle, num_angles)
    re = (1.0 / _circle_chord(t)).real
    return float(np.abs(re + 0.5).max())


def inner_circle_mean(radius: float, angular_points: int | None = None) -> complex:
    """Angular integral of 1/(z-1)^2 over |z| = radius (exactly 2*pi for r < 1).

    Periodic trapezoid quadrature is spectrally accurate; close to the pole
    the node count scales with the inverse distance to keep the error down.
    """
    if not 0 <= radius < 1:
        raise ValidationError(f"radius must lie in [0, 1), got {radius}")
    if angular_points is None:
        gap = -math.log(radius) if radius > 0 else 1.0
        angular_points = int(min(max(4096, 80.0 / gap), 2**19))
    t = 2 * math.pi * np.arange(angular_points) / angular_points
    z = radius * np.exp(1j * t)
    vals = 1.0 / (z - 1.0) ** 2
    return complex(np.mean(vals) * 2 * math.pi)


def area_mean_iterated(radial_points: int = 256) -> float:
    """Iterated polar area mean (1/pi) * int_0^1 int_0^{2pi} f r dt dr of 1/(z-1)^2.

    The inner angular integral equals 2*pi*f(0) = 2*pi at every radius
    r < 1, so the iterated integral recovers f(0) = 1 even though f is not
    absolutely integrable over the disc.  The outer integral runs to 1 -
    delta and the delta -> 0 limit is extrapolated by Richardson from the
    last three of delta = 2^-k, k = 4..12.
    """
    if radial_points < 256:
        raise ValidationError(f"radial_points must be >= 256, got {radial_points}")

    def outer(delta: float) -> float:
        radii = np.linspace(0.0, 1.0 - delta, radial_points + 1)
        inner = np.array([inner_circle_mean(r).real for r in radii])
        return float(np.trapezoid(radii * inner, radii) / math.pi)

    values = [outer(2.0**-k) for k in range(4, 13)]
    v10, v11, v12 = values[-3:]
    r1 = 2 * v12 - v11
    r2 = 2 * v11 - v10
    return float((4 * r1 - r2) / 3)


def boundary_pole_function(points, multiplicities=None) -> PartialFractions:
    """Sum of 1/(z - zeta_j)^{m_j} over a finite set of unimodular points.

    The result is holomorphic on the open unit disc, continuous into the
    sphere on the closed disc, and takes the value infinity exactly on the
    given boundary set.
    """
    pts = [complex(p) for p in points]
    if not pts:
        raise ValidationError("the boundary set must be nonempty")
    for p in pts:
        if abs(abs(p) - 1.0) > 1e-12:
            raise ValidationError(f"boundary point {p} is not unimodular")
    if len({(p.real, p.imag) for p in pts}) != len(pts):
        raise ValidationError("boundary points must be distinct")
    if multiplicities is None:
        multiplicities = [1] * len(pts)
    mults = [int(m) for m in multiplicities]
    if len(mults) != len(pts):
        raise ValidationError("need one multiplicity per boundary point")
    if any(m < 1 for m in mults):
        raise ValidationError("multiplicities must be positive")
    return PartialFractions((), [PoleTerm(p, m, 1.0) for p, m in zip(pts, mults)])
