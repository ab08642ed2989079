"""Extended complex plane C ∪ {∞} and the chordal metric.

The chordal metric on the extended plane is

    chi(z1, z2) = |z1 - z2| / (sqrt(1 + |z1|^2) * sqrt(1 + |z2|^2))
    chi(z, inf) = 1 / sqrt(1 + |z|^2),   chi(inf, inf) = 0.

All evaluation here is overflow-safe: the naive formula squares moduli,
which overflows exactly where this library operates (near poles), so the
numerator and both denominator factors are rescaled by max(1, |z|) before
combining.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = [
    "ExtendedComplex",
    "INFINITY",
    "chordal_dist",
    "reciprocal",
    "bounded_equivalence_factor",
    "exterior_threshold",
    "chi_array",
    "chi_to_infinity_array",
]


@dataclass(frozen=True)
class ExtendedComplex:
    """A point of C ∪ {∞}.

    ``value`` is a finite complex number, or ``None`` for the single point
    at infinity.  Finite values must have finite coordinates; NaN or an
    overflowed float never leaks into the finite variant.
    """

    value: complex | None = None

    def __post_init__(self):
        if self.value is not None:
            v = complex(self.value)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValidationError(
                    f"finite ExtendedComplex requires finite coordinates, got {v!r}"
                )
            object.__setattr__(self, "value", v)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    @classmethod
    def finite(cls, z) -> "ExtendedComplex":
        return cls(complex(z))

    @classmethod
    def infinity(cls) -> "ExtendedComplex":
        return cls(None)

    def __repr__(self):
        if self.is_infinity:
            return "ExtendedComplex(inf)"
        return f"ExtendedComplex({self.value!r})"


INFINITY = ExtendedComplex.infinity()


def _as_point(a) -> ExtendedComplex:
    if isinstance(a, ExtendedComplex):
        return a
    return ExtendedComplex.finite(a)


def _chi_finite(a: complex, b: complex) -> float:
    if a == b:
        return 0.0
    ma = abs(a)
    mb = abs(b)
    sa = max(1.0, ma)
    sb = max(1.0, mb)
    # divide by the larger scale first: bitwise symmetric in (a, b) and
    # overflow-free for moduli up to a quarter of the float range
    num = abs(a - b) / max(sa, sb) / min(sa, sb)
    den = math.hypot(1.0 / sa, ma / sa) * math.hypot(1.0 / sb, mb / sb)
    return min(num / den, 1.0)


def _chi_to_infinity(a: complex) -> float:
    m = abs(a)
    s = max(1.0, m)
    return 1.0 / (s * math.hypot(1.0 / s, m / s))


def chordal_dist(a, b) -> float:
    """Chordal distance between two extended-complex points, in [0, 1].

    Accepts ``ExtendedComplex`` or plain complex/float arguments.
    Symmetric, zero exactly on equal points, and finite for moduli up to a
    quarter of the largest representable float.
    """
    pa = _as_point(a)
    pb = _as_point(b)
    if pa.is_infinity and pb.is_infinity:
        return 0.0
    if pa.is_infinity:
        return _chi_to_infinity(pb.value)
    if pb.is_infinity:
        return _chi_to_infinity(pa.value)
    return _chi_finite(pa.value, pb.value)


def reciprocal(a) -> ExtendedComplex:
    """Reciprocal on the sphere: 1/0 = ∞, 1/∞ = 0, an involution."""
    pa = _as_point(a)
    if pa.is_infinity:
        return ExtendedComplex.finite(0.0)
    if pa.value == 0:
        return INFINITY
    inv = 1.0 / pa.value
    if not (math.isfinite(inv.real) and math.isfinite(inv.imag)):
        # |a| below ~1/realmax: the reciprocal is not representable.
        return INFINITY
    return ExtendedComplex.finite(inv)


def bounded_equivalence_factor(M: float) -> float:
    """Factor converting a chordal bound to a Euclidean bound on the M-ball.

    For |a|, |b| <= M one has |a - b| <= (1 + M^2) * chi(a, b).
    """
    if M < 0:
        raise ValidationError(f"M must be nonnegative, got {M}")
    return 1.0 + M * M


def exterior_threshold(eps: float) -> float:
    """Smallest modulus M such that {∞} ∪ {|w| >= M} has chordal diameter < eps.

    Uses the safe bound diameter <= 2 / sqrt(1 + M^2), i.e. returns
    M = sqrt(4 / eps^2 - 1).  Valid for 0 < eps <= 1.
    """
    if not 0 < eps <= 1:
        raise ValidationError(f"eps must lie in (0, 1], got {eps}")
    return math.sqrt(4.0 / (eps * eps) - 1.0)


# --- vectorised kernels -------------------------------------------------
#
# Grid evaluation works on plain complex arrays plus a boolean infinity
# mask; these kernels mirror the scalar formulas above elementwise.


def chi_to_infinity_array(values: np.ndarray) -> np.ndarray:
    """Elementwise chi(v, ∞) for an array of finite complex values."""
    m = np.abs(values)
    s = np.maximum(1.0, m)
    return 1.0 / (s * np.hypot(1.0 / s, m / s))


def chi_array(va, ia, vb, ib) -> np.ndarray:
    """Elementwise chordal distance between two masked value arrays.

    ``va``/``vb`` are complex arrays, ``ia``/``ib`` boolean masks marking
    entries that represent the point at infinity (the corresponding value
    entries are ignored).
    """
    va, vb = np.broadcast_arrays(np.asarray(va, complex), np.asarray(vb, complex))
    ia, ib = np.broadcast_arrays(np.asarray(ia, bool), np.asarray(ib, bool))
    out = np.empty(va.shape, float)
    both = ia & ib
    only_a = ia & ~ib
    only_b = ib & ~ia
    fin = ~(ia | ib)
    out[both] = 0.0
    if only_a.any():
        out[only_a] = chi_to_infinity_array(vb[only_a])
    if only_b.any():
        out[only_b] = chi_to_infinity_array(va[only_b])
    if fin.any():
        a = va[fin]
        b = vb[fin]
        ma = np.abs(a)
        mb = np.abs(b)
        sa = np.maximum(1.0, ma)
        sb = np.maximum(1.0, mb)
        num = np.abs(a - b) / np.maximum(sa, sb) / np.minimum(sa, sb)
        den = np.hypot(1.0 / sa, ma / sa) * np.hypot(1.0 / sb, mb / sb)
        out[fin] = np.minimum(num / den, 1.0)
    return out
