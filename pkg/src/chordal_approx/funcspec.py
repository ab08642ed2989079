"""Symbolic function and domain representations.

Functions live in a small closed family (polynomials, Laurent polynomials,
polynomials in 1/(z - w), partial fractions, the constant-infinity function
and finite sums of these).  The family is closed under Moebius substitution
z -> (az + b)/(cz + d), which is what the approximation pipelines lean on:
dilation, domain inversion and the single-pole change of variable are all
instances of one exactly-computed transform.

Poles are structural: they come from the representation, never from floating
overflow, so evaluation returns the point at infinity exactly at a declared
pole and a finite (possibly huge) value elsewhere.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PoleSampleError, ValidationError
from .sphere import INFINITY, ExtendedComplex

__all__ = [
    "Polynomial",
    "LaurentPoly",
    "PoleRational",
    "PoleTerm",
    "PartialFractions",
    "ConstantInfinity",
    "Sum",
    "FunctionSpec",
    "ClosedDisc",
    "Circle",
    "ClosedAnnulus",
    "StarlikeCompact",
    "Arc",
    "DisjointUnion",
    "DomainSpec",
    "MembershipReport",
    "evaluate",
    "evaluate_array",
    "poles_of",
    "to_partial_fractions",
    "mobius_compose",
    "dilate",
    "taylor_coeffs",
    "fft_taylor_coeffs",
    "fft_laurent_coeffs",
    "classify_membership",
]

# Relative threshold deciding "z hits a pole" during evaluation: one
# ulp-scale band around the exact pole location.
POLE_HIT_RTOL = 1e-14

# Wider guard used by contour quadrature: samples this close to a pole make
# the integrand garbage long before the evaluation itself breaks down.
SAMPLE_POLE_RTOL = 1e-12


def _trim(coeffs) -> tuple[complex, ...]:
    cs = [complex(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _pole_hit(z: complex, p: complex, rtol: float = POLE_HIT_RTOL) -> bool:
    return abs(z - p) <= rtol * max(1.0, abs(p))


# --- function specs ------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """sum_j coeffs[j] * z**j, ascending degree, no trailing zeros."""

    coeffs: tuple[complex, ...] = ()

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((complex(c),))


@dataclass(frozen=True)
class LaurentPoly:
    """sum_n a_n * z**n over a finite symmetric-range index set.

    ``terms`` is the canonical sorted tuple of (n, a_n) pairs with zero
    coefficients dropped; construct from any mapping n -> a_n.
    """

    terms: tuple[tuple[int, complex], ...] = ()

    def __init__(self, coeffs=()):
        if isinstance(coeffs, dict):
            items = coeffs.items()
        else:
            items = tuple(coeffs)
        merged: dict[int, complex] = {}
        for n, c in items:
            merged[int(n)] = merged.get(int(n), 0j) + complex(c)
        terms = tuple(sorted((n, c) for n, c in merged.items() if c != 0))
        object.__setattr__(self, "terms", terms)

    @property
    def coeffs(self) -> dict[int, complex]:
        return dict(self.terms)

    def coeff(self, n: int) -> complex:
        return dict(self.terms).get(n, 0j)

    @property
    def max_index(self) -> int:
        return max((abs(n) for n, _ in self.terms), default=0)

    def positive_part(self) -> tuple[complex, ...]:
        top = max((n for n, _ in self.terms if n >= 0), default=-1)
        out = [0j] * (top + 1)
        for n, c in self.terms:
            if n >= 0:
                out[n] = c
        return _trim(out)

    def negative_terms(self) -> tuple[tuple[int, complex], ...]:
        return tuple((n, c) for n, c in self.terms if n < 0)

    def negative_part_coeffs(self) -> tuple[complex, ...]:
        """Coefficients of the principal part as a polynomial in 1/z.

        Entry m holds the coefficient of z**-m (entry 0 is zero), so the
        principal part evaluates by one Horner pass in u = 1/z.
        """
        neg = self.negative_terms()
        if not neg:
            return ()
        top = max(-n for n, _ in neg)
        out = [0j] * (top + 1)
        for n, c in neg:
            out[-n] = c
        return tuple(out)


@dataclass(frozen=True)
class PoleRational:
    """Q(1/(z - w)) for a polynomial Q with coefficients ``q_coeffs``."""

    w: complex
    q_coeffs: tuple[complex, ...] = ()

    def __init__(self, w, q_coeffs=()):
        object.__setattr__(self, "w", complex(w))
        object.__setattr__(self, "q_coeffs", _trim(q_coeffs))

    @property
    def q_degree(self) -> int:
        return len(self.q_coeffs) - 1


@dataclass(frozen=True)
class PoleTerm:
    """c / (z - p)**m."""

    p: complex
    m: int
    c: complex

    def __post_init__(self):
        object.__setattr__(self, "p", complex(self.p))
        object.__setattr__(self, "c", complex(self.c))
        if self.m < 1:
            raise ValidationError(f"pole multiplicity must be >= 1, got {self.m}")


@dataclass(frozen=True)
class PartialFractions:
    """Polynomial part plus a sum of simple terms c / (z - p)**m.

    Terms with equal (p, m) are merged; zero-coefficient terms are dropped;
    the pole list is kept in a canonical sort order.
    """

    poly_part: tuple[complex, ...] = ()
    poles: tuple[PoleTerm, ...] = ()

    def __init__(self, poly_part=(), poles=()):
        object.__setattr__(self, "poly_part", _trim(poly_part))
        merged: dict[tuple[complex, int], complex] = {}
        for t in poles:
            if not isinstance(t, PoleTerm):
                t = PoleTerm(*t)
            key = (t.p, t.m)
            merged[key] = merged.get(key, 0j) + t.c
        canon = sorted(
            ((p, m, c) for (p, m), c in merged.items() if c != 0),
            key=lambda t: (t[0].real, t[0].imag, t[1]),
        )
        object.__setattr__(self, "poles", tuple(PoleTerm(*t) for t in canon))


@dataclass(frozen=True)
class ConstantInfinity:
    """The function identically equal to the point at infinity."""


@dataclass(frozen=True)
class Sum:
    """Pointwise sum of function specs.

    A sum containing the constant-infinity function must contain nothing
    else (the sum would be ill-defined pointwise otherwise).
    """

    terms: tuple = ()

    def __init__(self, terms=()):
        terms = tuple(terms)
        if any(isinstance(t, ConstantInfinity) for t in terms) and len(terms) > 1:
            raise ValidationError(
                "a Sum containing the constant-infinity function must be a singleton"
            )
        object.__setattr__(self, "terms", terms)


FunctionSpec = (
    Polynomial | LaurentPoly | PoleRational | PartialFractions | ConstantInfinity | Sum
)


# --- domain specs --------------------------------------------------------


@dataclass(frozen=True)
class ClosedDisc:
    center: complex = 0j
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not self.radius > 0:
            raise ValidationError(f"disc radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class Circle:
    center: complex = 0j
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not self.radius > 0:
            raise ValidationError(f"circle radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class ClosedAnnulus:
    center: complex = 0j
    r_inner: float = 0.5
    r_outer: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not (0 < self.r_inner < self.r_outer):
            raise ValidationError(
                f"annulus radii must satisfy 0 < r_inner < r_outer, got "
                f"({self.r_inner}, {self.r_outer})"
            )

    @property
    def mid_radius(self) -> float:
        return 0.5 * (self.r_inner + self.r_outer)


@dataclass(frozen=True)
class StarlikeCompact:
    """Compact set starlike about ``center``.

    The boundary is the radial function theta -> rho(theta) sampled at
    equispaced angles 2*pi*k/len(radii); between samples rho is interpolated
    linearly (periodic).
    """

    center: complex = 0j
    radii: tuple[float, ...] = ()

    def __init__(self, center, radii):
        object.__setattr__(self, "center", complex(center))
        rs = tuple(float(r) for r in radii)
        if len(rs) < 8:
            raise ValidationError("starlike boundary needs at least 8 radial samples")
        if min(rs) <= 0:
            raise ValidationError("radial function samples must be strictly positive")
        object.__setattr__(self, "radii", rs)

    def rho(self, theta: float) -> float:
        k = len(self.radii)
        t = (theta % (2 * math.pi)) * k / (2 * math.pi)
        i = int(t) % k
        frac = t - int(t)
        return self.radii[i] * (1 - frac) + self.radii[(i + 1) % k] * frac

    def rho_array(self, thetas: np.ndarray) -> np.ndarray:
        k = len(self.radii)
        t = (np.asarray(thetas) % (2 * math.pi)) * k / (2 * math.pi)
        i = t.astype(int) % k
        frac = t - np.floor(t)
        rs = np.asarray(self.radii)
        return rs[i] * (1 - frac) + rs[(i + 1) % k] * frac

    @property
    def max_radius(self) -> float:
        return max(self.radii)

    @classmethod
    def square(cls, half_side: float = 1.0, center=0j, samples: int = 256):
        """Axis-aligned square of the given half side as a starlike compact.

        ``samples`` should be a multiple of 8 so the corners are hit exactly.
        """
        thetas = 2 * math.pi * np.arange(samples) / samples
        rho = half_side / np.maximum(np.abs(np.cos(thetas)), np.abs(np.sin(thetas)))
        return cls(center, tuple(rho))


@dataclass(frozen=True)
class Arc:
    """A compact arc given as an ordered list of sample points."""

    points: tuple[complex, ...] = ()

    def __init__(self, points):
        pts = tuple(complex(p) for p in points)
        if len(pts) < 2:
            raise ValidationError("an arc needs at least two sample points")
        object.__setattr__(self, "points", pts)

    def resampled_points(self, factor: int) -> tuple[complex, ...]:
        """Insert ``factor - 1`` chord-interpolated points between samples."""
        out = []
        pts = self.points
        for a, b in zip(pts[:-1], pts[1:]):
            for j in range(factor):
                out.append(a + (b - a) * j / factor)
        out.append(pts[-1])
        return tuple(out)


def _domain_probe_points(d) -> np.ndarray:
    """Coarse sample cloud used for geometric sanity checks."""
    th = np.exp(2j * math.pi * np.arange(64) / 64)
    if isinstance(d, ClosedDisc):
        r = np.linspace(0, d.radius, 9)
        return (d.center + r[:, None] * th[None, :]).ravel()
    if isinstance(d, Circle):
        return d.center + d.radius * th
    if isinstance(d, ClosedAnnulus):
        r = np.linspace(d.r_inner, d.r_outer, 9)
        return (d.center + r[:, None] * th[None, :]).ravel()
    if isinstance(d, StarlikeCompact):
        t = np.linspace(0, 1, 9)
        ang = np.angle(th)
        rho = d.rho_array(ang)
        return (d.center + t[:, None] * (rho * th)[None, :]).ravel()
    if isinstance(d, Arc):
        return np.asarray(d.points)
    if isinstance(d, DisjointUnion):
        return np.concatenate([_domain_probe_points(p) for p in d.parts])
    raise ValidationError(f"unsupported domain {type(d).__name__}")


def domain_contains(d, z: complex, tol: float = 1e-12) -> bool:
    """Membership test for a point in a domain (within ``tol``)."""
    if isinstance(d, ClosedDisc):
        return abs(z - d.center) <= d.radius + tol
    if isinstance(d, Circle):
        return abs(abs(z - d.center) - d.radius) <= tol
    if isinstance(d, ClosedAnnulus):
        m = abs(z - d.center)
        return d.r_inner - tol <= m <= d.r_outer + tol
    if isinstance(d, StarlikeCompact):
        v = z - d.center
        m = abs(v)
        if m <= tol:
            return True
        return m <= d.rho(cmath.phase(v)) + tol
    if isinstance(d, Arc):
        pts = d.points
        for a, b in zip(pts[:-1], pts[1:]):
            ab = b - a
            t = 0.0 if ab == 0 else max(0.0, min(1.0, ((z - a) / ab).real))
            if abs(z - (a + t * ab)) <= tol:
                return True
        return False
    if isinstance(d, DisjointUnion):
        return any(domain_contains(p, z, tol) for p in d.parts)
    raise ValidationError(f"unsupported domain {type(d).__name__}")


@dataclass(frozen=True)
class DisjointUnion:
    parts: tuple = ()

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise ValidationError("disjoint union needs at least one part")
        for i, a in enumerate(parts):
            for b in parts[i + 1 :]:
                pa = _domain_probe_points(a)
                if any(domain_contains(b, z, 1e-9) for z in pa):
                    raise ValidationError(
                        "disjoint-union components overlap (sample-point check)"
                    )
        object.__setattr__(self, "parts", parts)


DomainSpec = ClosedDisc | Circle | ClosedAnnulus | StarlikeCompact | Arc | DisjointUnion


# --- evaluation ----------------------------------------------------------


def _horner(coeffs, z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def evaluate(f, z) -> ExtendedComplex:
    """Evaluate a function spec at a finite point of C.

    Returns the point at infinity exactly when ``z`` hits a structural pole
    (within a relative band of 1e-14), and also when the finite arithmetic
    overflows the representable range; it never returns NaN.
    """
    z = complex(z)
    if isinstance(f, ConstantInfinity):
        return INFINITY
    if isinstance(f, Sum):
        total = 0j
        for t in f.terms:
            v = evaluate(t, z)
            if v.is_infinity:
                return INFINITY
            total += v.value
        return _finite_or_infinity(total)
    if isinstance(f, Polynomial):
        return _finite_or_infinity(_horner(f.coeffs, z))
    if isinstance(f, LaurentPoly):
        neg = f.negative_part_coeffs()
        if neg and _pole_hit(z, 0j):
            return INFINITY
        acc = _horner(f.positive_part(), z)
        if neg:
            acc += _horner(neg, 1.0 / z)
        return _finite_or_infinity(acc)
    if isinstance(f, PoleRational):
        if f.q_degree >= 1 and _pole_hit(z, f.w):
            return INFINITY
        if not f.q_coeffs:
            return ExtendedComplex.finite(0.0)
        if f.q_degree == 0:
            return ExtendedComplex.finite(f.q_coeffs[0])
        return _finite_or_infinity(_horner(f.q_coeffs, 1.0 / (z - f.w)))
    if isinstance(f, PartialFractions):
        for t in f.poles:
            if _pole_hit(z, t.p):
                return INFINITY
        acc = _horner(f.poly_part, z)
        for t in f.poles:
            acc += t.c / (z - t.p) ** t.m
        return _finite_or_infinity(acc)
    raise ValidationError(f"unsupported function spec {type(f).__name__}")


def _finite_or_infinity(v: complex) -> ExtendedComplex:
    if math.isfinite(v.real) and math.isfinite(v.imag):
        return ExtendedComplex.finite(v)
    return INFINITY


def evaluate_array(f, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised evaluation: returns (values, infinity_mask).

    Entries under the mask represent the point at infinity; their value
    slots are zeroed.  Agrees with :func:`evaluate` pointwise.
    """
    z = np.asarray(z, complex)
    with np.errstate(all="ignore"):
        vals, inf = _eval_array(f, z)
    bad = ~(np.isfinite(vals.real) & np.isfinite(vals.imag))
    inf = inf | bad
    vals = np.where(inf, 0j, vals)
    return vals, inf


def _eval_array(f, z):
    if isinstance(f, ConstantInfinity):
        return np.zeros(z.shape, complex), np.ones(z.shape, bool)
    if isinstance(f, Sum):
        vals = np.zeros(z.shape, complex)
        inf = np.zeros(z.shape, bool)
        for t in f.terms:
            v, i = _eval_array(t, z)
            vals = vals + v
            inf = inf | i
        return vals, inf
    if isinstance(f, Polynomial):
        return _horner_array(f.coeffs, z), np.zeros(z.shape, bool)
    if isinstance(f, LaurentPoly):
        neg = f.negative_part_coeffs()
        inf = np.zeros(z.shape, bool)
        acc = _horner_array(f.positive_part(), z)
        if neg:
            inf = np.abs(z) <= POLE_HIT_RTOL
            u = 1.0 / np.where(inf, 1.0, z)
            acc = acc + _horner_array(neg, u)
        return acc, inf
    if isinstance(f, PoleRational):
        if not f.q_coeffs:
            return np.zeros(z.shape, complex), np.zeros(z.shape, bool)
        if f.q_degree == 0:
            return np.full(z.shape, f.q_coeffs[0]), np.zeros(z.shape, bool)
        inf = np.abs(z - f.w) <= POLE_HIT_RTOL * max(1.0, abs(f.w))
        d = np.where(inf, 1.0, z - f.w)
        return _horner_array(f.q_coeffs, 1.0 / d), inf
    if isinstance(f, PartialFractions):
        inf = np.zeros(z.shape, bool)
        acc = _horner_array(f.poly_part, z)
        for t in f.poles:
            hit = np.abs(z - t.p) <= POLE_HIT_RTOL * max(1.0, abs(t.p))
            inf = inf | hit
            d = np.where(hit, 1.0, z - t.p)
            acc = acc + t.c / d**t.m
        return acc, inf
    raise ValidationError(f"unsupported function spec {type(f).__name__}")


def _horner_array(coeffs, z: np.ndarray) -> np.ndarray:
    acc = np.zeros(z.shape, complex)
    for c in reversed(coeffs):
        acc *= z
        acc += c
    return acc


# --- structure -----------------------------------------------------------


def poles_of(f) -> tuple[tuple[complex, int], ...]:
    """Structural pole locations with multiplicities.

    Poles are read off the representation term by term; exact cancellation
    between terms of a Sum is not detected.
    """
    if isinstance(f, (Polynomial, ConstantInfinity)):
        return ()
    if isinstance(f, LaurentPoly):
        neg = f.negative_terms()
        return ((0j, max(-n for n, _ in neg)),) if neg else ()
    if isinstance(f, PoleRational):
        return ((f.w, f.q_degree),) if f.q_degree >= 1 else ()
    if isinstance(f, PartialFractions):
        best: dict[complex, int] = {}
        for t in f.poles:
            best[t.p] = max(best.get(t.p, 0), t.m)
        return tuple(sorted(best.items(), key=lambda kv: (kv[0].real, kv[0].imag)))
    if isinstance(f, Sum):
        best = {}
        for t in f.terms:
            for p, m in poles_of(t):
                best[p] = max(best.get(p, 0), m)
        return tuple(sorted(best.items(), key=lambda kv: (kv[0].real, kv[0].imag)))
    raise ValidationError(f"unsupported function spec {type(f).__name__}")


def to_partial_fractions(f) -> PartialFractions:
    """Exact conversion of any finite-family spec to partial fractions."""
    if isinstance(f, ConstantInfinity):
        raise ValidationError("the constant-infinity function has no partial fractions")
    if isinstance(f, PartialFractions):
        return f
    if isinstance(f, Polynomial):
        return PartialFractions(f.coeffs, ())
    if isinstance(f, PoleRational):
        poly = (f.q_coeffs[0],) if f.q_coeffs else ()
        poles = [PoleTerm(f.w, q, c) for q, c in enumerate(f.q_coeffs) if q >= 1]
        return PartialFractions(poly, poles)
    if isinstance(f, LaurentPoly):
        poles = [PoleTerm(0j, -n, c) for n, c in f.negative_terms()]
        return PartialFractions(f.positive_part(), poles)
    if isinstance(f, Sum):
        poly: list[complex] = []
        poles = []
        for t in f.terms:
            pf = to_partial_fractions(t)
            if len(pf.poly_part) > len(poly):
                poly.extend([0j] * (len(pf.poly_part) - len(poly)))
            for j, c in enumerate(pf.poly_part):
                poly[j] += c
            poles.extend(pf.poles)
        return PartialFractions(poly, poles)
    raise ValidationError(f"unsupported function spec {type(f).__name__}")


def _taylor_shift(coeffs, c: complex) -> tuple[complex, ...]:
    """Coefficients of p in powers of (z - c), by synthetic division."""
    b = list(coeffs)
    n = len(b)
    for k in range(n):
        for j in range(n - 2, k - 1, -1):
            b[j] += c * b[j + 1]
    return tuple(b)


def _affine_compose(coeffs, alpha: complex, beta: complex) -> tuple[complex, ...]:
    """Coefficients of p(alpha*z + beta)."""
    shifted = _taylor_shift(coeffs, beta)
    return tuple(b * alpha**k for k, b in enumerate(shifted))


def mobius_compose(f, a, b, c, d):
    """Exact spec of z -> f((a*z + b)/(c*z + d)).

    The result is a PartialFractions (or plain Polynomial when no pole term
    survives).  Requires a*d - b*c != 0 and rejects the constant-infinity
    function.
    """
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)
    det = a * d - b * c
    if det == 0:
        raise ValidationError("degenerate Moebius map (zero determinant)")
    if isinstance(f, ConstantInfinity):
        return ConstantInfinity()
    pf = to_partial_fractions(f)

    poly_out: list[complex] = []
    pole_out: list[PoleTerm] = []

    def add_poly(coeffs):
        for j, cj in enumerate(coeffs):
            if j >= len(poly_out):
                poly_out.extend([0j] * (j - len(poly_out) + 1))
            poly_out[j] += cj

    # polynomial part
    if pf.poly_part:
        if c == 0:
            add_poly(_affine_compose(pf.poly_part, a / d, b / d))
        else:
            A = a / c
            B = (b * c - a * d) / c
            w0 = -d / c
            for j, alpha in enumerate(pf.poly_part):
                if alpha == 0:
                    continue
                for i in range(j + 1):
                    coef = alpha * math.comb(j, i) * A**i * B ** (j - i)
                    q = j - i
                    if q == 0:
                        add_poly((coef,))
                    else:
                        pole_out.append(PoleTerm(w0, q, coef / c**q))

    # pole terms
    for t in pf.poles:
        lead = a - t.p * c
        if lead == 0:
            # the pole is pushed to infinity: the term becomes a polynomial
            denom = (b - t.p * d) ** t.m
            coeffs = [
                t.c * math.comb(t.m, i) * c**i * d ** (t.m - i) / denom
                for i in range(t.m + 1)
            ]
            add_poly(coeffs)
            continue
        s = (t.p * d - b) / lead
        base = t.c / lead**t.m
        t0 = c * s + d
        for i in range(t.m + 1):
            coef = base * math.comb(t.m, i) * c**i * t0 ** (t.m - i)
            if i == t.m:
                add_poly((coef,))
            else:
                pole_out.append(PoleTerm(s, t.m - i, coef))

    result = PartialFractions(poly_out, pole_out)
    if not result.poles:
        return Polynomial(result.poly_part)
    return result


def dilate(f, r: float, center=0j):
    """Spec of z -> f(center + r*(z - center))."""
    center = complex(center)
    return mobius_compose(f, r, center * (1 - r), 0, 1)


# --- coefficient extraction ----------------------------------------------


def taylor_coeffs(f, center, count: int) -> list[complex]:
    """First ``count`` Taylor coefficients of f about ``center``, exactly.

    Rational forms expand in closed form (geometric series of each pole
    term); sums add coefficientwise.  The center must stay away from every
    pole and the constant-infinity function is rejected.
    """
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    if isinstance(f, ConstantInfinity):
        raise ValidationError("the constant-infinity function has no Taylor series")
    center = complex(center)
    pf = to_partial_fractions(f)
    for t in pf.poles:
        if _pole_hit(center, t.p):
            raise ValidationError(f"expansion center {center} hits the pole at {t.p}")

    out = list(_taylor_shift(pf.poly_part, center)[:count])
    out.extend([0j] * (count - len(out)))
    for t in pf.poles:
        d = t.p - center
        sign = (-1.0) ** t.m
        inv_pow = d ** (-t.m)
        inv_d = 1.0 / d
        for k in range(count):
            coef = t.c * sign * math.comb(t.m - 1 + k, k) * inv_pow
            if not (math.isfinite(coef.real) and math.isfinite(coef.imag)):
                raise ValidationError(
                    "Taylor coefficients overflow: pole too close to the "
                    f"expansion center (|p - c| = {abs(d):.3g}) for count {count}"
                )
            out[k] += coef
            inv_pow *= inv_d
    return out


def _sample_count(count: int, samples: int | None) -> int:
    if samples is None:
        k = 64
        while k < 4 * count:
            k *= 2
        return k
    if samples & (samples - 1) or samples < 4 * count:
        raise ValidationError(
            f"sample count must be a power of two >= 4*count, got {samples}"
        )
    return samples


def _circle_values(f, center: complex, radius: float, k: int) -> np.ndarray:
    z = center + radius * np.exp(2j * math.pi * np.arange(k) / k)
    for p, _m in poles_of(f):
        close = np.abs(z - p) <= SAMPLE_POLE_RTOL * max(1.0, abs(p))
        if close.any():
            raise PoleSampleError(
                f"quadrature sample hits the pole at {p} on |z - {center}| = {radius}"
            )
    vals, inf = evaluate_array(f, z)
    if inf.any():
        raise PoleSampleError("function is not finite on the sampling circle")
    return vals


def fft_taylor_coeffs(
    f, center, radius: float, count: int, samples: int | None = None
) -> list[complex]:
    """Taylor coefficients via the Cauchy integral, FFT-sampled.

    Numerical oracle for :func:`taylor_coeffs`: a_j is the j-th Fourier
    coefficient of f on the circle |z - center| = radius, divided by
    radius**j.  The function must be finite on that circle.
    """
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    if not radius > 0:
        raise ValidationError(f"radius must be positive, got {radius}")
    k = _sample_count(count, samples)
    vals = _circle_values(f, complex(center), radius, k)
    hat = np.fft.fft(vals) / k
    return [hat[j] / radius**j for j in range(count)]


def fft_laurent_coeffs(
    f, center, radius: float, count: int, samples: int | None = None
) -> dict[int, complex]:
    """Laurent coefficients a_n, |n| <= count, from one FFT on a circle."""
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    k = _sample_count(count, samples)
    vals = _circle_values(f, complex(center), radius, k)
    hat = np.fft.fft(vals) / k
    out: dict[int, complex] = {}
    for n in range(-count, count + 1):
        out[n] = hat[n % k] / radius**n
    return out


# --- membership ----------------------------------------------------------


@dataclass(frozen=True)
class MembershipReport:
    """Outcome of a structural membership check (report, not exception)."""

    member: bool
    reason: str
    constant_infinity: bool = False
    offending_poles: tuple[complex, ...] = ()
    boundary_poles: tuple[complex, ...] = ()


_BOUNDARY_RTOL = 1e-9


def classify_membership(f, d, polynomial_limit: bool = False) -> MembershipReport:
    """Check whether f belongs to the uniform-limit class for the domain.

    For a closed disc: f is admissible when it is the constant-infinity
    function or all of its poles avoid the open disc (poles on the boundary
    circle are the interesting admissible case).

    For a closed annulus: by default poles must avoid the open annulus
    (two-boundary-circle class).  With ``polynomial_limit=True`` the target
    must extend to the full outer disc, so any pole strictly inside the
    outer circle disqualifies; poles sitting on the inner circle get an
    explicit reason, since there the value infinity is attainable only by
    the constant-infinity function.
    """
    if isinstance(f, ConstantInfinity):
        return MembershipReport(True, "constant-infinity target", True)
    poles = poles_of(f)

    if isinstance(d, ClosedDisc):
        tol = _BOUNDARY_RTOL * max(1.0, d.radius)
        interior = tuple(
            p for p, _ in poles if abs(p - d.center) < d.radius - tol
        )
        boundary = tuple(
            p for p, _ in poles if abs(abs(p - d.center) - d.radius) <= tol
        )
        if interior:
            return MembershipReport(
                False,
                f"pole(s) at {_fmt_poles(interior)} lie inside the open disc",
                offending_poles=interior,
                boundary_poles=boundary,
            )
        return MembershipReport(
            True,
            "holomorphic on the open disc; infinity only on the boundary",
            boundary_poles=boundary,
        )

    if isinstance(d, ClosedAnnulus):
        tol = _BOUNDARY_RTOL * max(1.0, d.r_outer)
        dist = {p: abs(p - d.center) for p, _ in poles}
        on_inner = tuple(p for p in dist if abs(dist[p] - d.r_inner) <= tol)
        on_outer = tuple(p for p in dist if abs(dist[p] - d.r_outer) <= tol)
        inside_open = tuple(
            p
            for p in dist
            if d.r_inner + tol < dist[p] < d.r_outer - tol
        )
        in_hole = tuple(p for p in dist if dist[p] < d.r_inner - tol)
        if polynomial_limit:
            bad = tuple(p for p in dist if dist[p] < d.r_outer - tol)
            if on_inner:
                return MembershipReport(
                    False,
                    "pole(s) on the inner circle: a uniform polynomial limit "
                    "cannot take the value infinity there unless it is the "
                    "constant-infinity function",
                    offending_poles=on_inner,
                    boundary_poles=on_outer,
                )
            if bad:
                return MembershipReport(
                    False,
                    f"pole(s) at {_fmt_poles(bad)} prevent extension to the "
                    "full outer disc",
                    offending_poles=bad,
                    boundary_poles=on_outer,
                )
            return MembershipReport(
                True,
                "extends to the closed outer disc with infinity only on the "
                "outer circle",
                boundary_poles=on_outer,
            )
        if inside_open:
            return MembershipReport(
                False,
                f"pole(s) at {_fmt_poles(inside_open)} lie inside the open annulus",
                offending_poles=inside_open,
                boundary_poles=on_inner + on_outer,
            )
        return MembershipReport(
            True,
            "holomorphic on the open annulus; infinity only on the boundary "
            "circles" + (" (none needed)" if not (on_inner or on_outer or in_hole) else ""),
            boundary_poles=on_inner + on_outer,
        )

    raise ValidationError(
        "membership is defined for closed discs and closed annuli, got "
        f"{type(d).__name__}"
    )


def _fmt_poles(ps) -> str:
    return ", ".join(f"{p:.6g}" for p in ps)
