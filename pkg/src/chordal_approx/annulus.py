"""Laurent splitting and chordal approximation on closed annuli.

A target with poles confined to the two boundary circles splits exactly into
a part holomorphic inside the outer circle and a part holomorphic outside
the inner circle vanishing at infinity.  The outer part runs through the
disc pipeline directly; the inner part is transported to the unit disc by
the substitution v = r_inner/(z - center) - which preserves chordal errors
pointwise - approximated there, and mapped back.  The two approximants then
combine additively; the combination error is checked on a grid rather than
re-proved.
"""

from dataclasses import replace

import numpy as np

from .disc import (
    ApproxResult,
    approximate_on_disc,
    approximate_poly,
    infinity_level,
)
from .errors import (
    ApproximationError,
    MembershipError,
    PoleSampleError,
    ValidationError,
)
from .funcspec import (
    ClosedAnnulus,
    ClosedDisc,
    ConstantInfinity,
    LaurentPoly,
    MembershipReport,
    PartialFractions,
    PoleRational,
    Polynomial,
    Sum,
    classify_membership,
    mobius_compose,
    poles_of,
    to_partial_fractions,
)
from .supmetric import GridSpec, SupEstimate, sup_chordal, verification_grid

__all__ = [
    "laurent_decompose",
    "approximate_laurent",
    "chordal_sum_combine",
    "validate_polynomial_target",
    "COMBINE_SLACK",
]

# Engineering margin added to the sum of the two target tolerances when
# asserting the combined error of a sum of approximants.
COMBINE_SLACK = 0.1

_BOUNDARY_RTOL = 1e-9


def _zero_spec() -> Polynomial:
    return Polynomial(())


def _is_zero(spec) -> bool:
    if isinstance(spec, Polynomial):
        return not spec.coeffs
    if isinstance(spec, PartialFractions):
        return not spec.poly_part and not spec.poles
    if isinstance(spec, LaurentPoly):
        return not spec.terms
    return False


def laurent_decompose(f, annulus: ClosedAnnulus):
    """Split f into (regular, principal) parts for the annulus.

    The split routes each exact partial-fraction term by the side of the
    mid-circle its pole lies on: poles inside go to the principal part
    (holomorphic outside the inner circle, vanishing at infinity), poles
    outside together with the polynomial part go to the regular part
    (holomorphic inside the outer circle).  This is the decomposition the
    mid-circle contour sums would produce, computed exactly; recomposition
    reproduces f up to rounding.
    """
    if isinstance(f, ConstantInfinity):
        raise ValidationError("the constant-infinity function has no Laurent split")
    mid = annulus.mid_radius
    tol = 1e-12 * max(1.0, annulus.r_outer)
    for p, _m in poles_of(f):
        if abs(abs(p - annulus.center) - mid) <= tol:
            raise PoleSampleError(
                f"pole at {p} sits on the mid-circle used for the split"
            )
    pf = to_partial_fractions(f)
    inner = [t for t in pf.poles if abs(t.p - annulus.center) < mid]
    outer = [t for t in pf.poles if abs(t.p - annulus.center) > mid]
    regular = PartialFractions(pf.poly_part, outer)
    if not regular.poles:
        regular = Polynomial(regular.poly_part)
    principal = _principal_spec(annulus.center, inner)
    return regular, principal


def _principal_spec(center: complex, terms):
    if not terms:
        return _zero_spec()
    if all(t.p == center for t in terms):
        if center == 0:
            return LaurentPoly({-t.m: t.c for t in terms})
        return PoleRational(center, _pole_terms_to_q(terms))
    return PartialFractions((), terms)


def _pole_terms_to_q(terms) -> tuple:
    top = max(t.m for t in terms)
    q = [0j] * (top + 1)
    for t in terms:
        q[t.m] += t.c
    return tuple(q)


def validate_polynomial_target(f, annulus: ClosedAnnulus) -> MembershipReport:
    """Gate for polynomial approximation targets on an annulus.

    Accepts targets that extend to the closed outer disc (poles only on or
    beyond the outer circle, or the constant-infinity function); rejects
    inner-circle poles with the reason that no uniform polynomial limit can
    take the value infinity there short of being identically infinite.
    """
    return classify_membership(f, annulus, polynomial_limit=True)


def approximate_laurent(
    f, annulus: ClosedAnnulus, eps: float, grid: GridSpec | None = None
) -> ApproxResult:
    """Laurent-polynomial chordal approximation on a closed annulus.

    Splits the target, approximates the regular part on the outer disc by
    the dilation pipeline and the principal part through the inversion
    v = r_inner/(z - center) (chordal errors transport unchanged), then
    combines and verifies on a finer grid.  If the combined verification
    misses, both part tolerances are halved and the construction retried.
    """
    if not 0 < eps < 1:
        raise ValidationError(f"eps must lie in (0, 1), got {eps}")
    if grid is None:
        grid = GridSpec.default_for(annulus)
    vgrid = verification_grid(grid)

    if isinstance(f, ConstantInfinity):
        level = infinity_level(eps)
        q = LaurentPoly({0: level})
        est = sup_chordal(f, q, annulus, vgrid)
        return ApproxResult(
            q, eps, est, None, 0, f"constant-infinity target; constant {level}"
        )

    report = classify_membership(f, annulus)
    if not report.member:
        raise MembershipError(report.reason, report)
    regular, principal = laurent_decompose(f, annulus)

    budget = eps / 2 if not (_is_zero(regular) or _is_zero(principal)) else eps
    for _round in range(3):
        parts = []
        degree = 0
        dil = None
        if not _is_zero(regular):
            reg_res = approximate_on_disc(
                regular, ClosedDisc(annulus.center, annulus.r_outer), budget, grid
            )
            parts.append(reg_res.approximant)
            degree = max(degree, reg_res.degree_N)
            dil = reg_res.dilation_r
        if not _is_zero(principal):
            prin_res = _approximate_principal(principal, annulus, budget, grid)
            parts.append(prin_res.approximant)
            degree = max(degree, prin_res.degree_N)
            dil = prin_res.dilation_r if dil is None else dil
        combined = _combine_parts(parts, annulus.center)
        est = sup_chordal(f, combined, annulus, vgrid)
        if est.value < eps:
            return ApproxResult(
                combined,
                eps,
                est,
                dil,
                degree,
                f"split on the mid-circle |z - {annulus.center}| = "
                f"{annulus.mid_radius}; part tolerance {budget}",
            )
        budget /= 2
    raise ApproximationError(
        "combined Laurent approximant failed verification after tightening"
    )


def _approximate_principal(
    principal, annulus: ClosedAnnulus, eps: float, grid: GridSpec
) -> ApproxResult:
    """Approximate the inner part through the unit-disc reduction."""
    h = mobius_compose(principal, annulus.center, annulus.r_inner, 1, 0)
    inner = approximate_poly(h, eps, grid)
    coeffs = inner.approximant.coeffs
    scaled = [c * annulus.r_inner**j for j, c in enumerate(coeffs)]
    if annulus.center == 0:
        back = LaurentPoly({-j: c for j, c in enumerate(scaled)})
    else:
        back = PoleRational(annulus.center, scaled)
    return replace(inner, approximant=back, notes="principal part via inversion")


def _combine_parts(parts, center: complex):
    if not parts:
        return _zero_spec()
    if len(parts) == 1:
        return parts[0]
    reg, prin = parts
    if center == 0 and isinstance(reg, Polynomial) and isinstance(prin, LaurentPoly):
        coeffs = dict(prin.terms)
        for j, c in enumerate(reg.coeffs):
            coeffs[j] = coeffs.get(j, 0j) + c
        return LaurentPoly(coeffs)
    return Sum(tuple(parts))


def _poles_on_annulus(f, annulus: ClosedAnnulus):
    tol = _BOUNDARY_RTOL * max(1.0, annulus.r_outer)
    out = []
    for p, _m in poles_of(f):
        d = abs(p - annulus.center)
        if annulus.r_inner - tol <= d <= annulus.r_outer + tol:
            out.append((p, d))
    return out, tol


def chordal_sum_combine(
    f,
    f_result: ApproxResult,
    g,
    g_result: ApproxResult,
    annulus: ClosedAnnulus,
    grid: GridSpec | None = None,
) -> SupEstimate:
    """Grid error of (f_approx + g_approx) against (f + g) on the annulus.

    Requires the two targets' infinite sets on the annulus to sit on
    opposite boundary circles (f on the outer, g on the inner), so the sum
    is well defined.  The measured sup is asserted to stay below the sum of
    the two target tolerances plus a fixed slack of 0.1; additivity of the
    chordal error has no general rate, so the slack is an engineering
    margin, not a theorem constant.
    """
    if grid is None:
        grid = GridSpec.default_for(annulus)
    f_poles, tol = _poles_on_annulus(f, annulus)
    g_poles, _ = _poles_on_annulus(g, annulus)
    bad_f = [p for p, d in f_poles if abs(d - annulus.r_outer) > tol]
    bad_g = [p for p, d in g_poles if abs(d - annulus.r_inner) > tol]
    if bad_f:
        raise ValidationError(
            f"first target has annulus poles off the outer circle: {bad_f}"
        )
    if bad_g:
        raise ValidationError(
            f"second target has annulus poles off the inner circle: {bad_g}"
        )
    est = sup_chordal(
        Sum((f, g)),
        Sum((f_result.approximant, g_result.approximant)),
        annulus,
        verification_grid(grid),
    )
    bound = f_result.target_eps + g_result.target_eps + COMBINE_SLACK
    if not est.value < bound:
        raise ApproximationError(
            f"combined error {est.value:.6g} exceeds the additive bound {bound}"
        )
    return est
