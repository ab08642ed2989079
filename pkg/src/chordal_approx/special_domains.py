"""Chordal polynomial approximation on starlike compacts, arcs and unions.

These are the desk-scale cases beyond disc and circle.  The general compact
case has no constructive classical recipe, so two honest surrogates carry
the polynomial step: a truncated geometric expansion about a centroid when
every (dilated) pole is far enough away, and a verified least-squares fit on
boundary samples otherwise.  Every result is gated by an independent grid
verification; the fit is never trusted untested.
"""

import math

import numpy as np

from .disc import (
    DEGREE_CAP,
    ApproxResult,
    _tail_degree,
    infinity_level,
    max_abs_on_circle,
)
from .errors import (
    AllSamplesExceedError,
    ApproximationError,
    DegreeCapError,
    DilationSearchError,
    MembershipError,
    ValidationError,
)
from .funcspec import (
    Arc,
    Circle,
    ClosedAnnulus,
    ClosedDisc,
    ConstantInfinity,
    DisjointUnion,
    Polynomial,
    StarlikeCompact,
    _affine_compose,
    dilate,
    evaluate_array,
    poles_of,
    taylor_coeffs,
)
from .sphere import ExtendedComplex, chi_array, exterior_threshold
from .supmetric import (
    GridSpec,
    SupEstimate,
    chi_on_points,
    domain_grid_points,
    sup_chordal,
    verification_grid,
)

__all__ = [
    "approximate_on_starlike",
    "approximate_on_arc",
    "approximate_on_disjoint_union",
    "ridge_polyfit",
]

_R_SCHEDULE_STEPS = 20

# Strict-margin version of the centroid condition max|z - c| < |p - c|:
# keeps the geometric tail ratio bounded away from 1.
_CENTROID_MARGIN = 0.99

_RIDGE = 1e-12


def ridge_polyfit(points, values, degree: int, weights=None) -> tuple:
    """Least-squares polynomial fit via column-scaled normal equations.

    A ridge of 1e-12 on the scaled normal matrix tames the Vandermonde
    conditioning at the degrees used here.  Returns ascending coefficients.
    """
    z = np.asarray(points, complex)
    v = np.asarray(values, complex)
    a = np.vander(z, degree + 1, increasing=True)
    scale = np.abs(a).max(axis=0)
    scale[scale == 0] = 1.0
    a = a / scale
    if weights is not None:
        w = np.sqrt(np.asarray(weights, float))
        a = a * w[:, None]
        v = v * w
    gram = a.conj().T @ a + _RIDGE * np.eye(degree + 1)
    rhs = a.conj().T @ v
    try:
        coeffs = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError as exc:
        raise ApproximationError(f"normal equations unsolvable: {exc}") from None
    return tuple(coeffs / scale)


def _boundary_points(domain, n: int) -> np.ndarray:
    th = np.exp(2j * math.pi * np.arange(n) / n)
    if isinstance(domain, ClosedDisc):
        return domain.center + domain.radius * th
    if isinstance(domain, Circle):
        return domain.center + domain.radius * th
    if isinstance(domain, ClosedAnnulus):
        return np.concatenate(
            [domain.center + domain.r_inner * th, domain.center + domain.r_outer * th]
        )
    if isinstance(domain, StarlikeCompact):
        ang = 2 * math.pi * np.arange(n) / n
        return domain.center + domain.rho_array(ang) * np.exp(1j * ang)
    if isinstance(domain, Arc):
        factor = max(1, round(n / max(len(domain.points) - 1, 1)))
        return np.asarray(domain.resampled_points(factor))
    raise ValidationError(f"no boundary sampler for {type(domain).__name__}")


def _pole_inside_starlike(L: StarlikeCompact, p: complex) -> bool:
    v = p - L.center
    dist = abs(v)
    if dist == 0:
        return True
    rho = L.rho(math.atan2(v.imag, v.real))
    return dist < rho * (1 - 1e-9)


def approximate_on_starlike(
    L: StarlikeCompact, f, eps: float, grid: GridSpec | None = None
) -> ApproxResult:
    """Polynomial chordal approximation on a compact starlike about a point.

    Dilates the target toward the star center until the chordal drift is
    below eps/2 (the dilation pushes boundary poles strictly outside L),
    then approximates the dilated function by a polynomial: a truncated
    expansion about the centroid of L when every pole keeps the geometric
    ratio under 0.99, otherwise a verified least-squares fit on boundary
    samples.  The result is re-verified against the original target on a
    finer grid.
    """
    if not 0 < eps < 1:
        raise ValidationError(f"eps must lie in (0, 1), got {eps}")
    if grid is None:
        grid = GridSpec.default_for(L)
    vgrid = verification_grid(grid)

    if isinstance(f, ConstantInfinity):
        level = infinity_level(eps)
        q = Polynomial.constant(level)
        est = sup_chordal(f, q, L, vgrid)
        return ApproxResult(q, eps, est, None, 0, f"constant level {level}")

    inside = [p for p, _ in poles_of(f) if _pole_inside_starlike(L, p)]
    if inside:
        raise MembershipError(
            f"pole(s) at {inside} lie inside the starlike compact"
        )

    grid_pts = domain_grid_points(L, grid)
    centroid = complex(grid_pts.mean())
    boundary = _boundary_points(L, 4 * grid.angular_count)
    r_l = float(np.abs(np.concatenate([grid_pts, boundary]) - centroid).max())

    started = False
    for k in range(1, _R_SCHEDULE_STEPS + 1):
        r = 1.0 - 2.0**-k
        fr = dilate(f, r, L.center)
        if sup_chordal(f, fr, L, grid).value >= eps / 2:
            continue
        started = True
        fr_poles = [p for p, _ in poles_of(fr)]
        d_min = min((abs(p - centroid) for p in fr_poles), default=math.inf)
        try:
            if r_l <= _CENTROID_MARGIN * d_min:
                poly, n, path = _geometric_expansion(fr, centroid, r_l, d_min, eps)
            else:
                poly, n, path = _boundary_fit(fr, boundary, eps)
        except DegreeCapError:
            continue
        est = sup_chordal(f, poly, L, vgrid)
        if est.value < eps:
            return ApproxResult(poly, eps, est, r, n, path)
    if not started:
        raise DilationSearchError(
            "no dilation radius in the schedule passed the eps/2 check"
        )
    raise ApproximationError(
        "starlike construction failed verification across the schedule"
    )


def _geometric_expansion(fr, centroid, r_l, d_min, eps):
    if math.isinf(d_min):
        coeffs = taylor_coeffs(fr, centroid, max(_poly_degree(fr) + 1, 1))
        n = len(coeffs) - 1
    else:
        rho = 0.5 * (r_l + d_min)
        bound_m = max_abs_on_circle(fr, centroid, rho)
        n = _tail_degree(bound_m, r_l / rho, eps / 2)
        coeffs = taylor_coeffs(fr, centroid, n + 1)
    poly = Polynomial(_affine_compose(coeffs, 1.0, -centroid))
    return poly, n, f"geometric expansion about centroid {centroid:.6g}"


def _poly_degree(fr) -> int:
    return fr.degree if isinstance(fr, Polynomial) else 0


def _boundary_fit(fr, boundary, eps):
    vals, inf = evaluate_array(fr, boundary)
    if inf.any():
        raise ApproximationError("dilated target is not finite on the boundary")
    weights = 1.0 / (1.0 + np.abs(vals) ** 2)
    degree = 4
    while degree <= DEGREE_CAP:
        coeffs = ridge_polyfit(boundary, vals, degree, weights)
        pv = np.zeros(len(boundary), complex)
        for c in reversed(coeffs):
            pv = pv * boundary + c
        err = chi_array(vals, inf, pv, np.zeros(len(boundary), bool)).max()
        if err < eps / 2:
            return (
                Polynomial(coeffs),
                degree,
                f"boundary least-squares fit, degree {degree}",
            )
        degree *= 2
    raise DegreeCapError(
        f"boundary fit did not reach eps/2 = {eps / 2} within the degree cap",
        cap=DEGREE_CAP,
    )


# --- arcs ------------------------------------------------------------------


def _as_masked_values(values):
    vals = []
    for v in values:
        if isinstance(v, ExtendedComplex):
            vals.append(v)
        elif v is None:
            vals.append(ExtendedComplex.infinity())
        else:
            vals.append(ExtendedComplex.finite(v))
    arr = np.array([0j if v.is_infinity else v.value for v in vals], complex)
    inf = np.array([v.is_infinity for v in vals], bool)
    return arr, inf


def _clip_on_arc(arr, inf, m_threshold):
    """Arc analogue of the circle clip; runs at the ends are one-sided."""
    over = inf | (np.abs(arr) > m_threshold)
    if not over.any():
        return arr.copy()
    if over.all():
        raise AllSamplesExceedError("all arc samples exceed the clip threshold")
    out = arr.copy()
    n = len(arr)
    i = 0
    while i < n:
        if not over[i]:
            i += 1
            continue
        j = i
        while j < n and over[j]:
            j += 1
        entry = arr[i - 1] if i > 0 else arr[j]
        exit_ = arr[j] if j < n else arr[i - 1]
        phi_in = float(np.angle(entry)) if entry != 0 else 0.0
        phi_out = float(np.angle(exit_)) if exit_ != 0 else 0.0
        d = (phi_out - phi_in + math.pi) % (2 * math.pi) - math.pi
        if d == -math.pi:
            d = math.pi
        for t in range(i, j):
            lam = (t - i + 1) / (j - i + 1)
            out[t] = m_threshold * np.exp(1j * (phi_in + d * lam))
        i = j
    return out


def _eval_target(symbolic, pts):
    if callable(symbolic) and not hasattr(symbolic, "__dataclass_fields__"):
        vs = []
        ms = []
        for z in pts:
            v = symbolic(z)
            v = v if isinstance(v, ExtendedComplex) else ExtendedComplex.finite(v)
            vs.append(0j if v.is_infinity else v.value)
            ms.append(v.is_infinity)
        return np.array(vs, complex), np.array(ms, bool)
    return evaluate_array(symbolic, np.asarray(pts, complex))


def approximate_on_arc(
    arc: Arc, values, eps: float, symbolic=None, grid: GridSpec | None = None
) -> ApproxResult:
    """Polynomial chordal approximation of sphere-valued samples on an arc.

    Over-threshold runs are bridged along the circle |w| = M exactly as on
    the unit circle, then a least-squares polynomial fit (chordally weighted
    and chordally accepted) is escalated in degree until the sample error
    drops below eps/2.  When a symbolic target is available the result is
    verified on a four-fold resampling of the arc.
    """
    if not 0 < eps < 1:
        raise ValidationError(f"eps must lie in (0, 1), got {eps}")
    pts = np.asarray(arc.points, complex)
    arr, inf = _as_masked_values(values)
    if len(arr) != len(pts):
        raise ValidationError(
            f"got {len(arr)} values for {len(pts)} arc points"
        )
    adjacent = chi_array(arr[:-1], inf[:-1], arr[1:], inf[1:])
    if adjacent.max() > 0.5:
        raise ValidationError(
            "adjacent arc samples differ chordally by more than 0.5"
        )

    if inf.all():
        return _arc_constant_result(arc, arr, inf, infinity_level(eps), eps, symbolic, grid)
    m_threshold = exterior_threshold(eps / 2)
    try:
        g = _clip_on_arc(arr, inf, m_threshold)
    except AllSamplesExceedError:
        return _arc_constant_result(
            arc, arr, inf, infinity_level(eps / 2), eps, symbolic, grid
        )

    weights = 1.0 / (1.0 + np.abs(g) ** 2)
    degree = 2
    poly = None
    while degree <= min(DEGREE_CAP, len(pts) - 1):
        coeffs = ridge_polyfit(pts, g, degree, weights)
        pv = _horner_points(coeffs, pts)
        err = chi_array(g, np.zeros(len(g), bool), pv, np.zeros(len(g), bool)).max()
        if err < eps / 2:
            poly = Polynomial(coeffs)
            break
        degree *= 2
    if poly is None:
        raise DegreeCapError(
            f"arc fit did not reach eps/2 = {eps / 2} within the degree cap",
            cap=DEGREE_CAP,
        )
    est = _arc_estimate(arc, arr, inf, poly, symbolic, grid)
    if not est.value < eps:
        raise ApproximationError(
            f"arc verification failed: {est.value:.6g} >= {eps}"
        )
    return ApproxResult(
        poly,
        eps,
        est,
        None,
        degree,
        f"clipped at M = {m_threshold:.6g}, fit degree {degree}",
    )


def _horner_points(coeffs, pts):
    pv = np.zeros(len(pts), complex)
    for c in reversed(coeffs):
        pv = pv * pts + c
    return pv


def _arc_constant_result(arc, arr, inf, level, eps, symbolic, grid):
    poly = Polynomial.constant(level)
    est = _arc_estimate(arc, arr, inf, poly, symbolic, grid)
    return ApproxResult(poly, eps, est, None, 0, f"constant level {level}")


def _arc_estimate(arc, arr, inf, poly, symbolic, grid) -> SupEstimate:
    base = GridSpec.default_for(arc) if grid is None else grid
    if symbolic is None:
        pts = np.asarray(arc.points, complex)
        pv = _horner_points(poly.coeffs, pts)
        chis = chi_array(arr, inf, pv, np.zeros(len(pts), bool))
        idx = int(np.argmax(chis))
        return SupEstimate(float(min(chis[idx], 1.0)), complex(pts[idx]), base, True)
    fine = np.asarray(arc.resampled_points(base.refinement_factor), complex)
    fv, fm = _eval_target(symbolic, fine)
    pv = _horner_points(poly.coeffs, fine)
    chis = chi_array(fv, fm, pv, np.zeros(len(fine), bool))
    idx = int(np.argmax(chis))
    return SupEstimate(
        float(min(chis[idx], 1.0)), complex(fine[idx]), verification_grid(base), True
    )


# --- disjoint unions --------------------------------------------------------


def approximate_on_disjoint_union(
    parts, eps: float, grid: GridSpec | None = None
) -> ApproxResult:
    """One polynomial chordally close to several per-part approximants.

    ``parts`` is a sequence of (domain, ApproxResult) pairs on pairwise
    disjoint compacts, each already verified to eps/2.  A single polynomial
    is fitted to the piecewise data on the union of boundary samples with
    escalating degree until it tracks every part approximant within eps/2 in
    the Euclidean metric; the chordal triangle inequality then gives a total
    error below eps, re-checked on every part's verification grid.
    """
    if not 0 < eps < 1:
        raise ValidationError(f"eps must lie in (0, 1), got {eps}")
    parts = list(parts)
    if not parts:
        raise ValidationError("need at least one part")
    if len(parts) == 1:
        return parts[0][1]
    domains = [d for d, _ in parts]
    union = DisjointUnion(tuple(domains))  # raises on overlap
    separation = _min_separation(domains)
    for _d, res in parts:
        if not res.achieved_error.value < eps / 2:
            raise ValidationError(
                "every part approximant must already be verified to eps/2; "
                f"got {res.achieved_error.value}"
            )
    if grid is None:
        grid = GridSpec.default_for(union)
    vgrid = verification_grid(grid)

    boundary = []
    target = []
    for d, res in parts:
        b = _boundary_points(d, 256)
        pv, _ = evaluate_array(res.approximant, b)
        boundary.append(b)
        target.append(pv)
    boundary = np.concatenate(boundary)
    target = np.concatenate(target)

    degree = 4
    while degree <= DEGREE_CAP:
        coeffs = ridge_polyfit(boundary, target, degree)
        poly = Polynomial(coeffs)
        fit_ok = True
        worst = 0.0
        worst_pt = complex(boundary[0])
        for d, res in parts:
            gpts = domain_grid_points(d, vgrid)
            pv = _horner_points(coeffs, gpts)
            rv, _ = evaluate_array(res.approximant, gpts)
            diff = np.abs(pv - rv)
            idx = int(np.argmax(diff))
            if diff[idx] >= eps / 2:
                fit_ok = False
                break
            part_chi = chi_on_points(res.approximant, poly, gpts).max()
            bound = res.achieved_error.value + float(part_chi)
            if bound > worst:
                worst = bound
                worst_pt = complex(gpts[idx])
        if fit_ok and worst < eps:
            est = SupEstimate(min(worst, 1.0), worst_pt, vgrid, True)
            return ApproxResult(
                poly,
                eps,
                est,
                None,
                degree,
                f"union fit over {len(parts)} parts, separation {separation:.6g}; "
                "error is the triangle bound per-part achieved + fit distance",
            )
        degree *= 2
    raise DegreeCapError(
        "union fit did not reach eps/2 within the degree cap; minimum part "
        f"separation {separation:.6g} governs the difficulty",
        cap=DEGREE_CAP,
        separation=separation,
    )


def _min_separation(domains) -> float:
    from .funcspec import _domain_probe_points

    best = math.inf
    clouds = [np.asarray(_domain_probe_points(d)) for d in domains]
    for i in range(len(clouds)):
        for j in range(i + 1, len(clouds)):
            d = np.abs(clouds[i][:, None] - clouds[j][None, :]).min()
            best = min(best, float(d))
    return best
