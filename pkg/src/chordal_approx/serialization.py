"""JSON encoding of function specs, domains, grids and results.

Schema conventions (version field "v": 1 on documents): complex numbers are
[re, im] pairs, the point at infinity is the string "inf", circle samples
are arrays mixing pairs and "inf".  Encoding is canonical (sorted keys,
fixed separators) so identical inputs serialize byte-identically.
"""

import json

from .errors import ValidationError
from .funcspec import (
    Arc,
    Circle,
    ClosedAnnulus,
    ClosedDisc,
    ConstantInfinity,
    DisjointUnion,
    LaurentPoly,
    PartialFractions,
    PoleRational,
    PoleTerm,
    Polynomial,
    StarlikeCompact,
    Sum,
)
from .sphere import INFINITY, ExtendedComplex
from .supmetric import GridSpec, SupEstimate

SCHEMA_VERSION = 1

__all__ = [
    "SCHEMA_VERSION",
    "encode_complex",
    "decode_complex",
    "encode_function",
    "decode_function",
    "encode_domain",
    "decode_domain",
    "encode_grid",
    "decode_grid",
    "encode_samples",
    "decode_samples",
    "encode_estimate",
    "dumps",
]


def encode_complex(z: complex) -> list:
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(v) -> complex:
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise ValidationError(f"expected [re, im] pair, got {v!r}")
    return complex(float(v[0]), float(v[1]))


def encode_point(p: ExtendedComplex):
    return "inf" if p.is_infinity else encode_complex(p.value)


def decode_point(v) -> ExtendedComplex:
    if v == "inf":
        return INFINITY
    return ExtendedComplex.finite(decode_complex(v))


def encode_function(f) -> dict:
    if isinstance(f, Polynomial):
        return {"polynomial": {"coeffs": [encode_complex(c) for c in f.coeffs]}}
    if isinstance(f, LaurentPoly):
        return {
            "laurent_poly": {
                "coeffs": {str(n): encode_complex(c) for n, c in f.terms}
            }
        }
    if isinstance(f, PoleRational):
        return {
            "pole_rational": {
                "w": encode_complex(f.w),
                "q": [encode_complex(c) for c in f.q_coeffs],
            }
        }
    if isinstance(f, PartialFractions):
        return {
            "partial_fractions": {
                "poly": [encode_complex(c) for c in f.poly_part],
                "poles": [
                    {"p": encode_complex(t.p), "m": t.m, "c": encode_complex(t.c)}
                    for t in f.poles
                ],
            }
        }
    if isinstance(f, ConstantInfinity):
        return {"constant_infinity": True}
    if isinstance(f, Sum):
        return {"sum": {"terms": [encode_function(t) for t in f.terms]}}
    raise ValidationError(f"cannot encode function spec {type(f).__name__}")


def decode_function(d):
    if not isinstance(d, dict) or len(d) != 1:
        raise ValidationError(f"expected a single-key function object, got {d!r}")
    (kind, body), = d.items()
    if kind == "polynomial":
        return Polynomial([decode_complex(c) for c in body["coeffs"]])
    if kind == "laurent_poly":
        return LaurentPoly(
            {int(n): decode_complex(c) for n, c in body["coeffs"].items()}
        )
    if kind == "pole_rational":
        return PoleRational(
            decode_complex(body["w"]), [decode_complex(c) for c in body["q"]]
        )
    if kind == "partial_fractions":
        return PartialFractions(
            [decode_complex(c) for c in body.get("poly", [])],
            [
                PoleTerm(decode_complex(t["p"]), int(t["m"]), decode_complex(t["c"]))
                for t in body.get("poles", [])
            ],
        )
    if kind == "constant_infinity":
        return ConstantInfinity()
    if kind == "sum":
        return Sum(tuple(decode_function(t) for t in body["terms"]))
    raise ValidationError(f"unknown function kind {kind!r}")


def encode_domain(d) -> dict:
    if isinstance(d, ClosedDisc):
        return {"closed_disc": {"center": encode_complex(d.center), "radius": d.radius}}
    if isinstance(d, Circle):
        return {"circle": {"center": encode_complex(d.center), "radius": d.radius}}
    if isinstance(d, ClosedAnnulus):
        return {
            "closed_annulus": {
                "center": encode_complex(d.center),
                "r_inner": d.r_inner,
                "r_outer": d.r_outer,
            }
        }
    if isinstance(d, StarlikeCompact):
        return {
            "starlike": {"center": encode_complex(d.center), "radii": list(d.radii)}
        }
    if isinstance(d, Arc):
        return {"arc": {"points": [encode_complex(p) for p in d.points]}}
    if isinstance(d, DisjointUnion):
        return {"disjoint_union": {"parts": [encode_domain(p) for p in d.parts]}}
    raise ValidationError(f"cannot encode domain {type(d).__name__}")


def decode_domain(d):
    if not isinstance(d, dict) or len(d) != 1:
        raise ValidationError(f"expected a single-key domain object, got {d!r}")
    (kind, body), = d.items()
    if kind == "closed_disc":
        return ClosedDisc(decode_complex(body["center"]), float(body["radius"]))
    if kind == "circle":
        return Circle(decode_complex(body["center"]), float(body["radius"]))
    if kind == "closed_annulus":
        return ClosedAnnulus(
            decode_complex(body["center"]),
            float(body["r_inner"]),
            float(body["r_outer"]),
        )
    if kind == "starlike":
        return StarlikeCompact(
            decode_complex(body["center"]), [float(r) for r in body["radii"]]
        )
    if kind == "arc":
        return Arc([decode_complex(p) for p in body["points"]])
    if kind == "disjoint_union":
        return DisjointUnion(tuple(decode_domain(p) for p in body["parts"]))
    raise ValidationError(f"unknown domain kind {kind!r}")


def encode_grid(g: GridSpec) -> dict:
    return {
        "radial": g.radial_count,
        "angular": g.angular_count,
        "refinement_factor": g.refinement_factor,
        "max_refinements": g.max_refinements,
    }


def decode_grid(d) -> GridSpec:
    return GridSpec(
        radial_count=int(d.get("radial", 64)),
        angular_count=int(d.get("angular", 256)),
        refinement_factor=int(d.get("refinement_factor", 4)),
        max_refinements=int(d.get("max_refinements", 2)),
    )


def encode_samples(samples) -> list:
    return [encode_point(v) for v in samples.values]


def decode_samples(items):
    from .circle import CircleSamples

    return CircleSamples([decode_point(v) for v in items])


def encode_estimate(est: SupEstimate) -> dict:
    return {
        "value": est.value,
        "argmax": encode_complex(est.argmax_point),
        "stable": est.stable,
        "grid": encode_grid(est.grid_used),
    }


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=2) + "\n"
