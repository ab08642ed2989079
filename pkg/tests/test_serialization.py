"""JSON round-trips and canonical output."""

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chordal_approx import (
    INFINITY,
    Arc,
    Circle,
    ClosedAnnulus,
    ClosedDisc,
    ConstantInfinity,
    DisjointUnion,
    ExtendedComplex,
    LaurentPoly,
    PartialFractions,
    PoleRational,
    PoleTerm,
    Polynomial,
    StarlikeCompact,
    Sum,
    ValidationError,
)
from chordal_approx.circle import sample_circle
from chordal_approx.serialization import (
    decode_domain,
    decode_function,
    decode_samples,
    dumps,
    encode_domain,
    encode_function,
    encode_samples,
)

nice_float = st.floats(-100, 100, allow_nan=False).map(lambda x: round(x, 6))
nice_complex = st.builds(complex, nice_float, nice_float)


def poly_strategy():
    return st.lists(nice_complex, max_size=5).map(Polynomial)


def laurent_strategy():
    return st.dictionaries(st.integers(-6, 6), nice_complex, max_size=6).map(LaurentPoly)


def pole_rational_strategy():
    return st.builds(
        PoleRational,
        nice_complex.filter(lambda w: abs(w) > 0.1),
        st.lists(nice_complex, max_size=4),
    )


def partial_fractions_strategy():
    terms = st.lists(
        st.builds(
            PoleTerm,
            nice_complex,
            st.integers(1, 3),
            nice_complex,
        ),
        max_size=3,
    )
    return st.builds(PartialFractions, st.lists(nice_complex, max_size=3), terms)


function_strategy = st.one_of(
    poly_strategy(),
    laurent_strategy(),
    pole_rational_strategy(),
    partial_fractions_strategy(),
    st.just(ConstantInfinity()),
)


class TestFunctionRoundTrip:
    @given(function_strategy)
    def test_round_trip_identity(self, f):
        assert decode_function(json.loads(json.dumps(encode_function(f)))) == f

    @given(st.lists(function_strategy.filter(lambda f: not isinstance(f, ConstantInfinity)), max_size=3))
    def test_sum_round_trip(self, terms):
        f = Sum(tuple(terms))
        assert decode_function(encode_function(f)) == f

    def test_spec_example_shape(self):
        doc = {"pole_rational": {"w": [1, 0], "q": [[0, 0], [1, 0]]}}
        f = decode_function(doc)
        assert f == PoleRational(1.0, (0, 1))

    def test_decode_rejects_unknown_kind(self):
        with pytest.raises(ValidationError):
            decode_function({"mystery": {}})
        with pytest.raises(ValidationError):
            decode_function({"polynomial": {}, "sum": {}})


class TestDomainRoundTrip:
    @pytest.mark.parametrize(
        "d",
        [
            ClosedDisc(0.5j, 2.0),
            Circle(0, 1.0),
            ClosedAnnulus(1.0, 0.25, 0.75),
            StarlikeCompact(0j, [1.0] * 16),
            Arc([0, 1, 1 + 1j]),
            DisjointUnion((ClosedDisc(-2.0, 0.5), ClosedDisc(2.0, 0.5))),
        ],
    )
    def test_round_trip_identity(self, d):
        assert decode_domain(json.loads(json.dumps(encode_domain(d)))) == d

    def test_spec_example_shape(self):
        doc = {"closed_disc": {"center": [0, 0], "radius": 1}}
        assert decode_domain(doc) == ClosedDisc(0j, 1.0)


class TestSamples:
    def test_round_trip_with_infinities(self):
        s = sample_circle(PoleRational(1.0, (0, 1)), 64)
        encoded = encode_samples(s)
        assert encoded[0] == "inf"
        back = decode_samples(json.loads(json.dumps(encoded)))
        assert back.values == s.values

    def test_point_encoding(self):
        from chordal_approx.serialization import decode_point, encode_point

        assert encode_point(INFINITY) == "inf"
        assert decode_point("inf") == INFINITY
        assert decode_point(encode_point(ExtendedComplex.finite(1 - 2j))) == (
            ExtendedComplex.finite(1 - 2j)
        )


class TestCanonicalDumps:
    def test_sorted_and_stable(self):
        a = dumps({"b": 1, "a": [1.5, 2]})
        b = dumps({"a": [1.5, 2], "b": 1})
        assert a == b
        assert a.endswith("\n")
