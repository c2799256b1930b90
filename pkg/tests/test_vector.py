import pytest
from hypothesis import given
from hypothesis import strategies as st

from parikh import MonomialError, Vec, format_monomial, parse_monomial

entries = st.dictionaries(st.sampled_from("abcxyz"), st.integers(-9, 9), max_size=4)


def test_zero_entries_dropped():
    assert Vec({"a": 0, "b": 2}) == Vec({"b": 2})
    assert Vec({"a": 1}) - Vec({"a": 1}) == Vec.zero()
    assert not Vec.zero()


def test_arithmetic_basics():
    v = Vec({"a": 2, "b": -1})
    w = Vec({"a": 1, "c": 3})
    assert (v + w).to_dict() == {"a": 3, "b": -1, "c": 3}
    assert (v - w).to_dict() == {"a": 1, "b": -1, "c": -3}
    assert (-v).to_dict() == {"a": -2, "b": 1}
    assert (v * 3).to_dict() == {"a": 6, "b": -3}
    assert v.norm1() == 3
    assert v.norm_inf() == 2


def test_componentwise_order():
    assert Vec({"a": 1}) <= Vec({"a": 2, "b": 1})
    assert not Vec({"a": 1, "c": 1}) <= Vec({"a": 2})
    assert Vec({"a": -2}) <= Vec.zero()


def test_monomial_round_trip_examples():
    assert parse_monomial("a^3 b^-2").to_dict() == {"a": 3, "b": -2}
    assert parse_monomial("") == Vec.zero()
    assert parse_monomial("1") == Vec.zero()
    assert parse_monomial("a a") == Vec({"a": 2})
    assert format_monomial(Vec.zero()) == "1"
    assert format_monomial(Vec({"a": 2, "b": -1}), ["b", "a"]) == "b^-1 a^2"


def test_monomial_errors():
    with pytest.raises(MonomialError):
        parse_monomial("a^x")
    with pytest.raises(MonomialError):
        parse_monomial("3a")


@given(entries, entries)
def test_addition_matches_dicts(d1, d2):
    v, w = Vec(d1), Vec(d2)
    expected = {s: d1.get(s, 0) + d2.get(s, 0) for s in set(d1) | set(d2)}
    assert (v + w).to_dict() == {s: c for s, c in expected.items() if c}


@given(entries)
def test_monomial_round_trip(d):
    v = Vec(d)
    assert parse_monomial(format_monomial(v)) == v


@given(entries)
def test_tuple_round_trip(d):
    v = Vec(d)
    order = sorted(set(d) | {"z"})
    assert Vec.from_tuple(v.to_tuple(order), order) == v.restrict(order)
