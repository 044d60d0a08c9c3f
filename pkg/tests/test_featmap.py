import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from onlinelearn.featmap import FeatureVector, dot, vadd, vdiv, vmul, vpow, vsub

FV = FeatureVector


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ({"a": 1, "b": 2}, {"b": 3, "c": 4}, {"a": 1, "b": 5, "c": 4}),
        ({}, {"x": 7}, {"x": 7}),
        ({"x": 1.5}, {"x": -1.5}, {"x": 0.0}),
    ],
)
def test_vadd_examples(a, b, expected):
    assert vadd(FV(a), FV(b)) == expected
    assert FV(a) + FV(b) == expected


def test_cancellation_keeps_explicit_zero():
    out = FV(x=1.5) + FV(x=-1.5)
    assert "x" in out and out["x"] == 0.0


def test_vsub_union():
    assert vsub(FV(a=1), FV(b=2)) == {"a": 1, "b": -2}


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ({"a": 2, "b": 3}, {"b": 4, "c": 5}, {"b": 12}),
        ({"a": 2}, {}, {}),
    ],
)
def test_vmul_examples(a, b, expected):
    assert vmul(FV(a), FV(b)) == expected


def test_vdiv():
    assert vdiv(FV(a=2, b=3), FV(a=4, b=3)) == {"a": 0.5, "b": 1.0}
    with pytest.raises(ZeroDivisionError, match="'a'"):
        vdiv(FV(a=1), FV(a=0))


@pytest.mark.parametrize(
    "a, p, expected",
    [({"a": 3, "b": -2}, 2, {"a": 9, "b": 4}), ({"a": 5}, 0, {"a": 1}), ({"a": 4}, 0.5, {"a": 2})],
)
def test_vpow_examples(a, p, expected):
    assert vpow(FV(a), p) == expected
    assert FV(a) ** p == expected


def test_vpow_domain_error():
    with pytest.raises(ValueError, match="negative base"):
        vpow(FV(a=-4), 0.5)


def test_dot_examples():
    assert dot(FV(a=1, b=2), FV(b=3, c=4)) == 6
    assert dot(FV(), FV(x=9)) == 0
    a, b = {"a": 1, "b": 2, "c": 3}, {"a": 4, "b": 5, "c": 6}
    oracle = sum(a[k] * b[k] for k in a for j in b if k == j)
    assert dot(FV(a), FV(b)) == oracle == 32
    assert FV(a) @ FV(b) == 32


@pytest.mark.parametrize("op", [vadd, vsub, vmul, vdiv, dot])
def test_categorical_rejected_by_algebra(op):
    with pytest.raises(TypeError, match="'color'"):
        op(FV(color="red", a=1), FV(a=1, color="blue"))


def test_categorical_storage_allowed():
    x = FV(color="red", size=3.0)
    assert x["color"] == "red"


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_rejected(bad):
    with pytest.raises(ValueError):
        FV(a=bad)


def test_names_must_be_nonempty_strings():
    with pytest.raises(TypeError):
        FV({"": 1.0})
    with pytest.raises(TypeError):
        FV({3: 1.0})


def test_duplicate_insert_replaces():
    x = FV(a=1).with_entry("a", 2)
    assert x == {"a": 2} and len(x) == 1


def test_case_sensitive_names():
    assert dot(FV(A=1), FV(a=1)) == 0


def test_immutable():
    x = FV(a=1)
    with pytest.raises(TypeError):
        x["a"] = 2  # type: ignore[index]


names = st.sampled_from(list("abcdefgh"))
ints = st.dictionaries(names, st.integers(-1000, 1000))
reals = st.dictionaries(names, st.floats(-10, 10, allow_nan=False))


@given(ints, ints, ints)
def test_vadd_commutative_associative_integers(a, b, c):
    a, b, c = FV(a), FV(b), FV(c)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)


@given(reals, reals, reals)
def test_vadd_associative_reals(a, b, c):
    a, b, c = FV(a), FV(b), FV(c)
    left, right = (a + b) + c, a + (b + c)
    assert left.keys() == right.keys()
    for k in left:
        assert left[k] == pytest.approx(right[k], abs=1e-12)


@given(reals, reals)
def test_dot_symmetric(a, b):
    assert dot(FV(a), FV(b)) == dot(FV(b), FV(a))


@given(reals, reals, reals)
def test_dot_distributes_over_vadd(a, b, c):
    a, b, c = FV(a), FV(b), FV(c)
    assert dot(a, b + c) == pytest.approx(dot(a, b) + dot(a, c), abs=1e-9)


def _dense(*vs):
    keys = sorted(set().union(*vs))
    return keys, [[v.get(k, 0.0) for k in keys] for v in vs]


@given(reals, reals)
def test_matches_dense_oracle(a, b):
    keys, (da, db) = _dense(a, b)
    fa, fb = FV(a), FV(b)
    s = fa + fb
    d = fa - fb
    m = fa * fb
    for i, k in enumerate(keys):
        assert s.get(k, 0.0) == da[i] + db[i]
        assert d.get(k, 0.0) == da[i] - db[i]
        assert m.get(k, 0.0) == da[i] * db[i]
    assert dot(fa, fb) == pytest.approx(sum(x * y for x, y in zip(da, db)), abs=1e-9)
    sq = fa**2
    for k in a:
        assert sq[k] == a[k] ** 2
