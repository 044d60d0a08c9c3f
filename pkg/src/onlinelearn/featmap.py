"""Name-keyed sparse feature vectors.

A :class:`FeatureVector` maps feature names to values. Values are either finite
reals or categorical text tokens. Names absent from a vector are treated as
zero by the numeric algebra: addition and subtraction work over the union of
names, while products, quotients and the dot product only visit names present
in both operands.

>>> a = FeatureVector({"a": 1, "b": 2})
>>> b = FeatureVector({"b": 3, "c": 4})
>>> dict(a + b)
{'a': 1, 'b': 5, 'c': 4}
>>> a @ b
6.0
"""

from __future__ import annotations

import math
import numbers
from collections.abc import Iterator, Mapping
from typing import Union

__all__ = ["FeatureVector", "vadd", "vsub", "vmul", "vdiv", "vpow", "dot"]

Value = Union[float, int, str]


def _check_value(name, value) -> Value:
    if not isinstance(name, str) or not name:
        raise TypeError(f"feature names must be non-empty strings, got {name!r}")
    if isinstance(value, str):
        return value
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise TypeError(f"feature {name!r}: unsupported value type {type(value).__name__}")
    if not math.isfinite(value):
        raise ValueError(f"feature {name!r}: value must be finite, got {value!r}")
    return value


def _numeric(name: str, value: Value) -> float:
    if isinstance(value, str):
        raise TypeError(f"feature {name!r} is categorical ({value!r}); numeric operation not allowed")
    return value


class FeatureVector(Mapping):
    """Immutable mapping from feature name to value.

    Construction validates every entry: names must be non-empty strings and
    numeric values must be finite. Later duplicates of a name replace earlier
    ones, exactly like ``dict``.
    """

    __slots__ = ("_data", "_hash")

    def __init__(self, data: Mapping[str, Value] | None = None, /, **kwargs: Value):
        items = dict(data or {}, **kwargs)
        self._data = {name: _check_value(name, value) for name, value in items.items()}
        self._hash = None

    @classmethod
    def _trusted(cls, data: dict) -> FeatureVector:
        # Caller guarantees names are valid and numbers finite.
        fv = object.__new__(cls)
        fv._data = data
        fv._hash = None
        return fv

    def __getitem__(self, name: str) -> Value:
        return self._data[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, name) -> bool:
        return name in self._data

    # delegate to the dict: the Mapping mixins are several times slower
    def get(self, name, default=None):
        return self._data.get(name, default)

    def keys(self):
        return self._data.keys()

    def values(self):
        return self._data.values()

    def items(self):
        return self._data.items()

    def __repr__(self) -> str:
        return f"FeatureVector({self._data!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, FeatureVector):
            return self._data == other._data
        if isinstance(other, Mapping):
            return self._data == dict(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._data.items()))
        return self._hash

    def with_entry(self, name: str, value: Value) -> FeatureVector:
        """Return a copy where ``name`` is set to ``value``."""
        data = dict(self._data)
        data[name] = _check_value(name, value)
        return FeatureVector._trusted(data)

    def to_dict(self) -> dict[str, Value]:
        return dict(self._data)

    def __add__(self, other):
        if not isinstance(other, Mapping):
            return NotImplemented
        return vadd(self, other)

    def __radd__(self, other):
        if not isinstance(other, Mapping):
            return NotImplemented
        return vadd(other, self)

    def __sub__(self, other):
        if not isinstance(other, Mapping):
            return NotImplemented
        return vsub(self, other)

    def __rsub__(self, other):
        if not isinstance(other, Mapping):
            return NotImplemented
        return vsub(other, self)

    def __mul__(self, other):
        if isinstance(other, Mapping):
            return vmul(self, other)
        if isinstance(other, numbers.Real) and not isinstance(other, bool):
            return _scale(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Mapping):
            return vmul(other, self)
        if isinstance(other, numbers.Real) and not isinstance(other, bool):
            return _scale(self, other)
        return NotImplemented

    def __truediv__(self, other):
        if not isinstance(other, Mapping):
            return NotImplemented
        return vdiv(self, other)

    def __pow__(self, p):
        return vpow(self, p)

    def __matmul__(self, other):
        if not isinstance(other, Mapping):
            return NotImplemented
        return dot(self, other)

    __rmatmul__ = __matmul__


def _scale(a: Mapping, k: float) -> FeatureVector:
    return FeatureVector({n: _numeric(n, v) * k for n, v in a.items()})


def vadd(a: Mapping, b: Mapping) -> FeatureVector:
    """Elementwise sum over the union of names; missing entries count as 0."""
    out = {n: _numeric(n, v) for n, v in a.items()}
    for n, v in b.items():
        v = _numeric(n, v)
        out[n] = out[n] + v if n in out else v
    return FeatureVector(out)


def vsub(a: Mapping, b: Mapping) -> FeatureVector:
    """Elementwise difference over the union of names."""
    out = {n: _numeric(n, v) for n, v in a.items()}
    for n, v in b.items():
        v = _numeric(n, v)
        out[n] = out[n] - v if n in out else -v
    return FeatureVector(out)


def vmul(a: Mapping, b: Mapping) -> FeatureVector:
    """Elementwise product over the names shared by both vectors."""
    _check_all_numeric(a)
    _check_all_numeric(b)
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    return FeatureVector({n: a[n] * b[n] for n in small if n in large})


def vdiv(a: Mapping, b: Mapping) -> FeatureVector:
    """Elementwise quotient over the names shared by both vectors."""
    _check_all_numeric(a)
    _check_all_numeric(b)
    out = {}
    for n, v in a.items():
        if n not in b:
            continue
        if b[n] == 0:
            raise ZeroDivisionError(f"feature {n!r}: division by zero")
        out[n] = v / b[n]
    return FeatureVector(out)


def vpow(a: Mapping, p: float) -> FeatureVector:
    """Raise every value of ``a`` to the power ``p``."""
    if isinstance(p, bool) or not isinstance(p, numbers.Real) or not math.isfinite(p):
        raise TypeError(f"exponent must be a finite real, got {p!r}")
    integral = float(p).is_integer()
    out = {}
    for n, v in a.items():
        v = _numeric(n, v)
        if v < 0 and not integral:
            raise ValueError(f"feature {n!r}: negative base {v} with fractional exponent {p}")
        if v == 0 and p < 0:
            raise ZeroDivisionError(f"feature {n!r}: zero raised to negative power")
        out[n] = v**p
    return FeatureVector(out)


def dot(a: Mapping, b: Mapping) -> float:
    """Sum of pairwise products over the shared names (0 when none)."""
    _check_all_numeric(a)
    _check_all_numeric(b)
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    # fsum is correctly rounded, so the result does not depend on visit order
    return math.fsum(v * large[n] for n, v in small.items() if n in large)


def _check_all_numeric(a: Mapping) -> None:
    for n, v in a.items():
        _numeric(n, v)
