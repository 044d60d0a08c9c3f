"""Stream sources: a seedable Waveform generator and an Elec2 file reader.

A stream is any iterable of ``(x, y)`` pairs. :class:`Waveform` is unbounded
and :func:`take` cuts any stream to a finite prefix.

Waveform reproducibility
------------------------
Each sample consumes exactly 23 doubles from a PCG64 bit generator seeded
through ``numpy.random.SeedSequence(seed)``: the first picks the class
(``floor(3 * r)``), the second is the mixing weight ``u`` and the remaining
21 become standard normal noise through the inverse normal CDF. A draw of
exactly 0 is mapped to the smallest positive double before inversion.
The sequence is therefore fully determined by the seed on every platform.
"""

from __future__ import annotations

import csv
import itertools
import math
import os
from collections.abc import Iterable, Iterator
from statistics import NormalDist
from typing import Optional

import numpy as np

from .featmap import FeatureVector

__all__ = ["Waveform", "waveform_features", "take", "load_elec2", "Elec2Error", "ELEC2_FEATURES"]

N_WAVEFORM_FEATURES = 21
_DRAWS_PER_SAMPLE = 2 + N_WAVEFORM_FEATURES
_TINY = 5e-324


def _base_wave(center: int) -> list[float]:
    return [float(max(6 - abs(i - center), 0)) for i in range(N_WAVEFORM_FEATURES)]


# Breiman's base waves: h1 peaks at index 10, h2 and h3 are h1 shifted by +4 and -4
BASE_WAVES = (_base_wave(10), _base_wave(14), _base_wave(6))
# class -> indices of the two base waves it mixes
CLASS_WAVES = {0: (0, 1), 1: (0, 2), 2: (1, 2)}
WAVEFORM_NAMES = tuple(str(i) for i in range(N_WAVEFORM_FEATURES))


def waveform_features(label: int, u: float, noise) -> list[float]:
    """Feature values for class ``label`` given the mixing weight and noise."""
    a, b = CLASS_WAVES[label]
    ha, hb = BASE_WAVES[a], BASE_WAVES[b]
    return [u * ha[i] + (1.0 - u) * hb[i] + noise[i] for i in range(N_WAVEFORM_FEATURES)]


class Waveform:
    """Breiman's three-class waveform generator.

    Each sample is a random convex combination of two of three triangular
    base waves plus unit Gaussian noise on each of its 21 features. Iterating
    yields ``(FeatureVector, label)`` pairs forever; every call to ``iter``
    restarts from the seed.

    >>> x, y = next(iter(Waveform(seed=42)))
    >>> len(x), y in (0, 1, 2)
    (21, True)
    """

    def __init__(self, seed: Optional[int] = None):
        self.seed = seed

    def __repr__(self) -> str:
        return f"Waveform(seed={self.seed})"

    def __iter__(self) -> Iterator[tuple[FeatureVector, int]]:
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed)))
        inv_cdf = NormalDist().inv_cdf
        while True:
            draws = rng.random(_DRAWS_PER_SAMPLE).tolist()
            label = int(draws[0] * 3)
            u = draws[1]
            noise = [inv_cdf(r if r > 0 else _TINY) for r in draws[2:]]
            values = waveform_features(label, u, noise)
            yield FeatureVector._trusted(dict(zip(WAVEFORM_NAMES, values))), label

    def take(self, n: int) -> "_Take":
        return take(self, n)


class _Take:
    """Replayable finite prefix of a stream."""

    def __init__(self, source: Iterable, n: int):
        self.source = source
        self.n = n

    def __iter__(self):
        return itertools.islice(iter(self.source), self.n)

    def __repr__(self) -> str:
        return f"take({self.source!r}, {self.n})"

    def take(self, n: int) -> "_Take":
        return take(self, n)


def take(stream: Iterable, n: int) -> _Take:
    """The first ``min(n, available)`` samples of ``stream``, in order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if isinstance(stream, _Take):
        return _Take(stream.source, min(n, stream.n))
    return _Take(stream, n)


ELEC2_FEATURES = ("date", "day", "period", "nswprice", "nswdemand", "vicprice", "vicdemand", "transfer")
ELEC2_LABELS = ("UP", "DOWN")


class Elec2Error(ValueError):
    """Malformed Elec2 input; the message carries the file and line number."""


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def _parse_elec2_row(row: list[str], path, lineno: int) -> tuple[FeatureVector, str]:
    if len(row) != len(ELEC2_FEATURES) + 1:
        raise Elec2Error(f"{path}:{lineno}: expected {len(ELEC2_FEATURES) + 1} columns, got {len(row)}")
    values = {}
    for name, field in zip(ELEC2_FEATURES, row):
        field = field.strip()
        try:
            v = float(field)
        except ValueError:
            raise Elec2Error(f"{path}:{lineno}: column {name!r} is not numeric: {field!r}") from None
        if not math.isfinite(v):
            raise Elec2Error(f"{path}:{lineno}: column {name!r} is not finite: {field!r}")
        if name == "day":
            if not v.is_integer() or not 1 <= v <= 7:
                raise Elec2Error(f"{path}:{lineno}: day must be an integer code 1-7, got {field!r}")
            v = int(v)
        values[name] = v
    label = row[-1].strip()
    if label not in ELEC2_LABELS:
        raise Elec2Error(f"{path}:{lineno}: unknown label {label!r} (expected UP or DOWN)")
    return FeatureVector._trusted(values), label


class _Elec2:
    def __init__(self, path):
        self.path = os.fspath(path)
        if not os.path.isfile(self.path):
            raise FileNotFoundError(f"Elec2 file not found: {self.path}")

    def __repr__(self) -> str:
        return f"load_elec2({self.path!r})"

    def __iter__(self) -> Iterator[tuple[FeatureVector, str]]:
        with open(self.path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or all(not f.strip() for f in row):
                    continue
                if lineno == 1 and not _is_number(row[0].strip()):
                    continue  # header
                yield _parse_elec2_row(row, self.path, lineno)

    def take(self, n: int) -> _Take:
        return take(self, n)


def load_elec2(path) -> _Elec2:
    """Stream the Elec2 electricity dataset from a local CSV file.

    The file has nine comma-separated columns (``date, day, period,
    nswprice, nswdemand, vicprice, vicdemand, transfer, class``) and an
    optional header line. ``day`` is read as an integer code, the other
    features as floats; labels are ``"UP"`` or ``"DOWN"``. Rows are yielded
    in file order. Errors are raised lazily while iterating, except for a
    missing file which is reported immediately.
    """
    return _Elec2(path)
