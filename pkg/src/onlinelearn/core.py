"""Estimator contracts shared by every learner and transformer.

Models learn from one sample at a time through ``learn_one`` and answer
through ``predict_one`` / ``predict_proba_one``; transformers expose
``transform_one``. The ``*_many`` methods are thin ordered folds over the
``*_one`` methods so mini-batches and single samples go through the same code.

Class distributions are plain ``dict`` objects mapping a label to its
probability. An unfitted classifier returns ``{}`` and ``predict_one`` then
returns ``None``.
"""

from __future__ import annotations

import copy
import math
from collections.abc import Iterable, Mapping, Sequence
from typing import Any, Hashable, Optional, Union

__all__ = [
    "Label",
    "Estimator",
    "Transformer",
    "Classifier",
    "normalize",
    "argmax_label",
    "label_sort_key",
]

Label = Hashable
ClassDistribution = dict


def label_sort_key(label: Label) -> tuple:
    """Total order over labels: numbers first, then strings, then the rest by repr."""
    if isinstance(label, (int, float)) and not isinstance(label, bool):
        return (0, label)
    if isinstance(label, bool):
        return (0, int(label))
    if isinstance(label, str):
        return (1, label)
    return (2, repr(label))


def normalize(raw: Mapping[Label, float]) -> dict[Label, float]:
    """Scale nonnegative weights so they sum to one.

    A zero total yields the uniform distribution over the given labels.

    >>> normalize({"A": 3, "B": 1})
    {'A': 0.75, 'B': 0.25}
    """
    if not raw:
        raise ValueError("cannot normalize an empty mapping")
    for label, w in raw.items():
        if not math.isfinite(w) or w < 0:
            raise ValueError(f"weight for label {label!r} must be finite and nonnegative, got {w!r}")
    total = math.fsum(raw.values())
    if total == 0:
        u = 1.0 / len(raw)
        return {label: u for label in raw}
    return {label: w / total for label, w in raw.items()}


def argmax_label(dist: Mapping[Label, float]) -> Optional[Label]:
    """Most probable label; ties go to the smallest label. ``None`` when empty."""
    best = None
    best_p = -math.inf
    for label, p in dist.items():
        if p > best_p or (p == best_p and label_sort_key(label) < label_sort_key(best)):
            best, best_p = label, p
    return best


class Estimator:
    """Base class for everything that learns from a stream."""

    def learn_one(self, x: Mapping, y: Label = None) -> None:  # pragma: no cover - abstract
        raise NotImplementedError

    def learn_many(self, batch: Iterable[tuple[Mapping, Label]]) -> None:
        """Apply ``learn_one`` to each ``(x, y)`` row in order.

        Every row must carry a label; the batch is checked before the model
        is touched so a bad row leaves the state unchanged.
        """
        rows = list(batch)
        for i, row in enumerate(rows):
            if len(row) < 2 or row[1] is None:
                raise ValueError(f"row {i} has no label")
        for x, y in rows:
            self.learn_one(x, y)

    def clone(self) -> Estimator:
        """A deep copy of this estimator, including its learned state."""
        return copy.deepcopy(self)

    def __or__(self, other: Estimator):
        from .pipeline import Pipeline

        return Pipeline(self, other)

    def __ror__(self, other: Estimator):
        from .pipeline import Pipeline

        return Pipeline(other, self)


class Transformer(Estimator):
    """An unsupervised estimator that maps feature vectors to feature vectors."""

    def learn_one(self, x: Mapping, y: Label = None) -> None:
        """Update internal statistics. Stateless transformers do nothing."""

    def transform_one(self, x: Mapping) -> Mapping:  # pragma: no cover - abstract
        raise NotImplementedError

    def learn_many(self, batch: Iterable[Union[Mapping, tuple[Mapping, Any]]]) -> None:
        # Transformers ignore labels, so bare feature vectors are accepted too.
        for row in batch:
            x = row[0] if isinstance(row, tuple) else row
            self.learn_one(x)

    def transform_many(self, xs: Iterable[Mapping]) -> list[Mapping]:
        return [self.transform_one(x) for x in xs]


class Classifier(Estimator):
    """Base class for classifiers.

    Subclasses implement ``learn_one`` and ``predict_proba_one``; the label
    prediction is derived from the distribution.
    """

    def predict_proba_one(self, x: Mapping) -> dict[Label, float]:  # pragma: no cover - abstract
        raise NotImplementedError

    def predict_one(self, x: Mapping) -> Optional[Label]:
        return argmax_label(self.predict_proba_one(x))

    def predict_proba_many(self, xs: Iterable[Mapping]) -> list[dict[Label, float]]:
        return [self.predict_proba_one(x) for x in xs]

    def predict_many(self, xs: Iterable[Mapping]) -> list[Optional[Label]]:
        return [self.predict_one(x) for x in xs]


def check_numeric(x: Mapping) -> None:
    """Raise ``TypeError`` naming the first categorical feature in ``x``."""
    for name, value in x.items():
        if isinstance(value, str):
            raise TypeError(f"feature {name!r} is categorical ({value!r}); only numeric features are supported")


def sorted_labels(labels: Sequence[Label]) -> list[Label]:
    return sorted(labels, key=label_sort_key)
