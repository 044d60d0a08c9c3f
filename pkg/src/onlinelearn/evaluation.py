"""Streaming accuracy and prequential (test-then-train) evaluation."""

from __future__ import annotations

import json
import time
from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import IO, Optional

from .core import Label, argmax_label

__all__ = ["StreamError", "Accuracy", "ConfusionMatrix", "EvalReport", "progressive_val_score", "replay_accuracy"]


class StreamError(RuntimeError):
    """A stream failed while producing sample ``index``."""

    def __init__(self, index: int, cause: BaseException):
        super().__init__(f"sample {index}: {cause}")
        self.index = index
        self.cause = cause


class ConfusionMatrix:
    """Counts of (true, predicted) label pairs."""

    def __init__(self):
        self.counts: dict[Label, dict[Label, int]] = defaultdict(lambda: defaultdict(int))
        self.total = 0

    def update(self, y_true: Label, y_pred: Label) -> None:
        self.counts[y_true][y_pred] += 1
        self.total += 1

    @property
    def classes(self) -> list:
        seen = set(self.counts)
        for row in self.counts.values():
            seen.update(row)
        return sorted(seen, key=repr)

    def __getitem__(self, y_true):
        return self.counts[y_true]


class Accuracy:
    """Fraction of correct predictions; 0.0 before any update."""

    def __init__(self):
        self.correct = 0
        self.total = 0
        self.cm = ConfusionMatrix()

    def update(self, y_true: Label, y_pred: Label) -> None:
        self.total += 1
        if y_true == y_pred:
            self.correct += 1
        self.cm.update(y_true, y_pred)

    def get(self) -> float:
        return self.correct / self.total if self.total else 0.0

    def __repr__(self) -> str:
        return f"Accuracy: {self.get():.2%}"


@dataclass
class EvalReport:
    metric: Accuracy
    n_samples: int = 0
    n_scored: int = 0
    learn_time: float = 0.0
    predict_time: float = 0.0

    @property
    def value(self) -> float:
        return self.metric.get()

    def __repr__(self) -> str:
        return repr(self.metric)


def progressive_val_score(
    stream: Iterable,
    model,
    metric: Optional[Accuracy] = None,
    log: Optional[IO[str]] = None,
) -> EvalReport:
    """Evaluate ``model`` on ``stream`` by predicting each sample before learning it.

    Absent predictions (an unfitted model returning ``None``) are not scored.
    Prediction and learning are timed separately with a monotonic clock; the
    label is extracted from ``predict_proba_one`` so the predict time
    covers the probability computation as well. When ``log`` is given, one
    JSON line ``{"index", "true", "predicted"}`` is written per sample.
    """
    if metric is None:
        metric = Accuracy()
    report = EvalReport(metric)
    clock = time.perf_counter
    has_proba = hasattr(model, "predict_proba_one")

    i = -1
    it = iter(stream)
    while True:
        i += 1
        try:
            x, y = next(it)
        except StopIteration:
            break
        except Exception as e:
            raise StreamError(i, e) from e

        t0 = clock()
        y_pred = argmax_label(model.predict_proba_one(x)) if has_proba else model.predict_one(x)
        t1 = clock()
        report.predict_time += t1 - t0

        if y_pred is not None:
            metric.update(y, y_pred)
            report.n_scored += 1
        if log is not None:
            log.write(json.dumps({"index": i, "true": y, "predicted": y_pred}) + "\n")

        t0 = clock()
        model.learn_one(x, y)
        report.learn_time += clock() - t0
        report.n_samples += 1

    return report


def replay_accuracy(lines: Iterable[str]) -> float:
    """Recompute accuracy from a prediction log written by :func:`progressive_val_score`."""
    correct = total = 0
    for line in lines:
        if not line.strip():
            continue
        rec = json.loads(line)
        if rec["predicted"] is None:
            continue
        total += 1
        correct += rec["true"] == rec["predicted"]
    return correct / total if total else 0.0
