"""Incremental scaler, logistic regression and Gaussian naive Bayes."""

from __future__ import annotations

import math
from collections.abc import Mapping
from typing import Optional

from .core import Classifier, Label, Transformer, check_numeric, label_sort_key
from .featmap import FeatureVector
from .stats import RunningMoments

__all__ = [
    "StandardScaler",
    "LogisticRegression",
    "GaussianNB",
    "sigmoid",
    "gaussian_log_pdf",
    "naive_bayes_log_scores",
    "softmax",
]

_LOG_2PI = math.log(2.0 * math.pi)


def sigmoid(z: float) -> float:
    """Logistic function; branches on the sign so ``exp`` never overflows."""
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


def gaussian_log_pdf(x: float, mean: float, var: float) -> float:
    return -0.5 * (_LOG_2PI + math.log(var)) - (x - mean) ** 2 / (2.0 * var)


def softmax(log_scores: Mapping[Label, float]) -> dict[Label, float]:
    if not log_scores:
        return {}
    top = max(log_scores.values())
    exp = {c: math.exp(s - top) for c, s in log_scores.items()}
    total = math.fsum(exp.values())
    return {c: e / total for c, e in exp.items()}


def naive_bayes_log_scores(
    class_counts: Mapping[Label, int],
    moments: Mapping[Label, Mapping[str, RunningMoments]],
    x: Mapping[str, float],
    var_floor: float,
) -> dict[Label, float]:
    """Joint log-likelihood of ``x`` under each class with Gaussian features.

    ``var_floor`` is added to every variance. A (class, feature) pair with no
    statistics is scored under a zero-mean Gaussian of variance ``var_floor``.
    """
    total = sum(class_counts.values())
    scores = {}
    for c, n in class_counts.items():
        if n <= 0:
            continue
        by_feature = moments.get(c, {})
        s = math.log(n / total)
        for f, v in x.items():
            m = by_feature.get(f)
            if m is None:
                s += gaussian_log_pdf(v, 0.0, var_floor)
            else:
                s += gaussian_log_pdf(v, m.mean, m.variance + var_floor)
        scores[c] = s
    return scores


class StandardScaler(Transformer):
    """Standardise each feature with its running mean and population std.

    Features that have never been seen, or whose variance is still zero,
    are mapped to 0.
    """

    def __init__(self):
        self.moments: dict[str, RunningMoments] = {}

    def learn_one(self, x: Mapping, y: Label = None) -> None:
        check_numeric(x)
        for f, v in x.items():
            m = self.moments.get(f)
            if m is None:
                m = self.moments[f] = RunningMoments()
            m.update(v)

    def transform_one(self, x: Mapping) -> FeatureVector:
        check_numeric(x)
        out = {}
        for f, v in x.items():
            m = self.moments.get(f)
            if m is None:
                out[f] = 0.0
                continue
            std = m.std
            out[f] = (v - m.mean) / std if std > 0 else 0.0
        return FeatureVector._trusted(out)


class LogisticRegression(Classifier):
    """Binary logistic regression fitted by plain SGD on the log-loss.

    The two labels are discovered from the stream. Once both are known the
    larger one (in label order) is the positive class. Before the second
    label shows up the model predicts the only label it knows with
    probability 1; internally that label is provisionally treated as
    positive and the parameters are negated if the order later says
    otherwise, which leaves every predicted probability unchanged.

    Parameters
    ----------
    learning_rate
        Constant step size, used for the weights and the bias.
    l2
        L2 penalty applied to the weights of the features present in a sample.
    """

    def __init__(self, learning_rate: float = 0.01, l2: float = 0.0):
        if learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if l2 < 0:
            raise ValueError("l2 must be nonnegative")
        self.learning_rate = learning_rate
        self.l2 = l2
        self.weights: dict[str, float] = {}
        self.bias = 0.0
        self._pos: Optional[Label] = None
        self._neg: Optional[Label] = None

    @property
    def labels(self) -> tuple:
        """Known labels in (negative, positive) order."""
        return tuple(c for c in (self._neg, self._pos) if c is not None)

    def _register(self, y: Label) -> None:
        if y == self._pos or y == self._neg:
            return
        if self._pos is None:
            self._pos = y
            return
        if self._neg is not None:
            raise ValueError(
                f"LogisticRegression is binary; got a third label {y!r} "
                f"after {self._neg!r} and {self._pos!r}"
            )
        if label_sort_key(y) > label_sort_key(self._pos):
            self._neg, self._pos = self._pos, y
            self.bias = -self.bias
            self.weights = {f: -w for f, w in self.weights.items()}
        else:
            self._neg = y

    def decision_function(self, x: Mapping) -> float:
        check_numeric(x)
        w = self.weights
        return self.bias + math.fsum(w[f] * v for f, v in x.items() if f in w)

    def predict_proba_one(self, x: Mapping) -> dict[Label, float]:
        if self._pos is None:
            return {}
        if self._neg is None:
            return {self._pos: 1.0}
        p = sigmoid(self.decision_function(x))
        return {self._neg: 1.0 - p, self._pos: p}

    def gradient(self, x: Mapping, y: Label) -> tuple[dict[str, float], float]:
        """Gradient of the log-loss on ``(x, y)`` w.r.t. the weights and the bias."""
        g = sigmoid(self.decision_function(x)) - (1.0 if y == self._pos else 0.0)
        return {f: g * v for f, v in x.items()}, g

    def learn_one(self, x: Mapping, y: Label = None) -> None:
        if y is None:
            raise ValueError("learn_one needs a label")
        check_numeric(x)
        self._register(y)
        g = sigmoid(self.decision_function(x)) - (1.0 if y == self._pos else 0.0)
        lr, l2, w = self.learning_rate, self.l2, self.weights
        for f, v in x.items():
            wf = w.get(f, 0.0)
            w[f] = wf - lr * (g * v + l2 * wf)
        self.bias -= lr * g


class GaussianNB(Classifier):
    """Gaussian naive Bayes with running per-class, per-feature moments.

    Every variance is inflated by ``var_smoothing`` times the largest
    population variance seen for any feature over the whole stream (or by
    ``var_smoothing`` itself while that is still zero), which keeps densities
    finite for constant features.
    """

    def __init__(self, var_smoothing: float = 1e-9):
        self.var_smoothing = var_smoothing
        self.class_counts: dict[Label, int] = {}
        self.moments: dict[Label, dict[str, RunningMoments]] = {}
        self.global_moments: dict[str, RunningMoments] = {}

    def learn_one(self, x: Mapping, y: Label = None) -> None:
        if y is None:
            raise ValueError("learn_one needs a label")
        check_numeric(x)
        self.class_counts[y] = self.class_counts.get(y, 0) + 1
        by_feature = self.moments.setdefault(y, {})
        for f, v in x.items():
            m = by_feature.get(f)
            if m is None:
                m = by_feature[f] = RunningMoments()
            m.update(v)
            g = self.global_moments.get(f)
            if g is None:
                g = self.global_moments[f] = RunningMoments()
            g.update(v)

    @property
    def var_floor(self) -> float:
        top = max((m.variance for m in self.global_moments.values()), default=0.0)
        return self.var_smoothing * (top if top > 0 else 1.0)

    def joint_log_likelihood(self, x: Mapping) -> dict[Label, float]:
        check_numeric(x)
        return naive_bayes_log_scores(self.class_counts, self.moments, x, self.var_floor)

    def predict_proba_one(self, x: Mapping) -> dict[Label, float]:
        if not self.class_counts:
            return {}
        return softmax(self.joint_log_likelihood(x))
