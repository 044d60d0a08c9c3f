"""Hoeffding tree classifier for numeric features.

Leaves summarise each numeric feature with one Gaussian per class. Every
``grace_period`` samples an impure leaf evaluates candidate binary splits by
information gain and commits to the best one once the Hoeffding bound says
the gap to the runner-up is unlikely to be noise.
"""

from __future__ import annotations

import itertools
import json
import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import IO, Optional, Union

from .baselines import softmax
from .core import Classifier, Label, argmax_label, check_numeric, label_sort_key, normalize
from .stats import RunningMoments

__all__ = [
    "entropy",
    "hoeffding_bound",
    "GaussianObserver",
    "SplitSuggestion",
    "LeafNode",
    "SplitNode",
    "HoeffdingTreeClassifier",
]

LEAF_PREDICTIONS = ("mc", "nb", "nba")
_LOG_2PI = math.log(2.0 * math.pi)


def entropy(counts: Mapping[Label, float]) -> float:
    """Shannon entropy in bits of the distribution proportional to ``counts``."""
    total = math.fsum(counts.values())
    if total <= 0:
        raise ValueError("entropy needs at least one positive count")
    h = 0.0
    for c in counts.values():
        if c > 0:
            p = c / total
            h -= p * math.log2(p)
    return h


def hoeffding_bound(range_r: float, delta: float, n: int) -> float:
    """Deviation ε such that an n-sample mean of a variable with range R is
    within ε of its expectation with probability 1 - δ."""
    if range_r <= 0:
        raise ValueError("range must be positive")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if n < 1:
        raise ValueError("n must be a positive integer")
    return math.sqrt(range_r * range_r * math.log(1.0 / delta) / (2.0 * n))


def _normal_cdf(x: float, mean: float, std: float) -> float:
    if std == 0:
        return 1.0 if x >= mean else 0.0
    return 0.5 * (1.0 + math.erf((x - mean) / (std * math.sqrt(2.0))))


@dataclass
class SplitSuggestion:
    feature: str
    threshold: float
    merit: float
    # estimated class mass on the left (<= threshold) and right branches
    branches: tuple[dict, dict] = ((), ())


class GaussianObserver:
    """Per-class Gaussian summary of one numeric feature at a leaf."""

    def __init__(self):
        self.moments: dict[Label, RunningMoments] = {}
        self.min: dict[Label, float] = {}
        self.max: dict[Label, float] = {}

    def update(self, value: float, y: Label) -> None:
        m = self.moments.get(y)
        if m is None:
            self.moments[y] = m = RunningMoments()
            self.min[y] = self.max[y] = value
        elif value < self.min[y]:
            self.min[y] = value
        elif value > self.max[y]:
            self.max[y] = value
        m.update(value)

    def branch_masses(self, threshold: float) -> tuple[dict, dict]:
        """Estimated class counts at or below / above ``threshold``.

        A class whose observed range lies entirely on one side sends all its
        mass there; otherwise the mass is divided by its Gaussian CDF.
        """
        left, right = {}, {}
        for c, m in self.moments.items():
            if threshold < self.min[c]:
                right[c] = float(m.count)
            elif threshold >= self.max[c]:
                left[c] = float(m.count)
            else:
                lhs = _normal_cdf(threshold, m.mean, m.std) * m.count
                left[c] = lhs
                right[c] = m.count - lhs
        return left, right

    def candidate_thresholds(self, n_points: int) -> list[float]:
        if not self.moments:
            return []
        lo = min(self.min.values())
        hi = max(self.max.values())
        if not lo < hi:
            return []
        step = (hi - lo) / (n_points + 1)
        out = []
        for i in range(1, n_points + 1):
            t = lo + step * i
            if lo < t < hi:
                out.append(t)
        return out

    def best_split(self, feature: str, pre_split: Mapping[Label, float], n_points: int = 10) -> Optional[SplitSuggestion]:
        if sum(1 for v in pre_split.values() if v > 0) < 2:
            return None
        pre_entropy = entropy(pre_split)
        best = None
        for t in self.candidate_thresholds(n_points):
            left, right = self.branch_masses(t)
            merit = pre_entropy - _weighted_entropy((left, right))
            merit = max(merit, 0.0)
            if best is None or merit > best.merit:
                best = SplitSuggestion(feature, t, merit, (left, right))
        return best


def _weighted_entropy(branches) -> float:
    totals = [math.fsum(b.values()) for b in branches]
    n = math.fsum(totals)
    if n <= 0:
        return 0.0
    return math.fsum(t / n * entropy(b) for b, t in zip(branches, totals) if t > 0)


@dataclass(eq=False)
class LeafNode:
    id: int
    depth: int = 0
    class_counts: dict = field(default_factory=dict)
    observers: dict = field(default_factory=dict)
    samples_since_split_attempt: int = 0
    last_split_attempt_total: int = 0
    # class mass inherited from the parent's split estimate; used for
    # prediction only and never counted as observed samples
    prior: dict = field(default_factory=dict)
    mc_correct: int = 0
    nb_correct: int = 0

    @property
    def total(self) -> int:
        return sum(self.class_counts.values())

    @property
    def is_pure(self) -> bool:
        return sum(1 for c in self.class_counts.values() if c > 0) < 2

    def class_distribution(self) -> dict[Label, float]:
        dist = dict(self.prior)
        for c, n in self.class_counts.items():
            dist[c] = dist.get(c, 0.0) + n
        return dist

    def majority_proba(self) -> dict[Label, float]:
        dist = self.class_distribution()
        if not dist:
            return {}
        return normalize(dist)

    def naive_bayes_proba(self, x: Mapping) -> dict[Label, float]:
        """Leaf-local Gaussian naive Bayes over the leaf's observers.

        Uses the same conventions as :class:`~onlinelearn.baselines.GaussianNB`:
        variances are inflated by 1e-9 times the largest variance held at
        the leaf, and a class with no statistics for a feature is scored
        under a zero-mean Gaussian with that floor as its variance.
        """
        if not self.class_counts:
            return self.majority_proba()
        dist = self.class_distribution()
        total = sum(dist.values())
        scores = {c: math.log(n / total) for c, n in dist.items() if n > 0}

        top = 0.0
        for obs in self.observers.values():
            for m in obs.moments.values():
                v = m.m2 / m.count
                if v > top:
                    top = v
        floor = 1e-9 * (top if top > 0 else 1.0)
        log_floor = math.log(floor)

        observers = self.observers
        for f, v in x.items():
            obs = observers.get(f)
            per_class = obs.moments if obs is not None else {}
            for c in scores:
                m = per_class.get(c)
                if m is None:
                    scores[c] -= 0.5 * (_LOG_2PI + log_floor) + v * v / (2.0 * floor)
                else:
                    var = m.m2 / m.count + floor
                    d = v - m.mean
                    scores[c] -= 0.5 * (_LOG_2PI + math.log(var)) + d * d / (2.0 * var)
        return softmax(scores)


@dataclass(eq=False)
class SplitNode:
    id: int
    feature: str
    threshold: float
    left: Union[LeafNode, "SplitNode"]
    right: Union[LeafNode, "SplitNode"]
    depth: int = 0
    # counts the leaf held when it was split; later samples go to the children
    class_counts: dict = field(default_factory=dict)

    def branch(self, x: Mapping) -> Union[LeafNode, "SplitNode"]:
        v = x.get(self.feature)
        if v is None or v <= self.threshold:
            return self.left
        return self.right


class HoeffdingTreeClassifier(Classifier):
    """Incremental decision tree with Gaussian numeric observers.

    Parameters
    ----------
    grace_period
        Samples a leaf accumulates between split attempts.
    delta
        One minus the confidence required before a split is installed.
    tau
        Tie threshold: when the Hoeffding bound drops below it the best
        candidate is accepted even if the runner-up is close.
    leaf_prediction
        ``"mc"`` (majority class), ``"nb"`` (leaf-local naive Bayes) or
        ``"nba"`` (whichever of the two has been right more often at the leaf).
    n_split_points
        Number of equally spaced candidate thresholds per feature.
    trace
        Optional text stream; one JSON record is written per split attempt.
    """

    def __init__(
        self,
        grace_period: int = 200,
        delta: float = 1e-7,
        tau: float = 0.05,
        leaf_prediction: str = "nba",
        n_split_points: int = 10,
        trace: Optional[IO[str]] = None,
    ):
        if grace_period < 1:
            raise ValueError("grace_period must be a positive integer")
        if not 0 < delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if tau < 0:
            raise ValueError("tau must be nonnegative")
        if leaf_prediction not in LEAF_PREDICTIONS:
            raise ValueError(f"leaf_prediction must be one of {LEAF_PREDICTIONS}")
        self.grace_period = grace_period
        self.delta = delta
        self.tau = tau
        self.leaf_prediction = leaf_prediction
        self.n_split_points = n_split_points
        self.trace = trace
        self._ids = itertools.count()
        self.root: Union[LeafNode, SplitNode] = LeafNode(next(self._ids))
        self.n_splits = 0

    def __deepcopy__(self, memo):
        import copy

        new = object.__new__(type(self))
        memo[id(self)] = new
        for k, v in self.__dict__.items():
            # trace streams are shared, not copied
            setattr(new, k, v if k == "trace" else copy.deepcopy(v, memo))
        return new

    def _sort(self, x: Mapping) -> LeafNode:
        node = self.root
        while isinstance(node, SplitNode):
            node = node.branch(x)
        return node

    def nodes(self) -> list[Union[LeafNode, SplitNode]]:
        """All nodes in depth-first, left-to-right order."""
        out, stack = [], [self.root]
        while stack:
            node = stack.pop()
            out.append(node)
            if isinstance(node, SplitNode):
                stack.extend((node.right, node.left))
        return out

    def leaves(self) -> list[LeafNode]:
        return [n for n in self.nodes() if isinstance(n, LeafNode)]

    @property
    def n_samples(self) -> int:
        """Samples learned so far: held by leaves plus those absorbed by splits."""
        return sum(sum(n.class_counts.values()) for n in self.nodes())

    @property
    def depth(self) -> int:
        return max(leaf.depth for leaf in self.leaves())

    @property
    def n_leaves(self) -> int:
        return len(self.leaves())

    def _leaf_proba(self, leaf: LeafNode, x: Mapping) -> dict[Label, float]:
        mode = self.leaf_prediction
        if mode == "nba":
            mode = "nb" if leaf.nb_correct > leaf.mc_correct else "mc"
        if mode == "nb":
            return leaf.naive_bayes_proba(x)
        return leaf.majority_proba()

    def predict_proba_one(self, x: Mapping) -> dict[Label, float]:
        check_numeric(x)
        return self._leaf_proba(self._sort(x), x)

    def learn_one(self, x: Mapping, y: Label = None) -> None:
        if y is None:
            raise ValueError("learn_one needs a label")
        check_numeric(x)
        leaf = self._sort(x)

        if self.leaf_prediction == "nba" and (leaf.class_counts or leaf.prior):
            if argmax_label(leaf.majority_proba()) == y:
                leaf.mc_correct += 1
            if argmax_label(leaf.naive_bayes_proba(x)) == y:
                leaf.nb_correct += 1

        leaf.class_counts[y] = leaf.class_counts.get(y, 0) + 1
        for f, v in x.items():
            obs = leaf.observers.get(f)
            if obs is None:
                obs = leaf.observers[f] = GaussianObserver()
            obs.update(v, y)
        leaf.samples_since_split_attempt += 1

        if leaf.samples_since_split_attempt >= self.grace_period and not leaf.is_pure:
            self._attempt_split(leaf)

    def _attempt_split(self, leaf: LeafNode) -> None:
        n = leaf.total
        leaf.samples_since_split_attempt = 0
        leaf.last_split_attempt_total = n

        pre = leaf.class_counts
        suggestions = []
        for f in sorted(leaf.observers):
            s = leaf.observers[f].best_split(f, pre, self.n_split_points)
            if s is not None:
                suggestions.append(s)
        suggestions.sort(key=lambda s: -s.merit)
        best = suggestions[0] if suggestions else None
        second_merit = suggestions[1].merit if len(suggestions) > 1 else 0.0

        n_classes = sum(1 for c in pre.values() if c > 0)
        eps = hoeffding_bound(math.log2(max(n_classes, 2)), self.delta, n)
        do_split = (
            best is not None
            and best.merit > 0
            and (best.merit - second_merit > eps or eps < self.tau)
        )

        if self.trace is not None:
            record = {
                "leaf": leaf.id,
                "n": n,
                "n_classes": n_classes,
                "best_feature": best.feature if best else None,
                "best_threshold": best.threshold if best else None,
                "best_merit": best.merit if best else None,
                "second_merit": second_merit,
                "epsilon": eps,
                "tau": self.tau,
                "split": do_split,
            }
            self.trace.write(json.dumps(record) + "\n")

        if do_split:
            self._install_split(leaf, best)

    def _install_split(self, leaf: LeafNode, s: SplitSuggestion) -> None:
        left_prior, right_prior = s.branches
        d = leaf.depth + 1
        node = SplitNode(
            id=leaf.id,
            feature=s.feature,
            threshold=s.threshold,
            left=LeafNode(next(self._ids), depth=d, prior=dict(left_prior)),
            right=LeafNode(next(self._ids), depth=d, prior=dict(right_prior)),
            depth=leaf.depth,
            class_counts=dict(leaf.class_counts),
        )
        self._replace(leaf, node)
        self.n_splits += 1

    def _replace(self, leaf: LeafNode, node: SplitNode) -> None:
        if self.root is leaf:
            self.root = node
            return
        stack = [self.root]
        while stack:
            cur = stack.pop()
            if not isinstance(cur, SplitNode):
                continue
            if cur.left is leaf:
                cur.left = node
                return
            if cur.right is leaf:
                cur.right = node
                return
            stack.extend((cur.left, cur.right))
        raise RuntimeError("leaf not found in tree")  # pragma: no cover
