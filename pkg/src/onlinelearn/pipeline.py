"""Sequential composition of estimators.

>>> from onlinelearn.baselines import LogisticRegression, StandardScaler
>>> model = StandardScaler() | LogisticRegression()
>>> len(model.steps)
2
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Optional

from .core import Classifier, Estimator, Label, Transformer, argmax_label

__all__ = ["Pipeline", "compose"]


class Pipeline(Estimator):
    """A chain of transformers ending in any estimator.

    Every step but the last must be a :class:`Transformer`. During
    ``learn_one`` each transformer is updated with the representation it
    receives and then transforms it for the next step; only the final step
    sees the label. Predictions pass the sample through the transformers
    without updating them.

    Nested pipelines are flattened, so ``(a | b) | c`` and ``a | (b | c)``
    hold the same step list.
    """

    def __init__(self, *steps: Estimator):
        flat: list[Estimator] = []
        for step in steps:
            if isinstance(step, Pipeline):
                flat.extend(step.steps)
            else:
                flat.append(step)
        if not flat:
            raise ValueError("a pipeline needs at least one step")
        for i, step in enumerate(flat):
            if not isinstance(step, Estimator):
                raise TypeError(f"step {i} ({step!r}) is not an estimator")
            if i < len(flat) - 1 and not isinstance(step, Transformer):
                raise TypeError(
                    f"step {i} ({type(step).__name__}) is not a transformer; "
                    "only the last step of a pipeline may be a non-transformer"
                )
        self._steps = tuple(flat)

    @property
    def steps(self) -> tuple[Estimator, ...]:
        return self._steps

    @property
    def final(self) -> Estimator:
        return self._steps[-1]

    def __repr__(self) -> str:
        return " | ".join(type(s).__name__ for s in self._steps)

    def __or__(self, other: Estimator) -> Pipeline:
        return Pipeline(self, other)

    def __ror__(self, other: Estimator) -> Pipeline:
        return Pipeline(other, self)

    def _transform_head(self, x: Mapping) -> Mapping:
        for step in self._steps[:-1]:
            x = step.transform_one(x)
        return x

    def learn_one(self, x: Mapping, y: Label = None) -> None:
        for step in self._steps[:-1]:
            step.learn_one(x)
            x = step.transform_one(x)
        if isinstance(self.final, Transformer):
            self.final.learn_one(x)
        else:
            self.final.learn_one(x, y)

    def transform_one(self, x: Mapping) -> Mapping:
        if not isinstance(self.final, Transformer):
            raise TypeError(f"final step {type(self.final).__name__} is not a transformer")
        return self.final.transform_one(self._transform_head(x))

    def predict_proba_one(self, x: Mapping) -> dict[Label, float]:
        if not isinstance(self.final, Classifier):
            raise TypeError(f"final step {type(self.final).__name__} is not a classifier")
        return self.final.predict_proba_one(self._transform_head(x))

    def predict_one(self, x: Mapping) -> Optional[Label]:
        return argmax_label(self.predict_proba_one(x))

    def learn_many(self, batch) -> None:
        if isinstance(self.final, Transformer):
            for row in batch:
                self.learn_one(row[0] if isinstance(row, tuple) else row)
            return
        super().learn_many(batch)

    def transform_many(self, xs):
        return [self.transform_one(x) for x in xs]

    def predict_proba_many(self, xs):
        return [self.predict_proba_one(x) for x in xs]

    def predict_many(self, xs):
        return [self.predict_one(x) for x in xs]


def compose(*steps: Estimator) -> Pipeline:
    """Build a :class:`Pipeline` from ``steps``; same as chaining with ``|``."""
    return Pipeline(*steps)
