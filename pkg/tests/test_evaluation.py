import io
import json

import pytest

from onlinelearn import GaussianNB, HoeffdingTreeClassifier, Waveform, take
from onlinelearn.core import Classifier
from onlinelearn.evaluation import Accuracy, StreamError, progressive_val_score, replay_accuracy


def test_accuracy_examples():
    m = Accuracy()
    assert m.get() == 0.0
    for t, p in [(1, 1), (0, 0), (1, 0), (2, 2)]:
        m.update(t, p)
    assert m.get() == 0.75
    assert m.cm[1][0] == 1
    assert repr(m) == "Accuracy: 75.00%"


class CallLog(Classifier):
    """Majority-class model that records the order of calls."""

    def __init__(self):
        self.calls = []
        self.counts = {}

    def predict_proba_one(self, x):
        self.calls.append(("predict", x["i"]))
        total = sum(self.counts.values())
        return {c: n / total for c, n in self.counts.items()}

    def learn_one(self, x, y=None):
        self.calls.append(("learn", x["i"]))
        self.counts[y] = self.counts.get(y, 0) + 1


def test_test_then_train_order():
    stream = [({"i": float(i)}, i % 2) for i in range(5)]
    model = CallLog()
    progressive_val_score(stream, model)
    expected = []
    for i in range(5):
        expected += [("predict", float(i)), ("learn", float(i))]
    assert model.calls == expected


def test_empty_stream():
    r = progressive_val_score([], GaussianNB())
    assert (r.n_samples, r.n_scored, r.value) == (0, 0, 0.0)


def test_cold_start_single_sample():
    r = progressive_val_score(take(Waveform(seed=1), 1), HoeffdingTreeClassifier())
    assert (r.n_samples, r.n_scored) == (1, 0)


def test_report_fields():
    r = progressive_val_score(take(Waveform(seed=2), 200), GaussianNB())
    assert r.n_samples == 200
    assert r.n_scored == 199
    assert r.n_scored <= r.n_samples
    assert r.learn_time > 0 and r.predict_time > 0
    assert r.metric.total == r.n_scored


def test_replay_determinism():
    a = progressive_val_score(take(Waveform(seed=3), 500), HoeffdingTreeClassifier())
    b = progressive_val_score(take(Waveform(seed=3), 500), HoeffdingTreeClassifier())
    assert a.value == b.value
    assert a.metric.correct == b.metric.correct


def test_metric_equals_log_replay():
    log = io.StringIO()
    r = progressive_val_score(take(Waveform(seed=4), 400), HoeffdingTreeClassifier(), log=log)
    lines = log.getvalue().splitlines()
    assert len(lines) == 400
    first = json.loads(lines[0])
    assert first == {"index": 0, "true": first["true"], "predicted": None}
    assert replay_accuracy(lines) == r.value


def test_stream_errors_carry_index():
    def broken():
        yield {"a": 1.0}, "A"
        yield {"a": 2.0}, "B"
        raise ValueError("bad record")

    with pytest.raises(StreamError, match="sample 2") as err:
        progressive_val_score(broken(), GaussianNB())
    assert err.value.index == 2
