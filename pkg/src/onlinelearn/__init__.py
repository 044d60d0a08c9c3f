"""Instance-incremental machine learning on dict-like feature vectors."""

from .baselines import GaussianNB, LogisticRegression, StandardScaler
from .core import Classifier, Estimator, Transformer, argmax_label, normalize
from .evaluation import Accuracy, EvalReport, progressive_val_score
from .featmap import FeatureVector, dot
from .hoeffding import HoeffdingTreeClassifier
from .pipeline import Pipeline, compose
from .streams import Waveform, load_elec2, take

__all__ = [
    "Accuracy",
    "Classifier",
    "Estimator",
    "EvalReport",
    "FeatureVector",
    "GaussianNB",
    "HoeffdingTreeClassifier",
    "LogisticRegression",
    "Pipeline",
    "StandardScaler",
    "Transformer",
    "Waveform",
    "argmax_label",
    "compose",
    "dot",
    "load_elec2",
    "normalize",
    "progressive_val_score",
    "take",
]

__version__ = "0.1.0"
