"""Benchmark harness: prequential accuracy and learn/predict timings.

Run ``bench run --dataset waveform --seed 42 --count 1000 --models ht`` or
``bench run --dataset elec2 --data-path elec2.csv``. Each (model, dataset)
cell is evaluated ``repeats`` times on a fresh model; the accuracy of the
first repeat is reported (every repeat must agree) together with the mean
and standard deviation of the cumulative learn and predict times.
"""

from __future__ import annotations

import argparse
import csv
import io
import statistics
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from .baselines import GaussianNB, LogisticRegression, StandardScaler
from .evaluation import progressive_val_score
from .hoeffding import HoeffdingTreeClassifier
from .streams import Waveform, load_elec2, take

__all__ = ["MODELS", "BenchConfig", "BenchCell", "BenchReport", "run_benchmark", "render_table", "parse_csv", "main"]

MODELS: dict[str, Callable] = {
    "gnb": GaussianNB,
    "lr": lambda: StandardScaler() | LogisticRegression(),
    "ht": HoeffdingTreeClassifier,
}


@dataclass
class BenchConfig:
    models: tuple[str, ...] = ("gnb", "lr", "ht")
    dataset: str = "waveform"
    data_path: Optional[str] = None
    seed: int = 42
    count: int = 1000
    repeats: int = 7
    format: str = "markdown"
    single_thread: bool = False

    def __post_init__(self):
        self.models = tuple(self.models)
        if not self.models:
            raise ValueError("at least one model is required")
        unknown = [m for m in self.models if m not in MODELS]
        if unknown:
            raise ValueError(f"unknown model(s): {', '.join(unknown)}; choose from {', '.join(MODELS)}")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if self.dataset not in ("elec2", "waveform"):
            raise ValueError(f"unknown dataset {self.dataset!r}")
        if self.dataset == "elec2" and not self.data_path:
            raise ValueError("--data-path is required for the elec2 dataset")
        if self.count < 0:
            raise ValueError("count must be nonnegative")
        if self.format not in ("markdown", "csv"):
            raise ValueError(f"unknown format {self.format!r}")

    @property
    def dataset_label(self) -> str:
        if self.dataset == "waveform":
            return f"waveform(seed={self.seed},n={self.count})"
        return "elec2"

    def stream(self):
        if self.dataset == "waveform":
            return take(Waveform(seed=self.seed), self.count)
        return load_elec2(self.data_path)


@dataclass
class BenchCell:
    model: str
    dataset: str
    accuracy: float
    learn_mean: float
    learn_std: float
    predict_mean: float
    predict_std: float
    n_samples: int = 0
    learn_times: list = field(default_factory=list, repr=False)
    predict_times: list = field(default_factory=list, repr=False)


@dataclass
class BenchReport:
    cells: list[BenchCell] = field(default_factory=list)


def _std(xs: list[float]) -> float:
    return statistics.pstdev(xs) if len(xs) > 1 else 0.0


def _run_cell(model_name: str, cfg: BenchConfig, data) -> BenchCell:
    accuracy = None
    n = 0
    learn, predict = [], []
    for _ in range(cfg.repeats):
        report = progressive_val_score(data, MODELS[model_name]())
        if accuracy is None:
            accuracy, n = report.value, report.n_samples
        elif report.value != accuracy:
            raise RuntimeError(f"{model_name}: accuracy changed between repeats ({accuracy} vs {report.value})")
        learn.append(report.learn_time)
        predict.append(report.predict_time)
    return BenchCell(
        model=model_name,
        dataset=cfg.dataset_label,
        accuracy=accuracy,
        learn_mean=statistics.fmean(learn),
        learn_std=_std(learn),
        predict_mean=statistics.fmean(predict),
        predict_std=_std(predict),
        n_samples=n,
        learn_times=learn,
        predict_times=predict,
    )


def run_benchmark(cfg: BenchConfig) -> BenchReport:
    # Materialise the stream once so decoding stays out of the timings.
    data = list(cfg.stream())
    if cfg.single_thread or len(cfg.models) == 1:
        cells = [_run_cell(m, cfg, data) for m in cfg.models]
    else:
        with ThreadPoolExecutor(max_workers=len(cfg.models)) as pool:
            cells = list(pool.map(lambda m: _run_cell(m, cfg, data), cfg.models))
    return BenchReport(cells)


CSV_HEADER = ["model", "dataset", "accuracy", "learn_mean", "learn_std", "predict_mean", "predict_std"]
MD_HEADER = ["model", "dataset", "accuracy %", "learn s", "predict s"]


def render_table(report: BenchReport, fmt: str = "markdown") -> str:
    """Render a report as a markdown table or as CSV.

    CSV writes the accuracy with full precision and the times with six
    significant digits.
    """
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for c in report.cells:
            w.writerow([
                c.model,
                c.dataset,
                repr(c.accuracy),
                f"{c.learn_mean:.6g}",
                f"{c.learn_std:.6g}",
                f"{c.predict_mean:.6g}",
                f"{c.predict_std:.6g}",
            ])
        return buf.getvalue()
    if fmt != "markdown":
        raise ValueError(f"unknown format {fmt!r}")
    lines = ["| " + " | ".join(MD_HEADER) + " |", "|" + "|".join("---" for _ in MD_HEADER) + "|"]
    for c in report.cells:
        lines.append(
            f"| {c.model} | {c.dataset} | {c.accuracy * 100:.2f} "
            f"| {c.learn_mean:.2f} ± {c.learn_std:.2f} | {c.predict_mean:.2f} ± {c.predict_std:.2f} |"
        )
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> BenchReport:
    """Inverse of ``render_table(report, "csv")``."""
    rows = list(csv.DictReader(io.StringIO(text)))
    return BenchReport([
        BenchCell(
            model=r["model"],
            dataset=r["dataset"],
            accuracy=float(r["accuracy"]),
            learn_mean=float(r["learn_mean"]),
            learn_std=float(r["learn_std"]),
            predict_mean=float(r["predict_mean"]),
            predict_std=float(r["predict_std"]),
        )
        for r in rows
    ])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench", description="Prequential benchmark of streaming classifiers.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run the model x dataset benchmark")
    run.add_argument("--dataset", choices=["elec2", "waveform"], required=True)
    run.add_argument("--data-path", help="Elec2 CSV file (required for --dataset elec2)")
    run.add_argument("--seed", type=int, default=42, help="waveform seed")
    run.add_argument("--count", type=int, default=1000, help="number of waveform samples")
    run.add_argument(
        "--models",
        help="comma-separated subset of gnb,lr,ht (default: all three for elec2; gnb,ht for the three-class waveform)",
    )
    run.add_argument("--repeats", type=int, default=7)
    run.add_argument("--format", choices=["markdown", "csv"], default="markdown")
    run.add_argument("--out", help="write the table here instead of stdout")
    run.add_argument("--single-thread", action="store_true", help="run every cell sequentially")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    models = args.models or ("gnb,lr,ht" if args.dataset == "elec2" else "gnb,ht")
    try:
        cfg = BenchConfig(
            models=tuple(m.strip() for m in models.split(",") if m.strip()),
            dataset=args.dataset,
            data_path=args.data_path,
            seed=args.seed,
            count=args.count,
            repeats=args.repeats,
            format=args.format,
            single_thread=args.single_thread,
        )
        table = render_table(run_benchmark(cfg), cfg.format)
    except (ValueError, OSError, RuntimeError) as e:
        print(f"bench: error: {e}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(table)
    else:
        sys.stdout.write(table)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
