import os
from pathlib import Path

import pytest

from onlinelearn.streams import Waveform, take


@pytest.fixture
def waveform_rows():
    return list(take(Waveform(seed=7), 300))


@pytest.fixture
def binary_rows():
    # two-class stream on three features with a feature that appears late
    rows = []
    for i, (x, y) in enumerate(take(Waveform(seed=3), 400)):
        if y == 2:
            continue
        feats = {k: x[k] for k in ("3", "10", "17")}
        if i > 150:
            feats["late"] = x["5"]
        rows.append((feats, "pos" if y == 1 else "neg"))
    return rows


def elec2_path():
    """Path of the full Elec2 CSV, taken from the ELEC2_PATH environment variable."""
    p = os.environ.get("ELEC2_PATH")
    return Path(p) if p else None


_ACCEPTANCE_RESULTS: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    label = dict(report.user_properties).get("criterion")
    if label is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        detail = dict(report.user_properties).get("detail", "")
        _ACCEPTANCE_RESULTS.append(("PASS" if report.passed else "FAIL", label, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for status, label, detail in _ACCEPTANCE_RESULTS:
        line = f"[{status}] {label}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
