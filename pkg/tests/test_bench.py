import pytest

from onlinelearn.bench import BenchCell, BenchConfig, BenchReport, main, parse_csv, render_table, run_benchmark


def test_config_validation():
    with pytest.raises(ValueError, match="unknown model"):
        BenchConfig(models=("gnb", "svm"))
    with pytest.raises(ValueError):
        BenchConfig(models=())
    with pytest.raises(ValueError):
        BenchConfig(repeats=0)
    with pytest.raises(ValueError, match="data-path"):
        BenchConfig(dataset="elec2")


def test_repeats_agree_on_accuracy():
    cfg = BenchConfig(models=("gnb", "ht"), dataset="waveform", seed=1, count=300, repeats=2)
    report = run_benchmark(cfg)
    assert [c.model for c in report.cells] == ["gnb", "ht"]
    for c in report.cells:
        assert len(c.learn_times) == 2
        assert c.learn_std >= 0 and c.learn_mean > 0 and c.predict_mean > 0
        assert c.n_samples == 300


def test_threaded_and_single_thread_agree():
    kw = dict(models=("gnb", "ht"), dataset="waveform", seed=8, count=300, repeats=1)
    a = run_benchmark(BenchConfig(**kw))
    b = run_benchmark(BenchConfig(single_thread=True, **kw))
    assert [c.accuracy for c in a.cells] == [c.accuracy for c in b.cells]


def test_render_empty_report_is_header_only():
    md = render_table(BenchReport(), "markdown")
    assert md.splitlines() == ["| model | dataset | accuracy % | learn s | predict s |", "|---|---|---|---|---|"]
    assert render_table(BenchReport(), "csv").splitlines() == [
        "model,dataset,accuracy,learn_mean,learn_std,predict_mean,predict_std"
    ]


def _cell(**kw):
    base = dict(model="gnb", dataset="elec2", accuracy=0.7287123456, learn_mean=0.3212345678,
                learn_std=0.0123456789, predict_mean=3.27, predict_std=0.13)
    base.update(kw)
    return BenchCell(**base)


def test_render_one_row():
    md = render_table(BenchReport([_cell()]), "markdown").splitlines()
    assert len(md) == 3
    assert md[2] == "| gnb | elec2 | 72.87 | 0.32 ± 0.01 | 3.27 ± 0.13 |"


def test_csv_round_trip():
    report = BenchReport([_cell(), _cell(model="ht", dataset="waveform(seed=42,n=1000)", accuracy=0.82)])
    back = parse_csv(render_table(report, "csv"))
    for a, b in zip(report.cells, back.cells):
        assert (a.model, a.dataset) == (b.model, b.dataset)
        assert a.accuracy == b.accuracy
        for f in ("learn_mean", "learn_std", "predict_mean", "predict_std"):
            assert getattr(b, f) == pytest.approx(getattr(a, f), rel=5e-6)


def test_cli_waveform(capsys, tmp_path):
    out = tmp_path / "t.csv"
    code = main(["run", "--dataset", "waveform", "--seed", "42", "--count", "200",
                 "--models", "ht", "--repeats", "2", "--format", "csv", "--out", str(out), "--single-thread"])
    assert code == 0
    report = parse_csv(out.read_text())
    assert [c.model for c in report.cells] == ["ht"]


def test_cli_errors_exit_nonzero(capsys, tmp_path):
    assert main(["run", "--dataset", "elec2", "--data-path", str(tmp_path / "nope.csv")]) != 0
    assert "not found" in capsys.readouterr().err
    assert main(["run", "--dataset", "waveform", "--models", "xgb"]) != 0
    assert main(["run", "--dataset", "waveform", "--models", "lr", "--count", "50", "--repeats", "1"]) != 0
    assert "binary" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["run"])


def test_rendered_accuracy_equals_eval_report():
    from onlinelearn import HoeffdingTreeClassifier, Waveform, progressive_val_score, take

    cfg = BenchConfig(models=("ht",), dataset="waveform", seed=9, count=300, repeats=1)
    report = run_benchmark(cfg)
    direct = progressive_val_score(take(Waveform(seed=9), 300), HoeffdingTreeClassifier())
    assert parse_csv(render_table(report, "csv")).cells[0].accuracy == direct.value
