import json

import numpy as np
import pytest

import volint as vi
from volint.cli import main


SYNTH = ["--synth-kind", "fgn", "--synth-n-stocks", "12",
         "--synth-length", "1024", "--synth-hurst", "0.8",
         "--synth-vol-scale", "0.4", "--synth-df", "3.0"]


def read_report(outdir):
    with open(outdir / "report.json") as fh:
        return json.load(fh)


def test_intervals_outputs(tmp_path):
    out = tmp_path / "iv"
    rc = main(["intervals", *SYNTH, "--thresholds", "2.0,2.5", "--seed", "5",
               "--out", str(out), "--jobs", "1", "--dump-intervals"])
    assert rc == 0
    for q in ("2", "2.5"):
        assert (out / f"pdf_q{q}.tsv").exists()
        assert (out / f"pdf_scaled_q{q}.tsv").exists()
        assert (out / f"pdf_shuffled_q{q}.tsv").exists()
    rows = (out / "intervals.tsv").read_text().strip().split("\n")
    ticker, q, tau = rows[0].split("\t")
    assert ticker.startswith("S")
    assert float(q) == 2.0
    assert int(tau) >= 1
    rep = read_report(out)
    assert "out" not in rep["config"] and "jobs" not in rep["config"]
    assert rep["config"]["thresholds"] == [2.0, 2.5]
    fits = rep["intervals"]["2"]["fits"]
    assert {"exponential", "power", "hill_gamma"} <= set(fits)
    assert fits["n_samples"] > 100


def test_conditional_outputs(tmp_path):
    out = tmp_path / "cond"
    rc = main(["conditional", *SYNTH, "--thresholds", "2.0", "--seed", "5",
               "--out", str(out), "--jobs", "1", "--octiles", "quantile"])
    assert rc == 0
    for k in range(1, 9):
        assert (out / f"cond_q2_Q{k}.tsv").exists()
    rep = read_report(out)
    block = rep["conditional"]["2"]
    assert len(block["octiles"]) == 8
    assert block["boundaries"][0] == 0.0
    assert block["boundaries"][-1] is None          # inf is not valid JSON
    counts = [row["count"] for row in block["octiles"]]
    assert sum(counts) == block["n_pairs"]
    assert min(counts) > 0                          # quantile mode populates all


def test_dfa_outputs(tmp_path):
    out = tmp_path / "dfa"
    rc = main(["dfa", *SYNTH, "--seed", "5", "--out", str(out), "--jobs", "1",
               "--dump-fluctuations"])
    assert rc == 0
    rep = read_report(out)
    assert rep["dfa"]["n_computed"] == 12
    assert 0.0 < rep["dfa"]["mean_alpha"] < 1.2
    assert (out / "dfa_alpha_by_lifetime.tsv").exists()
    assert (out / "dfa_alpha_by_volume.tsv").exists()
    fl = (out / "dfa_fluct_S00000.tsv").read_text().strip().split("\n")
    n0, f0 = fl[0].split("\t")
    assert int(n0) >= 4
    assert float(f0) > 0


def test_factors_outputs(tmp_path):
    out = tmp_path / "fac"
    rc = main(["factors", *SYNTH, "--q", "2.0", "--seed", "5",
               "--out", str(out), "--jobs", "1"])
    assert rc == 0
    rep = read_report(out)
    corr = rep["factors"]["correlations"]
    assert corr["n_stocks"] == 12
    # every synthetic stock has the same lifetime, so that factor is
    # constant and its correlation row must be masked out
    assert "lifetime" in corr["degenerate"]
    assert corr["log"][0][2] is None
    assert (out / "gamma_by_lifetime.tsv").exists()
    assert (out / "gamma_by_volume.tsv").exists()
    assert (out / "scatter_volume_vs_trading_value.tsv").exists()
    header_free = (out / "gamma_by_volume.tsv").read_text().strip().split("\n")
    assert len(header_free[0].split("\t")) == 6


def test_synth_roundtrip(tmp_path, capsys):
    out = tmp_path / "corpus"
    rc = main(["synth", "--kind", "cascade", "--n-stocks", "3",
               "--length", "512", "--sigma", "0.4", "--df", "3.0",
               "--seed", "9", "--out", str(out)])
    assert rc == 0
    assert "wrote 3 stocks" in capsys.readouterr().out
    with open(out / "planted.json") as fh:
        planted = json.load(fh)
    assert set(planted) == {"S00000", "S00001", "S00002"}
    corpus = vi.load_corpus(out, min_lifetime=512)
    assert len(corpus) == 3


def test_conflicting_sources_exit_2(tmp_path, capsys):
    rc = main(["intervals", *SYNTH, "--data-dir", str(tmp_path),
               "--out", str(tmp_path / "x"), "--jobs", "1"])
    assert rc == 2
    assert "configuration error" in capsys.readouterr().err


def test_no_source_exit_2(tmp_path):
    assert main(["intervals", "--out", str(tmp_path / "x"), "--jobs", "1"]) == 2


def test_missing_data_dir_exit_3(tmp_path):
    rc = main(["intervals", "--data-dir", str(tmp_path / "nope"),
               "--out", str(tmp_path / "x"), "--jobs", "1"])
    assert rc == 3


def test_unreachable_threshold_exit_4(tmp_path):
    out = tmp_path / "empty"
    rc = main(["intervals", *SYNTH, "--thresholds", "50.0", "--seed", "5",
               "--out", str(out), "--jobs", "1"])
    assert rc == 4
    rep = read_report(out)      # report still written for inspection
    assert rep["intervals"]["50"] == {"empty": True}


def test_data_dir_source(tmp_path):
    src = tmp_path / "src"
    main(["synth", "--kind", "iid", "--n-stocks", "4", "--length", "600",
          "--dist", "student_t", "--df", "3.0", "--seed", "11",
          "--out", str(src)])
    out = tmp_path / "res"
    rc = main(["intervals", "--data-dir", str(src), "--thresholds", "2.0",
               "--min-lifetime", "600", "--out", str(out), "--jobs", "1"])
    assert rc == 0
    assert (out / "pdf_q2.tsv").exists()


def test_jobs_do_not_change_bytes(tmp_path):
    outs = []
    for tag, jobs in (("a", 1), ("b", 2)):
        out = tmp_path / tag
        assert main(["conditional", *SYNTH, "--thresholds", "2.0",
                     "--seed", "5", "--out", str(out), "--jobs",
                     str(jobs)]) == 0
        outs.append(out)
    a, b = outs
    fa = sorted(p.name for p in a.iterdir())
    fb = sorted(p.name for p in b.iterdir())
    assert fa == fb
    for name in fa:
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_price_series_mode(tmp_path):
    out = tmp_path / "px"
    rc = main(["intervals", *SYNTH, "--series", "price", "--thresholds",
               "2.0", "--seed", "5", "--out", str(out), "--jobs", "1"])
    # constant synthetic closes are degenerate for every stock: nothing
    # to pool, but the run must still leave a report behind
    assert rc == 4
    assert (out / "report.json").exists()
