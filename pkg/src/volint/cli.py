"""Command-line pipelines: corpus in, plot-ready TSVs plus report.json out.

Subcommands: intervals, conditional, dfa, factors, synth. Every pipeline is
a parallel map over stocks followed by a deterministic ticker-ordered
reduction, so the --jobs value can never change any output byte. The
report deliberately omits execution environment (paths, parallelism) for
the same reason.

Exit codes: 0 success, 2 configuration error, 3 data error,
4 insufficient statistics everywhere (nothing useful produced).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from itertools import combinations
from pathlib import Path

import numpy as np

from .conditional import (N_OCTILES, conditional_pdfs, consecutive_pairs,
                          memory_summary, octile_boundaries)
from .dfa import DEFAULT_ORDER, alpha_by_factor, dfa, stock_alpha
from .errors import (ConfigError, DataError, DegenerateSeriesError,
                     FitShapeError, InsufficientStatisticsError,
                     InsufficientTailError)
from .factors import (DEFAULT_Q, FACTORS, bin_stocks, compute_factors,
                      factor_correlations, factor_value, gamma_by_factor,
                      make_edges)
from .fitting import (DEFAULT_BINS_PER_DECADE, DEFAULT_X_MIN, fit_exponential,
                      fit_power_tail, hill_gamma, log_bin,
                      power_fit_sensitivity, write_pdf_tsv)
from .ingest import DEFAULT_MIN_LIFETIME, load_corpus, write_corpus
from .intervals import (DEFAULT_THRESHOLDS, extract_intervals, pool_scaled,
                        shuffle_control)
from .seeds import derive_seed
from .synth import KINDS, homogeneous_rule, synth_corpus
from .volatility import log_returns, normalize_volatility

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_EMPTY = 4


@dataclass(frozen=True)
class RunConfig:
    """Resolved parameters of one pipeline run."""

    command: str
    data_dir: str | None
    synth: dict | None
    series: str
    thresholds: tuple
    seed: int
    octiles: str
    bins_per_decade: int
    x_min: float
    q: float
    out: str
    jobs: int
    min_lifetime: int
    strict: bool
    shuffled: bool
    dump_intervals: bool
    dump_fluctuations: bool
    order: int

    def echo(self) -> dict:
        """Deterministic config subset recorded in the report.

        Paths and parallelism are excluded on purpose: two runs that
        differ only in --jobs or output location must produce identical
        reports.
        """
        return {
            "command": self.command,
            "source": ({"type": "synth", **self.synth} if self.synth
                       else {"type": "data-dir"}),
            "series": self.series,
            "thresholds": list(self.thresholds),
            "seed": self.seed,
            "octiles": self.octiles,
            "bins_per_decade": self.bins_per_decade,
            "x_min": self.x_min,
            "q": self.q,
            "min_lifetime": self.min_lifetime,
            "strict": self.strict,
            "shuffled": self.shuffled,
        }


# ---------------------------------------------------------------------------
# argument plumbing

def _parse_thresholds(text: str) -> tuple:
    try:
        qs = tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise ConfigError(f"bad thresholds {text!r}: {exc}") from exc
    if not qs or any(q <= 0 for q in qs):
        raise ConfigError(f"thresholds must be positive, got {text!r}")
    return qs


def _add_source_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data-dir", help="directory of <TICKER>.csv files")
    p.add_argument("--synth-kind", choices=KINDS,
                   help="generate the corpus instead of loading one")
    p.add_argument("--synth-n-stocks", type=int, default=100)
    p.add_argument("--synth-length", type=int, default=5000)
    p.add_argument("--synth-hurst", type=float)
    p.add_argument("--synth-levels", type=int)
    p.add_argument("--synth-sigma", type=float)
    p.add_argument("--synth-vol-scale", type=float)
    p.add_argument("--synth-df", type=float)
    p.add_argument("--synth-kappa", type=float)
    p.add_argument("--synth-dist",
                   choices=("normal", "student_t", "powered_normal"))


def _add_common_args(p: argparse.ArgumentParser) -> None:
    _add_source_args(p)
    p.add_argument("--series", choices=("volume", "price"), default="volume")
    p.add_argument("--thresholds", default=",".join(str(q) for q in DEFAULT_THRESHOLDS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--min-lifetime", type=int, default=DEFAULT_MIN_LIFETIME)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--bins-per-decade", type=int, default=DEFAULT_BINS_PER_DECADE)
    p.add_argument("--x-min", type=float, default=DEFAULT_X_MIN)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="volint",
        description="Threshold return-interval statistics for volatility series")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("intervals", help="interval PDFs, scaling, tail fits")
    _add_common_args(p)
    p.add_argument("--dump-intervals", action="store_true",
                   help="also write ticker/q/tau rows to intervals.tsv")
    p.set_defaults(func=cmd_intervals)

    p = sub.add_parser("conditional", help="conditional PDFs over tau0 octiles")
    _add_common_args(p)
    p.add_argument("--octiles", choices=("geometric", "quantile"),
                   default="geometric")
    p.add_argument("--shuffled", action="store_true",
                   help="analyze shuffled volatility instead")
    p.set_defaults(func=cmd_conditional)

    p = sub.add_parser("dfa", help="long-term correlation exponents by factor")
    _add_common_args(p)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--shuffled", action="store_true")
    p.add_argument("--dump-fluctuations", action="store_true",
                   help="write per-stock n/F(n) curves")
    p.set_defaults(func=cmd_dfa)

    p = sub.add_parser("factors", help="factor bins, tail exponents, correlations")
    _add_common_args(p)
    p.add_argument("--q", type=float, default=DEFAULT_Q,
                   help="threshold for the per-bin tail fits")
    p.set_defaults(func=cmd_factors)

    p = sub.add_parser("synth", help="write a synthetic corpus to CSV files")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n-stocks", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--hurst", type=float)
    p.add_argument("--levels", type=int)
    p.add_argument("--sigma", type=float)
    p.add_argument("--vol-scale", type=float)
    p.add_argument("--df", type=float)
    p.add_argument("--kappa", type=float)
    p.add_argument("--dist", choices=("normal", "student_t", "powered_normal"))
    p.set_defaults(func=cmd_synth)
    return ap


def _synth_params(kind: str, hurst, levels, sigma, vol_scale, df, kappa,
                  dist) -> dict:
    """Translate flat flags into GeneratorSpec params for one kind."""
    if kind == "iid":
        params = {"dist": dist or "normal"}
        if params["dist"] == "student_t":
            if df is None:
                raise ConfigError("student_t needs --df")
            params["df"] = df
        elif params["dist"] == "powered_normal":
            if kappa is None:
                raise ConfigError("powered_normal needs --kappa")
            params["kappa"] = kappa
        return params
    if kind == "fgn":
        if hurst is None:
            raise ConfigError("fgn needs --hurst")
        params = {"hurst": hurst}
        if vol_scale is not None:
            params["vol_scale"] = vol_scale
        if df is not None:
            params["noise_df"] = df
        return params
    params = {}
    if levels is not None:
        params["levels"] = levels
    if sigma is not None:
        params["sigma"] = sigma
    if df is not None:
        params["noise_df"] = df
    return params


def _config_from_args(args) -> RunConfig:
    if args.data_dir and args.synth_kind:
        raise ConfigError("give either --data-dir or --synth-kind, not both")
    if not args.data_dir and not args.synth_kind:
        raise ConfigError("no data source: give --data-dir or --synth-kind")
    synth = None
    if args.synth_kind:
        if args.synth_n_stocks < 1 or args.synth_length < 2:
            raise ConfigError("synthetic corpus needs n_stocks >= 1, length >= 2")
        synth = {
            "kind": args.synth_kind,
            "n_stocks": args.synth_n_stocks,
            "length": args.synth_length,
            "params": _synth_params(
                args.synth_kind, args.synth_hurst, args.synth_levels,
                args.synth_sigma, args.synth_vol_scale, args.synth_df,
                args.synth_kappa, args.synth_dist),
        }
    if args.bins_per_decade < 1:
        raise ConfigError("--bins-per-decade must be >= 1")
    if args.jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    return RunConfig(
        command=args.command,
        data_dir=args.data_dir,
        synth=synth,
        series=args.series,
        thresholds=_parse_thresholds(args.thresholds),
        seed=args.seed,
        octiles=getattr(args, "octiles", "geometric"),
        bins_per_decade=args.bins_per_decade,
        x_min=args.x_min,
        q=getattr(args, "q", DEFAULT_Q),
        out=args.out,
        jobs=args.jobs,
        min_lifetime=args.min_lifetime,
        strict=args.strict,
        shuffled=getattr(args, "shuffled", False),
        dump_intervals=getattr(args, "dump_intervals", False),
        dump_fluctuations=getattr(args, "dump_fluctuations", False),
        order=getattr(args, "order", DEFAULT_ORDER),
    )


def _resolve_corpus(cfg: RunConfig):
    if cfg.data_dir:
        corpus = load_corpus(cfg.data_dir, cfg.min_lifetime, cfg.strict)
        if len(corpus) == 0:
            raise DataError(f"no stock in {cfg.data_dir} passed the "
                            f"lifetime filter ({cfg.min_lifetime})")
        return corpus
    s = cfg.synth
    rule = homogeneous_rule(s["kind"], s["length"], s["params"], cfg.seed)
    corpus, _ = synth_corpus(s["n_stocks"], rule)
    return corpus


def _outdir(cfg: RunConfig) -> Path:
    out = Path(cfg.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out}: {exc}") from exc
    return out


# ---------------------------------------------------------------------------
# parallel map plumbing

def _pmap(fn, items, jobs: int):
    """Order-preserving map, process-parallel when jobs > 1."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    chunk = max(1, len(items) // (jobs * 4))
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=chunk))


def _stock_intervals(stock, qs, series_kind, master_seed, with_shuffled):
    """Per-stock worker: volatility once, intervals per threshold."""
    col = stock.volume if series_kind == "volume" else stock.close
    out = {"ticker": stock.ticker, "n_dropped": 0, "degenerate": False,
           "by_q": {}, "shuffled_by_q": {}}
    try:
        r = log_returns(col)
        out["n_dropped"] = r.n_dropped
        v = normalize_volatility(r)
    except DegenerateSeriesError:
        out["degenerate"] = True
        return out
    for q in qs:
        out["by_q"][q] = extract_intervals(v, q)
    if with_shuffled:
        sv = shuffle_control(v, derive_seed(master_seed, stock.ticker, "shuffle"))
        for q in qs:
            out["shuffled_by_q"][q] = extract_intervals(sv, q)
    return out


def _stock_dfa(stock, series_kind, order, shuffled, master_seed, keep_curve):
    out = {"ticker": stock.ticker, "alpha": None, "flagged": False, "curve": None}
    col = stock.volume if series_kind == "volume" else stock.close
    try:
        v = normalize_volatility(log_returns(col))
        if shuffled:
            v = shuffle_control(v, derive_seed(master_seed, stock.ticker, "shuffle"))
        curve = dfa(v.values, order=order)
        out["alpha"] = curve.alpha
        out["flagged"] = curve.alpha_flagged
        if keep_curve:
            out["curve"] = (curve.window_sizes, curve.fluctuations)
    except (DegenerateSeriesError, DataError):
        pass
    return out


# ---------------------------------------------------------------------------
# formatting

def _fmt(x) -> str:
    if x is None:
        return "nan"
    x = float(x)
    return "nan" if math.isnan(x) else f"{x:.10g}"


def _qtag(q: float) -> str:
    return f"{q:g}"


def _jclean(obj):
    """Make a report JSON-safe and deterministic (NaN -> null)."""
    if isinstance(obj, dict):
        return {str(k): _jclean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jclean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jclean(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def _write_report(outdir: Path, report: dict) -> None:
    with open(outdir / "report.json", "w") as fh:
        json.dump(_jclean(report), fh, sort_keys=True, indent=2)
        fh.write("\n")


def _fit_block(values, cfg: RunConfig) -> dict:
    """All fits of one pooled scaled sample, null where a fit cannot run."""
    pdf = log_bin(values, cfg.bins_per_decade)
    block = {"n_samples": int(values.size)}
    try:
        f = fit_power_tail(pdf, cfg.x_min)
        block["power"] = {"gamma": f.gamma, "stderr": f.stderr,
                          "r2": f.r_squared, "x_min": f.x_min,
                          "n_tail": f.n_tail}
    except InsufficientTailError:
        block["power"] = None
    block["power_x_min_grid"] = power_fit_sensitivity(pdf)
    try:
        e = fit_exponential(pdf)
        block["exponential"] = {"a": e.a, "stderr": e.stderr,
                                "r2": e.r_squared}
    except (InsufficientTailError, FitShapeError):
        block["exponential"] = None
    try:
        block["hill_gamma"] = hill_gamma(values, cfg.x_min)
    except InsufficientTailError:
        block["hill_gamma"] = None
    return block


# ---------------------------------------------------------------------------
# subcommands

def cmd_intervals(args) -> int:
    cfg = _config_from_args(args)
    corpus = _resolve_corpus(cfg)
    outdir = _outdir(cfg)
    worker = partial(_stock_intervals, qs=cfg.thresholds,
                     series_kind=cfg.series, master_seed=cfg.seed,
                     with_shuffled=True)
    results = _pmap(worker, list(corpus), cfg.jobs)

    report = {"config": cfg.echo(), "load_summary": corpus.summary.as_dict(),
              "n_stocks": len(corpus),
              "n_degenerate": sum(r["degenerate"] for r in results),
              "n_returns_dropped": sum(r["n_dropped"] for r in results),
              "intervals": {}}
    produced = False
    dump_rows = []
    for q in cfg.thresholds:
        tag = _qtag(q)
        items = [(r["ticker"], r["by_q"][q]) for r in results
                 if not r["degenerate"]]
        pooled = pool_scaled(items) if items else None
        if pooled is None or len(pooled) == 0:
            report["intervals"][tag] = {"empty": True}
            continue
        produced = True
        raw = np.concatenate([iv.taus for _, iv in items if iv.taus.size])
        sh_items = [(r["ticker"], r["shuffled_by_q"][q]) for r in results
                    if not r["degenerate"]]
        sh_pooled = pool_scaled(sh_items)

        write_pdf_tsv(log_bin(raw.astype(np.float64), cfg.bins_per_decade),
                      outdir / f"pdf_q{tag}.tsv")
        write_pdf_tsv(log_bin(pooled.values, cfg.bins_per_decade),
                      outdir / f"pdf_scaled_q{tag}.tsv")
        block = {"empty": False,
                 "n_stocks_used": len(pooled.tickers),
                 "n_insufficient": len(pooled.skipped),
                 "n_intervals": len(pooled),
                 "mean_tau": float(raw.mean()),
                 "fits": _fit_block(pooled.values, cfg)}
        if len(sh_pooled):
            write_pdf_tsv(log_bin(sh_pooled.values, cfg.bins_per_decade),
                          outdir / f"pdf_shuffled_q{tag}.tsv")
            block["shuffled_fits"] = _fit_block(sh_pooled.values, cfg)
        else:
            block["shuffled_fits"] = None
        report["intervals"][tag] = block

        if cfg.dump_intervals:
            for ticker, iv in items:
                for t in iv.taus:
                    dump_rows.append(f"{ticker}\t{tag}\t{int(t)}\n")

    if cfg.dump_intervals and produced:
        with open(outdir / "intervals.tsv", "w") as fh:
            fh.writelines(dump_rows)
    _write_report(outdir, report)
    if not produced:
        print("no threshold produced any interval", file=sys.stderr)
        return EXIT_EMPTY
    return EXIT_OK


def cmd_conditional(args) -> int:
    cfg = _config_from_args(args)
    corpus = _resolve_corpus(cfg)
    outdir = _outdir(cfg)
    worker = partial(_stock_intervals, qs=cfg.thresholds,
                     series_kind=cfg.series, master_seed=cfg.seed,
                     with_shuffled=cfg.shuffled)
    results = _pmap(worker, list(corpus), cfg.jobs)

    report = {"config": cfg.echo(), "load_summary": corpus.summary.as_dict(),
              "n_stocks": len(corpus), "conditional": {}}
    produced = False
    key = "shuffled_by_q" if cfg.shuffled else "by_q"
    for q in cfg.thresholds:
        tag = _qtag(q)
        items = [(r["ticker"], r[key][q]) for r in results
                 if not r["degenerate"]]
        tau0, tau = consecutive_pairs(items)
        if tau.size == 0:
            report["conditional"][tag] = {"empty": True}
            continue
        produced = True
        boundaries = octile_boundaries(tau0, cfg.octiles)
        cpdfs = conditional_pdfs(tau0, tau, boundaries, cfg.bins_per_decade)
        for cp in cpdfs:
            write_pdf_tsv(cp.pdf, outdir / f"cond_q{tag}_Q{cp.octile}.tsv")
        summary = memory_summary(tau0, tau, boundaries)
        report["conditional"][tag] = {
            "empty": False,
            "n_pairs": int(tau.size),
            "boundaries": [b if math.isfinite(b) else None for b in boundaries],
            "octiles": [{"octile": r.octile, "mean_scaled_tau": r.mean_scaled_tau,
                         "count": r.count,
                         "low_statistics": r.count < 50} for r in summary.rows],
            "spearman": summary.spearman,
        }
    _write_report(outdir, report)
    if not produced:
        print("no threshold produced any interval pair", file=sys.stderr)
        return EXIT_EMPTY
    return EXIT_OK


def cmd_dfa(args) -> int:
    cfg = _config_from_args(args)
    corpus = _resolve_corpus(cfg)
    outdir = _outdir(cfg)
    worker = partial(_stock_dfa, series_kind=cfg.series, order=cfg.order,
                     shuffled=cfg.shuffled, master_seed=cfg.seed,
                     keep_curve=cfg.dump_fluctuations)
    results = _pmap(worker, list(corpus), cfg.jobs)
    alphas = {r["ticker"]: r["alpha"] for r in results}
    good = np.array([a for a in alphas.values() if a is not None])
    if good.size == 0:
        _write_report(outdir, {"config": cfg.echo(), "dfa": {"empty": True}})
        print("no stock yielded a DFA exponent", file=sys.stderr)
        return EXIT_EMPTY

    if cfg.dump_fluctuations:
        for r in results:
            if r["curve"] is not None:
                ns, fs = r["curve"]
                with open(outdir / f"dfa_fluct_{r['ticker']}.tsv", "w") as fh:
                    for n, f in zip(ns, fs):
                        fh.write(f"{int(n)}\t{_fmt(f)}\n")

    fv = compute_factors(corpus)
    have_cap = any(f.mean_capitalization is not None for f in fv)
    report = {"config": cfg.echo(), "load_summary": corpus.summary.as_dict(),
              "n_stocks": len(corpus),
              "dfa": {"empty": False,
                      "mean_alpha": float(good.mean()),
                      "std_alpha": float(good.std()),
                      "n_computed": int(good.size),
                      "n_skipped": int(len(results) - good.size),
                      "n_flagged_above_1": sum(r["flagged"] for r in results),
                      "by_factor": {}}}
    for factor in FACTORS:
        if factor == "capitalization" and not have_cap:
            continue
        rows = alpha_by_factor(corpus, factor, series_kind=cfg.series,
                               order=cfg.order, alphas=alphas)
        with open(outdir / f"dfa_alpha_by_{factor}.tsv", "w") as fh:
            for r in rows:
                fh.write(f"{_fmt(r.lo)}\t{_fmt(r.hi)}\t{_fmt(r.mean_alpha)}"
                         f"\t{_fmt(r.std_alpha)}\t{r.count}\n")
        report["dfa"]["by_factor"][factor] = [
            {"lo": r.lo, "hi": r.hi, "mean_alpha": r.mean_alpha,
             "std_alpha": r.std_alpha, "count": r.count} for r in rows]
    _write_report(outdir, report)
    return EXIT_OK


def cmd_factors(args) -> int:
    cfg = _config_from_args(args)
    corpus = _resolve_corpus(cfg)
    outdir = _outdir(cfg)
    fv = compute_factors(corpus)

    # per-stock intervals at the factor threshold, computed once
    worker = partial(_stock_intervals, qs=(cfg.q,), series_kind=cfg.series,
                     master_seed=cfg.seed, with_shuffled=False)
    results = _pmap(worker, list(corpus), cfg.jobs)
    cache = {r["ticker"]: r["by_q"][cfg.q] for r in results
             if not r["degenerate"]}

    report = {"config": cfg.echo(), "load_summary": corpus.summary.as_dict(),
              "n_stocks": len(corpus), "factors": {}}
    try:
        corr = factor_correlations(fv)
        report["factors"]["correlations"] = {
            "labels": list(corr.labels),
            "log": corr.log_matrix, "raw": corr.raw_matrix,
            "n_stocks": corr.n_stocks,
            "degenerate": list(corr.degenerate)}
    except InsufficientStatisticsError:
        report["factors"]["correlations"] = None

    have_cap = any(f.mean_capitalization is not None for f in fv)
    report["factors"]["gamma_by_factor"] = {}
    for factor in FACTORS:
        if factor == "capitalization" and not have_cap:
            continue
        binning = bin_stocks(fv, factor, make_edges(fv, factor))
        rows = gamma_by_factor(corpus, factor, binning, q=cfg.q,
                               x_min=cfg.x_min,
                               bins_per_decade=cfg.bins_per_decade,
                               series_kind=cfg.series, interval_cache=cache)
        with open(outdir / f"gamma_by_{factor}.tsv", "w") as fh:
            for r in rows:
                fh.write(f"{_fmt(r.lo)}\t{_fmt(r.hi)}\t{_fmt(r.gamma)}"
                         f"\t{_fmt(r.stderr)}\t{r.n_stocks}\t{r.n_intervals}\n")
        report["factors"]["gamma_by_factor"][factor] = [
            {"lo": r.lo, "hi": r.hi, "gamma": r.gamma, "stderr": r.stderr,
             "r2": r.r_squared, "n_stocks": r.n_stocks,
             "n_intervals": r.n_intervals} for r in rows]
        report["factors"].setdefault("unbinned", {})[factor] = len(binning.unbinned)

    for fa, fb in combinations(FACTORS, 2):
        rows = [(f.ticker, factor_value(f, fa), factor_value(f, fb))
                for f in fv]
        rows = [(t, a, b) for t, a, b in rows if a is not None and b is not None]
        if not rows:
            continue
        with open(outdir / f"scatter_{fa}_vs_{fb}.tsv", "w") as fh:
            for t, a, b in rows:
                fh.write(f"{t}\t{_fmt(a)}\t{_fmt(b)}\n")
    _write_report(outdir, report)
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.n_stocks < 1 or args.length < 2:
        raise ConfigError("need --n-stocks >= 1 and --length >= 2")
    params = _synth_params(args.kind, args.hurst, args.levels, args.sigma,
                           args.vol_scale, args.df, args.kappa, args.dist)
    rule = homogeneous_rule(args.kind, args.length, params, args.seed)
    corpus, planted = synth_corpus(args.n_stocks, rule)
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out}: {exc}") from exc
    write_corpus(corpus, out)
    with open(out / "planted.json", "w") as fh:
        json.dump(_jclean(planted), fh, sort_keys=True, indent=2)
        fh.write("\n")
    print(f"wrote {len(corpus)} stocks to {out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InsufficientStatisticsError as exc:
        print(f"insufficient statistics: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
