"""Short-term memory: conditional interval statistics over tau0 octiles.

Each interval (except the first of every stock) is paired with its
immediate predecessor tau0 within the same stock; the conditional PDF of
tau given the octile of tau0 separates for persistent series and collapses
for shuffled ones. Octile bounds default to a fixed geometric ladder; a
quantile mode partitions pairs into eight equal-population subsets instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import ConfigError, DataError
from .fitting import DEFAULT_BINS_PER_DECADE, BinnedPdf, log_bin

N_OCTILES = 8
GEOMETRIC_BOUNDARIES = np.array(
    [0.0, 0.2, 0.4, 0.8, 1.6, 3.2, 6.4, 12.8, np.inf])
LOW_STATISTICS_PAIRS = 50


@dataclass(frozen=True)
class ConditionalPdf:
    """Scaled-interval PDF restricted to one preceding-interval octile."""

    octile: int                 # 1..8
    pdf: BinnedPdf
    n_pairs: int
    low_statistics: bool


@dataclass(frozen=True)
class OctileStat:
    octile: int
    mean_scaled_tau: float      # nan when empty
    count: int


@dataclass(frozen=True)
class MemorySummary:
    rows: tuple[OctileStat, ...]
    spearman: float             # rank corr of octile index vs mean, populated octiles


def consecutive_pairs(items):
    """Pooled (tau0, tau) consecutive pairs, scaled per stock.

    Parameters
    ----------
    items : iterable of (ticker, IntervalSeries)
        Pairs never cross stock boundaries; a stock with fewer than two
        intervals contributes nothing.

    Returns
    -------
    (tau0, tau) : two aligned float arrays in (ticker, position) order.
    """
    items = sorted(items, key=lambda kv: kv[0])
    t0, t1 = [], []
    for _, iv in items:
        if iv.taus.size < 2:
            continue
        scaled = iv.taus / iv.taus.mean()
        t0.append(scaled[:-1])
        t1.append(scaled[1:])
    if not t0:
        return np.empty(0), np.empty(0)
    return np.concatenate(t0), np.concatenate(t1)


def octile_boundaries(tau0, mode: str = "geometric") -> np.ndarray:
    """Nine boundaries defining Q1..Q8 on scaled tau0.

    geometric: fixed ladder {0, 0.2, 0.4, ..., 12.8, inf} (ratio 2).
    quantile: population octiles of the supplied tau0 sample, the literal
    eight-equal-sized-subsets reading.
    """
    if mode == "geometric":
        return GEOMETRIC_BOUNDARIES.copy()
    if mode == "quantile":
        tau0 = np.asarray(tau0, dtype=np.float64)
        if tau0.size < N_OCTILES:
            raise DataError(f"{tau0.size} pairs cannot fill {N_OCTILES} octiles")
        qs = np.quantile(tau0, np.arange(1, N_OCTILES) / N_OCTILES)
        bounds = np.concatenate([[0.0], qs, [np.inf]])
        if np.any(np.diff(bounds) <= 0):
            raise DataError("tau0 quantiles are not distinct; use geometric mode")
        return bounds
    raise ConfigError(f"unknown octile mode {mode!r}")


def assign_octiles(tau0, boundaries) -> np.ndarray:
    """Octile label 1..8 per tau0; values on a boundary go to the upper bin."""
    boundaries = np.asarray(boundaries, dtype=np.float64)
    if boundaries.size != N_OCTILES + 1:
        raise ConfigError(f"need {N_OCTILES + 1} boundaries, got {boundaries.size}")
    lab = np.searchsorted(boundaries, np.asarray(tau0, dtype=np.float64),
                          side="right")
    return np.clip(lab, 1, N_OCTILES).astype(np.int64)


def conditional_pdfs(tau0, tau, boundaries,
                     bins_per_decade: int = DEFAULT_BINS_PER_DECADE,
                     edges=None,
                     low_stat_threshold: int = LOW_STATISTICS_PAIRS):
    """One BinnedPdf of scaled tau per octile of scaled tau0.

    All octiles share one bin grid (derived from the full tau sample when
    edges is not given) so that the pair-count-weighted mixture of the
    eight conditional densities reproduces the unconditional density
    bin-for-bin. Octiles below low_stat_threshold pairs are still computed
    but flagged.
    """
    tau0 = np.asarray(tau0, dtype=np.float64)
    tau = np.asarray(tau, dtype=np.float64)
    if tau0.size != tau.size:
        raise ConfigError("tau0 and tau must align")
    if tau.size == 0:
        raise DataError("no pairs")
    if edges is None:
        edges = log_bin(tau, bins_per_decade).edges
    labels = assign_octiles(tau0, boundaries)
    out = []
    for k in range(1, N_OCTILES + 1):
        sel = tau[labels == k]
        n = int(sel.size)
        if n:
            pdf = log_bin(sel, edges=edges)
        else:
            nbins = len(edges) - 1
            pdf = BinnedPdf(edges=np.asarray(edges, dtype=np.float64),
                            densities=np.zeros(nbins),
                            counts=np.zeros(nbins, dtype=np.int64), n_total=0)
        out.append(ConditionalPdf(octile=k, pdf=pdf, n_pairs=n,
                                  low_statistics=n < low_stat_threshold))
    return out


def memory_summary(tau0, tau, boundaries) -> MemorySummary:
    """Per-octile mean of the following scaled interval, plus a rank trend.

    The Spearman coefficient between octile index and per-octile mean is
    the monotonicity diagnostic: near zero for independent series, near
    one for persistent ones.
    """
    tau0 = np.asarray(tau0, dtype=np.float64)
    tau = np.asarray(tau, dtype=np.float64)
    if tau.size == 0:
        raise DataError("no pairs")
    labels = assign_octiles(tau0, boundaries)
    rows = []
    for k in range(1, N_OCTILES + 1):
        sel = tau[labels == k]
        rows.append(OctileStat(
            octile=k,
            mean_scaled_tau=float(sel.mean()) if sel.size else float("nan"),
            count=int(sel.size)))
    pop = [(r.octile, r.mean_scaled_tau) for r in rows if r.count > 0]
    if len(pop) >= 2:
        rho = stats.spearmanr([p[0] for p in pop], [p[1] for p in pop]).statistic
    else:
        rho = float("nan")
    return MemorySummary(rows=tuple(rows), spearman=float(rho))
