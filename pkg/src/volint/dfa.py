"""Detrended fluctuation analysis and per-factor exponent tables.

The estimator integrates the mean-subtracted series into a profile, splits
the profile into non-overlapping boxes of size n taken once from the start
and once from the end (so the tail remainder is used), removes a
least-squares polynomial per box, and reports the RMS residual F(n). The
exponent alpha is the log-log slope of F(n). alpha = 0.5 marks an
uncorrelated series, larger values persistence; values above 1 indicate
nonstationary scaling and are flagged, not clamped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import ConfigError, DataError, DegenerateSeriesError
from .volatility import volatility

DEFAULT_ORDER = 1
DEFAULT_N_WINDOWS = 20
DEFAULT_MIN_WINDOW = 8


@dataclass(frozen=True)
class DfaCurve:
    """F(n) over window sizes plus the fitted exponent."""

    window_sizes: np.ndarray
    fluctuations: np.ndarray
    alpha: float
    fit_range: tuple[int, int]
    stderr: float
    alpha_flagged: bool = False     # alpha > 1, nonstationary scaling


@dataclass(frozen=True)
class AlphaBin:
    lo: float
    hi: float
    mean_alpha: float
    std_alpha: float
    count: int


def default_windows(n: int, n_windows: int = DEFAULT_N_WINDOWS,
                    smallest: int = DEFAULT_MIN_WINDOW) -> np.ndarray:
    """About n_windows geometrically spaced sizes from smallest to n//4."""
    largest = n // 4
    if largest < smallest:
        raise DataError(
            f"series of length {n} supports windows up to {largest}, "
            f"smaller than the minimum window {smallest}")
    sizes = np.unique(np.rint(np.geomspace(smallest, largest,
                                           n_windows)).astype(np.int64))
    return sizes


def dfa(series, order: int = DEFAULT_ORDER, windows=None, fit_range=None,
        integrate: bool = True) -> DfaCurve:
    """Detrended fluctuation analysis of a one-dimensional series.

    Parameters
    ----------
    series : array-like
    order : int
        Detrending polynomial order per box (1 = linear).
    windows : array-like of int, optional
        Box sizes; defaults to ~20 geometric sizes in [8, N/4].
    fit_range : (n_min, n_max), optional
        Window range for the alpha fit; defaults to all windows.
    integrate : bool
        Work on the cumulative-sum profile (standard). With False the
        detrending applies to the series itself, which is the mode where a
        polynomial trend of degree <= order is annihilated exactly.

    Returns
    -------
    DfaCurve
    """
    x = np.asarray(series, dtype=np.float64)
    if x.ndim != 1:
        raise ConfigError("series must be one-dimensional")
    if order < 1:
        raise ConfigError(f"order must be >= 1, got {order}")
    n = x.size
    if windows is None:
        windows = default_windows(n)
    windows = np.unique(np.asarray(windows, dtype=np.int64))
    if windows.size == 0:
        raise ConfigError("no window sizes given")
    if int(windows[0]) < order + 2:
        raise ConfigError(
            f"smallest window {windows[0]} cannot fit an order-{order} "
            f"polynomial, need >= {order + 2}")
    if n < 4 * int(windows[-1]):
        raise DataError(
            f"series of length {n} too short for window {windows[-1]}; "
            f"feasible windows are {order + 2}..{n // 4}")

    y = np.cumsum(x - x.mean()) if integrate else x - x.mean()
    fluct = np.empty(windows.size, dtype=np.float64)
    for i, w in enumerate(windows):
        w = int(w)
        k = n // w
        segs = np.concatenate([
            y[:k * w].reshape(k, w),
            y[n - k * w:].reshape(k, w),
        ])
        t = np.arange(w, dtype=np.float64)
        coef = np.polynomial.polynomial.polyfit(t, segs.T, order)
        resid = segs.T - np.polynomial.polynomial.polyvander(t, order) @ coef
        fluct[i] = np.sqrt(np.mean(resid * resid))

    if fit_range is None:
        fit_range = (int(windows[0]), int(windows[-1]))
    # residuals below numerical noise (exactly detrendable input) carry
    # no slope information; the threshold scales with the profile itself
    floor = 1e-10 * (np.abs(y).max() + np.finfo(np.float64).tiny)
    sel = (windows >= fit_range[0]) & (windows <= fit_range[1]) & (fluct > floor)
    if int(sel.sum()) < 2:
        alpha, stderr = float("nan"), float("nan")
    else:
        res = stats.linregress(np.log(windows[sel]), np.log(fluct[sel]))
        alpha, stderr = float(res.slope), float(res.stderr)
    return DfaCurve(window_sizes=windows, fluctuations=fluct, alpha=alpha,
                    fit_range=(int(fit_range[0]), int(fit_range[1])),
                    stderr=stderr, alpha_flagged=bool(alpha > 1.0))


def stock_alpha(stock, series_kind: str = "volume",
                order: int = DEFAULT_ORDER) -> float | None:
    """DFA exponent of one stock's volatility series; None if undefined.

    The exponent is computed on the normalized volatility nu(t), not on
    raw returns. Returns None for stocks whose volatility is degenerate or
    whose series is too short for the default windows.
    """
    col = stock.volume if series_kind == "volume" else stock.close
    try:
        nu = volatility(col)
        return dfa(nu.values, order=order).alpha
    except (DegenerateSeriesError, DataError):
        return None


def alpha_by_factor(corpus, factor: str, n_bins: int | None = None,
                    edges=None, series_kind: str = "volume",
                    order: int = DEFAULT_ORDER, alphas: dict | None = None):
    """Mean and spread of per-stock alpha grouped by a financial factor.

    Parameters
    ----------
    corpus : ingest.Corpus
    factor : one of factors.FACTORS
    n_bins, edges
        Bin control, forwarded to the factors module; default bin counts
        follow that module.
    alphas : dict ticker -> float, optional
        Precomputed exponents (lets a caller compute them once and bin by
        several factors). Missing or None entries are skipped.

    Returns
    -------
    list[AlphaBin]
        One row per bin, empty bins emitted with count 0 and NaN stats.
    """
    from .factors import bin_stocks, compute_factors, make_edges

    fv = compute_factors(corpus)
    if alphas is None:
        alphas = {s.ticker: stock_alpha(s, series_kind, order) for s in corpus}
    if edges is None:
        edges = make_edges(fv, factor, n_bins)
    binning = bin_stocks(fv, factor, edges)
    rows = []
    for b in range(len(binning.edges) - 1):
        vals = [alphas.get(t) for t in binning.members.get(b, [])]
        vals = np.array([v for v in vals if v is not None], dtype=np.float64)
        rows.append(AlphaBin(
            lo=float(binning.edges[b]), hi=float(binning.edges[b + 1]),
            mean_alpha=float(vals.mean()) if vals.size else float("nan"),
            std_alpha=float(vals.std()) if vals.size else float("nan"),
            count=int(vals.size)))
    return rows
