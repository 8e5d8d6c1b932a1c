"""Reference dependence measures computed alongside the copula statistic:
Pearson and Spearman correlation, multivariate Kendall tau, and distance
correlation."""

from __future__ import annotations

import numpy as np
from scipy.stats import rankdata

from .copula_core import EmpiricalCopula, as_sample, pseudo_observations
from .errors import DegenerateMarginal, DimensionMismatch, InvalidInput


def _two_columns(sample) -> tuple[np.ndarray, np.ndarray]:
    s = as_sample(sample)
    if s.d != 2:
        raise DimensionMismatch(f"expected 2 columns, got {s.d}")
    return s.column(0), s.column(1)


def pearson(sample) -> float:
    """Product-moment correlation of a two-column sample."""
    x, y = _two_columns(sample)
    sx, sy = x.std(), y.std()
    if sx == 0.0 or sy == 0.0:
        raise DegenerateMarginal("pearson undefined for a constant column")
    return float(((x - x.mean()) * (y - y.mean())).mean() / (sx * sy))


def spearman(sample) -> float:
    """Rank correlation: Pearson correlation of the rank-transformed columns."""
    x, y = _two_columns(sample)
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise DegenerateMarginal("spearman undefined for a constant column")
    rx = rankdata(x)
    ry = rankdata(y)
    return float(np.corrcoef(rx, ry)[0, 1])


def kendall_mv(sample) -> float:
    """Multivariate Kendall tau via the copula plug-in.

    tau_n = (2^d * mean C_n - 1) / (2^(d-1) - 1), with the copula mass
    averaged over ordered pairs of distinct sample points (the pairwise
    form: self-counts excluded, normalized by n(n-1)).  For d = 2 this is
    exactly the classical concordance estimator; the naive 1/n-weighted
    average would be biased by (3 - tau)/n.
    """
    s = as_sample(sample)
    ps = pseudo_observations(s)
    cop = EmpiricalCopula(ps)
    n, d = s.n, s.d
    total = float(cop.cdf_many(ps.u).sum()) * n  # sum of dominated counts
    mean_c = (total - n) / (n * (n - 1))
    return (2.0**d * mean_c - 1.0) / (2.0 ** (d - 1) - 1.0)


def dcor(sample) -> float:
    """Sample distance correlation (the biased V-statistic form), in [0, 1].

    Built from double-centered pairwise-distance matrices; 0 is returned
    when either marginal distance variance vanishes.
    """
    x, y = _two_columns(sample)
    a = np.abs(x[:, None] - x[None, :])
    b = np.abs(y[:, None] - y[None, :])
    a = a - a.mean(axis=0)[None, :] - a.mean(axis=1)[:, None] + a.mean()
    b = b - b.mean(axis=0)[None, :] - b.mean(axis=1)[:, None] + b.mean()
    # V-statistic distance covariance is non-negative up to float error
    dcov2_xy = max(float((a * b).mean()), 0.0)
    dcov2_xx = float((a * a).mean())
    dcov2_yy = float((b * b).mean())
    denom = dcov2_xx * dcov2_yy
    if denom <= 0.0:
        return 0.0
    return float(np.sqrt(dcov2_xy) / np.sqrt(np.sqrt(denom)))


METRICS = {
    "pearson": pearson,
    "spearman": spearman,
    "kendall": kendall_mv,
    "dcor": dcor,
}


def compute_metric(name: str, sample) -> float:
    """Dispatch a named metric; `cos` is handled by the statistic module."""
    if name == "cos":
        from .statistic import copula_statistic

        return copula_statistic(sample).cos
    try:
        fn = METRICS[name]
    except KeyError:
        raise InvalidInput(f"unknown metric {name!r}") from None
    return fn(sample)
