"""The copula statistic: a rank-based score of multivariate dependence.

The estimator walks the empirical copula along the sample sorted by one
coordinate, splits that trace into maximal monotone runs, scores each run
by the relative distance of its extreme copula values from independence,
and averages the scores weighted by run size.  Runs whose shared boundary
looks like a local optimum of the underlying functional dependence are
credited a full score.

The result lies in [0, 1]: near 0 for independent data, exactly 1 for
noise-free monotone dependence at any n >= 2, and asymptotically 1 for any
functional dependence.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .copula_core import (
    EmpiricalCopula,
    PseudoSample,
    as_sample,
    pseudo_observations,
    relative_distance,
)
from .errors import InvalidInput

NON_DECREASING = "non-decreasing"
NON_INCREASING = "non-increasing"


class Trace(NamedTuple):
    """Empirical copula evaluated along the sample sorted by one axis.

    points  -- (n, d) pseudo-observations in sorted order
    values  -- (n,) copula value at each sorted point
    order   -- (n,) original row index of each sorted point
    """

    points: np.ndarray
    values: np.ndarray
    order: np.ndarray


@dataclass(frozen=True)
class DomainRun:
    """One maximal monotone run of the trace.

    `start`/`end` are inclusive indices into the trace; consecutive runs
    share exactly one boundary index.  `argmin`/`argmax` are trace indices
    of the first point attaining the run's extreme copula values.
    """

    start: int
    end: int
    direction: str
    c_min: float
    c_max: float
    argmin: int
    argmax: int
    local_opt_min: bool = False
    local_opt_max: bool = False

    @property
    def n_points(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class DomainPartition:
    """Monotone-run decomposition of a trace; sum(n_i) = n + m - 1."""

    runs: tuple[DomainRun, ...]

    @property
    def m(self) -> int:
        return len(self.runs)


@dataclass(frozen=True)
class DomainRecord:
    """Per-run diagnostics carried by a CosReport."""

    start: int
    end: int
    direction: str
    n_points: int
    lambda_min: float
    lambda_max: float
    gamma: float
    local_opt_min: bool
    local_opt_max: bool


@dataclass(frozen=True)
class CosReport:
    """Copula statistic plus the per-domain breakdown that produced it."""

    cos: float
    n: int
    d: int
    m: int
    sort_axis: int
    domains: tuple[DomainRecord, ...]


def copula_trace(ps: PseudoSample, sort_axis: int = 0) -> Trace:
    """Evaluate the empirical copula at every sample point, sorted by one axis.

    Points are ordered by their pseudo-coordinate on `sort_axis` (stable on
    the original index); each trace value is C_n at the point's full
    pseudo-coordinate vector.
    """
    if not 0 <= sort_axis < ps.d:
        raise InvalidInput(f"sort_axis {sort_axis} out of range for d={ps.d}")
    order = np.argsort(ps.u[:, sort_axis], kind="stable")
    points = ps.u[order]
    values = EmpiricalCopula(ps).cdf_many(points)
    return Trace(points=points, values=values, order=order)


def _trace_values(trace) -> np.ndarray:
    if isinstance(trace, Trace):
        return np.asarray(trace.values, dtype=float)
    return np.asarray(trace, dtype=float).ravel()


def partition_domains(trace) -> DomainPartition:
    """Split a trace into maximal monotone runs.

    Plateaus never break a run; a run's direction is fixed by its first
    strict change, and a fully flat trace is a single non-decreasing run.
    Consecutive runs share their boundary index.
    """
    s = _trace_values(trace)
    n = s.size
    if n < 2:
        raise InvalidInput("trace needs at least 2 points")

    steps = np.sign(np.diff(s)).astype(np.int8)
    nz = np.flatnonzero(steps)
    if nz.size == 0:
        bounds = [0, n - 1]
        directions = [1]
    else:
        dirs = steps[nz]
        flips = np.flatnonzero(dirs[1:] != dirs[:-1])
        bounds = [0, *(nz[flips + 1].tolist()), n - 1]
        directions = [int(dirs[0]), *(int(dirs[i + 1]) for i in flips)]

    runs = []
    for i, direction in enumerate(directions):
        a, b = bounds[i], bounds[i + 1]
        seg = s[a : b + 1]
        rel_min = int(np.argmin(seg))
        rel_max = int(np.argmax(seg))
        runs.append(
            DomainRun(
                start=a,
                end=b,
                direction=NON_DECREASING if direction > 0 else NON_INCREASING,
                c_min=float(seg[rel_min]),
                c_max=float(seg[rel_max]),
                argmin=a + rel_min,
                argmax=a + rel_max,
            )
        )
    return DomainPartition(runs=tuple(runs))


def detect_local_optima(trace, part: DomainPartition, n: int) -> DomainPartition:
    """Flag run boundaries that look like local optima of the dependence.

    An interior boundary index j between two adjacent runs is flagged when
    both |s_j - s_{j-1}| and |s_{j+1} - s_j| are at most 1/n and the two
    runs together hold more than four points (boundary counted in both).
    The flag is recorded on the extremum side of each adjacent run.
    """
    s = _trace_values(trace)
    thr = (1.0 / n) * (1.0 + 1e-9)
    runs = list(part.runs)
    for i in range(len(runs) - 1):
        j = runs[i].end
        if j < 1 or j + 1 >= s.size:
            continue
        small_steps = abs(s[j] - s[j - 1]) <= thr and abs(s[j + 1] - s[j]) <= thr
        enough = runs[i].n_points + runs[i + 1].n_points > 4
        if not (small_steps and enough):
            continue
        if runs[i].direction == NON_DECREASING:
            # rising into the boundary then falling out: a local maximum
            runs[i] = replace(runs[i], local_opt_max=True)
            runs[i + 1] = replace(runs[i + 1], local_opt_max=True)
        else:
            runs[i] = replace(runs[i], local_opt_min=True)
            runs[i + 1] = replace(runs[i + 1], local_opt_min=True)
    return DomainPartition(runs=tuple(runs))


def domain_gamma(lambda_min: float, lambda_max: float, flagged: bool) -> float:
    """Score of one run: 1 at a flagged local optimum, else the mean lambda."""
    if flagged:
        return 1.0
    return 0.5 * (lambda_min + lambda_max)


def copula_statistic(sample, sort_axis: int = 0) -> CosReport:
    """Compute the copula statistic of an n-by-d sample.

    The trace is sorted on `sort_axis` (column 0 by default).  Runtime is
    O(d n log n + n^2) and the result is deterministic in the input.
    """
    sample = as_sample(sample)
    ps = pseudo_observations(sample)
    n = ps.n
    trace = copula_trace(ps, sort_axis=sort_axis)
    part = detect_local_optima(trace, partition_domains(trace), n)

    tol = 1.0 / (2 * n)
    records = []
    total = 0.0
    for run in part.runs:
        lam_min = relative_distance(run.c_min, trace.points[run.argmin], tol)
        lam_max = relative_distance(run.c_max, trace.points[run.argmax], tol)
        if lam_min == 1.0 and lam_max == 1.0:
            gamma = 1.0
        else:
            gamma = domain_gamma(
                lam_min, lam_max, run.local_opt_min or run.local_opt_max
            )
        total += run.n_points * gamma
        records.append(
            DomainRecord(
                start=run.start,
                end=run.end,
                direction=run.direction,
                n_points=run.n_points,
                lambda_min=lam_min,
                lambda_max=lam_max,
                gamma=gamma,
                local_opt_min=run.local_opt_min,
                local_opt_max=run.local_opt_max,
            )
        )

    m = part.m
    return CosReport(
        cos=total / (n + m - 1),
        n=n,
        d=ps.d,
        m=m,
        sort_axis=sort_axis,
        domains=tuple(records),
    )
