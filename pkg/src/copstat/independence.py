"""Calibrated independence testing on top of the copula statistic.

The statistic's null distribution shifts with sample size, so the test
standardizes against power-law models of the null mean and standard
deviation fitted over a grid of sample sizes, then applies a two-sided
normal test.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .copula_core import Sample, as_sample
from .errors import InvalidGrid, InvalidInput, InvalidParam
from .statistic import copula_statistic
from .synth import derive_rng, sample_clayton_copula, sample_gaussian_copula, sample_gumbel_copula

H0 = "independent"
H1 = "dependent"


@dataclass(frozen=True)
class CalibrationCurve:
    """Power-law models mu(n) = a n^b and sigma(n) = a n^b of the null.

    Both exponents must be negative: bias and spread shrink with n.
    """

    mu_model: tuple[float, float]
    sigma_model: tuple[float, float]
    fit_grid: tuple[int, ...] = ()
    trials_per_n: int = 0
    seed: int | None = None

    def __post_init__(self) -> None:
        for name, (a, b) in (("mu", self.mu_model), ("sigma", self.sigma_model)):
            if a <= 0:
                raise InvalidInput(f"{name} model amplitude must be positive, got {a}")
            if b >= 0:
                raise InvalidInput(f"{name} model exponent must be negative, got {b}")

    def predict_mu(self, n: int) -> float:
        a, b = self.mu_model
        return a * n**b

    def predict_sigma(self, n: int) -> float:
        a, b = self.sigma_model
        return a * n**b

    def to_json(self) -> str:
        return json.dumps(
            {
                "mu": {"a": self.mu_model[0], "b": self.mu_model[1]},
                "sigma": {"a": self.sigma_model[0], "b": self.sigma_model[1]},
                "grid": list(self.fit_grid),
                "trials": self.trials_per_n,
                "seed": self.seed,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "CalibrationCurve":
        doc = json.loads(text)
        return cls(
            mu_model=(doc["mu"]["a"], doc["mu"]["b"]),
            sigma_model=(doc["sigma"]["a"], doc["sigma"]["b"]),
            fit_grid=tuple(doc.get("grid", ())),
            trials_per_n=doc.get("trials", 0),
            seed=doc.get("seed"),
        )


#: Curve constants reported by the original large independence study.
#: This implementation's null follows a different power law (see
#: DEFAULT_NULL_CURVE), so using these constants miscalibrates the test;
#: they are kept for reference and comparison runs.
PUBLISHED_NULL_CURVE = CalibrationCurve(mu_model=(8.05, -0.74), sigma_model=(2.99, -0.81))

#: Null curves fitted to this implementation over n in [50, 3000]
#: (200-500 trials per grid point, power-law residuals ~1%).  Shipped so
#: the test runs with its nominal size without a calibration pass.
#: Predictions below n = 50 are extrapolations and not meaningful.
DEFAULT_NULL_CURVE = CalibrationCurve(
    mu_model=(3.061, -0.469),
    sigma_model=(0.469, -0.472),
    fit_grid=(50, 100, 200, 300, 500, 700, 1000, 1500, 2000, 3000),
    trials_per_n=200,
    seed=0,
)

#: Grid used when calibrating from scratch with defaults.
DEFAULT_GRID = (50, 100, 200, 300, 500, 700, 1000, 1500, 2000, 3000)


@dataclass(frozen=True)
class TestResult:
    """Outcome of the standardized independence test."""

    cos: float
    z: float
    cutoff: float
    alpha: float
    decision: str
    n: int

    @property
    def dependent(self) -> bool:
        return self.decision == H1


def null_moments(n: int, trials: int, seed: int) -> tuple[float, float]:
    """Monte Carlo mean and standard deviation of the statistic under
    independence at one sample size.  Trial t uses the stream derived from
    (seed, "null", n, t), so results do not depend on evaluation order."""
    vals = np.empty(trials)
    for t in range(trials):
        rng = derive_rng(seed, "null", n, t)
        vals[t] = copula_statistic(rng.random((n, 2))).cos
    return float(vals.mean()), float(vals.std(ddof=1))


def calibrate_null(
    n_grid=DEFAULT_GRID, trials_per_n: int = 500, seed: int = 0
) -> CalibrationCurve:
    """Fit the null mean and sigma power laws over a grid of sample sizes.

    Each grid point runs `trials_per_n` independent-uniform samples; the
    models are least-squares fits of log(statistic) on log(n).
    """
    grid = tuple(int(n) for n in n_grid)
    if len(grid) < 2:
        raise InvalidGrid("need at least two grid sizes to fit a power law")
    if any(n < 50 for n in grid):
        raise InvalidGrid("grid sizes below 50 are too small to calibrate")
    if trials_per_n < 200:
        raise InvalidGrid("need at least 200 trials per grid size")

    mus = np.empty(len(grid))
    sigmas = np.empty(len(grid))
    for i, n in enumerate(grid):
        mus[i], sigmas[i] = null_moments(n, trials_per_n, seed)

    logn = np.log(np.asarray(grid, dtype=float))
    b_mu, loga_mu = np.polyfit(logn, np.log(mus), 1)
    b_sg, loga_sg = np.polyfit(logn, np.log(sigmas), 1)
    return CalibrationCurve(
        mu_model=(math.exp(loga_mu), float(b_mu)),
        sigma_model=(math.exp(loga_sg), float(b_sg)),
        fit_grid=grid,
        trials_per_n=trials_per_n,
        seed=seed,
    )


def test_independence(
    sample, curve: CalibrationCurve = DEFAULT_NULL_CURVE, alpha: float = 0.01
) -> TestResult:
    """Two-sided z-test of independence at significance level `alpha`.

    z standardizes the statistic by the null mean and sigma predicted at
    this sample size; dependence is declared when |z| exceeds the normal
    quantile (2.576 at the 1% level).
    """
    if not 0.0 < alpha <= 0.5:
        raise InvalidParam(f"alpha must be in (0, 0.5], got {alpha}")
    s = as_sample(sample)
    value = copula_statistic(s).cos
    mu = curve.predict_mu(s.n)
    sigma = curve.predict_sigma(s.n)
    z = (value - mu) / sigma
    cutoff = float(ndtri(1.0 - alpha / 2.0))
    decision = H1 if abs(z) > cutoff else H0
    return TestResult(cos=value, z=z, cutoff=cutoff, alpha=alpha, decision=decision, n=s.n)


_COPULA_SAMPLERS = {
    "gauss": sample_gaussian_copula,
    "gumbel": sample_gumbel_copula,
    "clayton": sample_clayton_copula,
}


def sample_copula(family: str, param: float, n: int, rng: np.random.Generator) -> Sample:
    """Draw from a named copula family; param 0 for gauss and 1 for gumbel
    are the independence members."""
    try:
        sampler = _COPULA_SAMPLERS[family]
    except KeyError:
        raise InvalidParam(f"unknown copula family {family!r}") from None
    return sampler(param, n, rng)


def type2_error(
    copula_family: str,
    param: float,
    n: int,
    trials: int,
    curve: CalibrationCurve = DEFAULT_NULL_CURVE,
    alpha: float = 0.01,
    seed: int = 0,
) -> float:
    """Fraction of dependent-copula trials the test wrongly accepts as
    independent."""
    accepted = 0
    for t in range(trials):
        rng = derive_rng(seed, "type2", copula_family, n, t)
        sample = sample_copula(copula_family, param, n, rng)
        if not test_independence(sample, curve, alpha).dependent:
            accepted += 1
    return accepted / trials
