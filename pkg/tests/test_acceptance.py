"""Acceptance suite.

One test per criterion cell, asserted at the stated tolerance.  Each test
prints its measured value next to the target band; the terminal summary
lists PASS/FAIL per criterion.  Monte Carlo runs are seeded and derive one
sub-stream per trial, so every number here is reproducible bit-for-bit.
"""

import time

import numpy as np
import pytest

from copstat import (
    DEFAULT_NULL_CURVE,
    Sample,
    calibrate_null,
    copula_statistic,
    dcor,
    derive_rng,
    empirical_copula,
    gen_ripley,
    kendall_mv,
    null_moments,
    run_power,
    sample_clayton_copula,
    sample_gaussian_copula,
    sample_gumbel_copula,
    score_matrix,
    type2_error,
)
from copstat.cli import main
from copstat.synth import DependencySpec, gen_dependency

from oracles import (
    gaussian_copula_at_half,
    kendall_tau_pairs,
    naive_copula_count,
    naive_ranks,
)

SEED = 20260810


def band(value, target, tol, label):
    print(f"{label}: measured {value:.4f}, target {target} +/- {tol}")
    assert target - tol <= value <= target + tol, (
        f"{label}: measured {value:.4f} outside {target} +/- {tol}"
    )


# --------------------------------------------------------------- criterion 1


def test_c01_monotone_exactness():
    """200 random strictly monotone datasets, n in 2..50 -> CoS exactly 1."""
    rng = derive_rng(SEED, "c01")
    transforms = [
        lambda x: 3 * x + 2,
        lambda x: x**3,
        lambda x: np.exp(x),
        lambda x: -np.exp(-x),
        lambda x: np.arctan(x),
    ]
    start = time.perf_counter()
    for trial in range(200):
        n = int(rng.integers(2, 51))
        x = rng.normal(size=n)
        f = transforms[trial % len(transforms)]
        sign = 1.0 if trial % 2 == 0 else -1.0
        rep = copula_statistic(Sample.from_columns([x, sign * f(x)]))
        assert rep.cos == 1.0, f"trial {trial}: n={n} gave {rep.cos}"
    elapsed = time.perf_counter() - start
    print(f"c01: 200 monotone datasets exact, {elapsed:.2f}s")
    assert elapsed < 5.0


# --------------------------------------------------------------- criterion 2


@pytest.mark.parametrize(
    "n,target,tol",
    [(100, 0.28, 0.03), (500, 0.08, 0.02), (1000, 0.045, 0.015)],
    ids=["n100", "n500", "n1000"],
)
def test_c02_null_bias(n, target, tol):
    """1000 independent-uniform trials; mean CoS in the stated band."""
    start = time.perf_counter()
    mu, _sigma = null_moments(n, trials=1000, seed=SEED)
    assert time.perf_counter() - start < 300.0
    band(mu, target, tol, f"c02 null mean at n={n}")


# --------------------------------------------------------------- criterion 3


def test_c03_calibration_fit():
    """Fitted null curves within 15% per parameter of the published ones."""
    start = time.perf_counter()
    curve = calibrate_null(
        n_grid=(50, 100, 200, 300, 500, 1000), trials_per_n=250, seed=SEED
    )
    assert time.perf_counter() - start < 600.0
    (a_mu, b_mu), (a_sg, b_sg) = curve.mu_model, curve.sigma_model
    print(
        f"c03: fitted mu=({a_mu:.3f},{b_mu:.3f}) sigma=({a_sg:.3f},{b_sg:.3f});"
        " published mu=(8.05,-0.74) sigma=(2.99,-0.81), tol 15% each"
    )
    for value, target, label in [
        (a_mu, 8.05, "mu amplitude"),
        (b_mu, -0.74, "mu exponent"),
        (a_sg, 2.99, "sigma amplitude"),
        (b_sg, -0.81, "sigma exponent"),
    ]:
        assert abs(value - target) <= 0.15 * abs(target), (
            f"c03 {label}: fitted {value:.4f} vs published {target} (tol 15%)"
        )


# --------------------------------------------------------------- criterion 4


@pytest.mark.parametrize(
    "rho,n,target",
    [(0.1, 100, 0.97), (0.3, 100, 0.46), (0.3, 500, 0.00)],
    ids=["rho01_n100", "rho03_n100", "rho03_n500"],
)
def test_c04_type2_errors(rho, n, target):
    """Gauss-copula type-II errors within 5 points, 500 trials per cell."""
    err = type2_error("gauss", rho, n, trials=500, curve=DEFAULT_NULL_CURVE,
                      alpha=0.01, seed=SEED)
    band(err, target, 0.05, f"c04 type-II rho={rho} n={n}")


# --------------------------------------------------------------- criterion 5


def _mean_cos_copula(sampler, param, n, reps, label):
    vals = np.empty(reps)
    for t in range(reps):
        rng = derive_rng(SEED, "c05", label, t)
        vals[t] = copula_statistic(sampler(param, n, rng)).cos
    return float(vals.mean())


@pytest.mark.parametrize(
    "family,param,n,target,tol",
    [
        ("gauss", 0.3, 2000, 0.32, 0.04),
        ("gumbel", 1.26, 2000, 0.33, 0.04),
        ("clayton", 0.51, 2000, 0.33, 0.04),
        ("gumbel", 5.0, 1000, 0.92, 0.05),
        ("clayton", -0.88, 1000, 0.90, 0.05),
    ],
    ids=["gauss03", "gumbel126", "clayton051", "gumbel5", "clayton_m088"],
)
def test_c05_copula_induced(family, param, n, target, tol):
    samplers = {
        "gauss": sample_gaussian_copula,
        "gumbel": sample_gumbel_copula,
        "clayton": sample_clayton_copula,
    }
    mean = _mean_cos_copula(samplers[family], param, n, reps=150,
                            label=f"{family}:{param}:{n}")
    band(mean, target, tol, f"c05 {family}({param}) n={n}")


# --------------------------------------------------------------- criterion 6


@pytest.mark.parametrize(
    "freq,n,target,tol",
    [(1.0, 100, 1.00, 0.005), (5.0, 500, 0.99, 0.02), (14.0, 1000, 0.96, 0.03)],
    ids=["sin1_n100", "sin5_n500", "sin14_n1000"],
)
def test_c06_sinusoidal_bias(freq, n, target, tol):
    """Noise-free sinusoids on U(-1,1), 200 reps each."""
    spec = DependencySpec(kind="sinusoidal", freq=freq)
    vals = np.empty(200)
    for t in range(200):
        rng = derive_rng(SEED, "c06", freq, t)
        vals[t] = copula_statistic(gen_dependency(spec, n, rng)).cos
    band(float(vals.mean()), target, tol, f"c06 sin({freq:g}x) n={n}")


# --------------------------------------------------------------- criterion 7


@pytest.mark.parametrize(
    "kind,p,target",
    [
        ("linear", 0.5, 0.86),
        ("linear", 1.0, 0.72),
        ("linear", 2.0, 0.41),
        ("circular", 0.5, 0.38),
        ("circular", 1.0, 0.29),
        ("circular", 2.0, 0.26),
    ],
    ids=["affine_p05", "affine_p1", "affine_p2", "circ_p05", "circ_p1", "circ_p2"],
)
def test_c07_noise_sweep(kind, p, target):
    """Multiplicative-noise sweep at n=1000, reduced N=200 (tol 0.07)."""
    x_range = (-5.0, 5.0) if kind == "linear" else None
    spec = DependencySpec(kind=kind, p=p, noise_mode="multiplicative", x_range=x_range)
    vals = np.empty(200)
    for t in range(200):
        rng = derive_rng(SEED, "c07", kind, p, t)
        vals[t] = copula_statistic(gen_dependency(spec, 1000, rng)).cos
    band(float(vals.mean()), target, 0.07, f"c07 {kind} p={p}")


# --------------------------------------------------------------- criterion 8


@pytest.mark.parametrize(
    "form,target", [(1, 0.01), (2, 0.52)], ids=["form1", "form2"]
)
def test_c08_ripley(form, target):
    value = copula_statistic(gen_ripley(form, 1000)).cos
    band(value, target, 0.05, f"c08 ripley form {form}")


# --------------------------------------------------------------- criterion 9


def test_c09_linear_power_one_at_low_noise():
    curve = run_power("linear", "cos", trials=200, n=200, alpha=0.05,
                      p_grid=[0.1], seed=SEED)
    print(f"c09: linear cos power at p=0.1 -> {curve.power[0]:.3f} (target 1)")
    assert curve.power[0] == 1.0


def test_c09_circular_heavy_noise_attains_size():
    curve = run_power("circular", "cos", trials=200, n=200, alpha=0.05,
                      p_grid=[3.0], seed=SEED)
    band(curve.power[0], 0.05, 0.07, "c09 circular cos power at p=3")


def test_c09_cos_dominates_dcor_on_circular():
    p_grid = [0.25, 0.5, 1.0]
    cos_curve = run_power("circular", "cos", trials=200, n=200, alpha=0.05,
                          p_grid=p_grid, seed=SEED)
    dcor_curve = run_power("circular", "dcor", trials=200, n=200, alpha=0.05,
                           p_grid=p_grid, seed=SEED)
    print(f"c09: circular power cos={cos_curve.power} dcor={dcor_curve.power}")
    for pc, pd, p in zip(cos_curve.power, dcor_curve.power, p_grid):
        assert pc >= pd, f"at p={p}: cos {pc} < dcor {pd}"


@pytest.mark.parametrize("kind", ["linear", "quadratic", "cubic", "fourth_root",
                                  "sinusoidal", "circular"])
def test_c09_power_monotone_trend(kind):
    """Power non-increasing in noise within 0.05 per step (N=n=200)."""
    spec = DependencySpec(kind=kind, freq=4.0 * np.pi)
    curve = run_power(spec, "cos", trials=200, n=200, alpha=0.05,
                      p_grid=[0.1, 0.5, 1.0, 2.0, 3.0], seed=SEED)
    print(f"c09 trend {kind}: {curve.power}")
    for a, b in zip(curve.power, curve.power[1:]):
        assert b <= a + 0.05, f"{kind}: power rose {a} -> {b}"


# --------------------------------------------------------------- criterion 10


def test_c10a_copula_eval_matches_enumeration():
    rng = derive_rng(SEED, "c10a")
    for n in range(2, 9):
        for _ in range(30):
            data = rng.normal(size=(n, 2))
            cop = empirical_copula(Sample(data))
            rows = cop.points.u.tolist()
            for _ in range(20):
                p = rng.random(2)
                assert cop.cdf(p) == naive_copula_count(rows, p.tolist()) / n
    print("c10a: exact match with naive enumeration for all n <= 8")


def test_c10b_kendall_matches_pair_counting():
    rng = derive_rng(SEED, "c10b")
    worst = 0.0
    for n in range(2, 9):
        for _ in range(30):
            x = rng.normal(size=n)
            y = rng.normal(size=n)
            diff = abs(
                kendall_mv(Sample.from_columns([x, y]))
                - kendall_tau_pairs(x.tolist(), y.tolist())
            )
            worst = max(worst, diff * n / 2)
            assert diff <= 2.0 / n + 1e-12
    print(f"c10b: kendall within 2/n of pair counting (worst {worst:.3f} of bound)")


def test_c10c_gaussian_sampler_closed_form():
    rng = derive_rng(SEED, "c10c")
    for rho in (0.0, 0.3, 0.5, 0.8):
        s = sample_gaussian_copula(rho, 10000, rng)
        value = empirical_copula(s).cdf([0.5, 0.5])
        band(value, gaussian_copula_at_half(rho), 0.01, f"c10c C(.5,.5) rho={rho}")


def test_c10d_dcor_identity():
    x = derive_rng(SEED, "c10d").normal(size=100)
    value = dcor(Sample.from_columns([x, x]))
    print(f"c10d: dcor(X,X) = {value}")
    assert value == 1.0


# --------------------------------------------------------------- criterion 11


def test_c11_network_property_suite():
    g = 4
    def mat(vals):
        m = np.zeros((g, g))
        for (i, j), v in vals.items():
            m[i, j] = m[j, i] = v
        return m

    sep = mat({(0, 1): 0.9, (2, 3): 0.8, (0, 2): 0.1, (0, 3): 0.2,
               (1, 2): 0.15, (1, 3): 0.05})
    perfect = score_matrix(sep, [(0, 1), (2, 3)])
    assert perfect.auc == 1.0 and perfect.f_max == 1.0

    const = score_matrix(mat({(i, j): 0.4 for i in range(g) for j in range(i + 1, g)}),
                         [(0, 1)])
    assert const.auc == pytest.approx(0.5)

    # operating point with precision = recall = 1/2 must score F = 1/2
    half = score_matrix(
        mat({(0, 2): 0.9, (0, 1): 0.8, (1, 2): 0.7, (0, 3): 0.2,
             (1, 3): 0.1, (2, 3): 0.0}),
        [(0, 1), (2, 3)],
    )
    assert half.f_max == pytest.approx(0.5)
    print("c11: perfect separator AUC=1/F=1, constant scorer AUC=0.5, F identity ok")


def test_c11_multivariate_consistency(tmp_path, capsys):
    """Columns sharing a strong latent factor: any pairwise statistic stays
    within 0.1 of the joint three-column statistic (via the CLI)."""
    rng = derive_rng(SEED, "c11mv")
    from scipy.special import ndtr

    n, rho = 2000, 0.9
    z = rng.standard_normal(n)
    cols = [ndtr(rho * z + np.sqrt(1 - rho**2) * rng.standard_normal(n))
            for _ in range(3)]
    path = tmp_path / "latent.csv"
    rows = ["a,b,c"] + [f"{a:.17g},{b:.17g},{c:.17g}" for a, b, c in zip(*cols)]
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")

    import json

    assert main(["cos", str(path)]) == 0
    joint = json.loads(capsys.readouterr().out)["cos"]
    pair_values = []
    for pair in ("a,b", "a,c", "b,c"):
        assert main(["cos", str(path), "--columns", pair]) == 0
        pair_values.append(json.loads(capsys.readouterr().out)["cos"])
    print(f"c11: joint cos {joint:.3f}, pairwise {np.round(pair_values, 3)}")
    for v in pair_values:
        assert abs(v - joint) <= 0.1


# --------------------------------------------------------------- criterion 12


def test_c12_performance_n2000():
    data = derive_rng(SEED, "c12").random((2000, 2))
    start = time.perf_counter()
    rep = copula_statistic(Sample(data))
    elapsed = time.perf_counter() - start
    print(f"c12: bivariate n=2000 in {elapsed * 1000:.1f} ms (limit 3000 ms)")
    assert 0.0 <= rep.cos <= 1.0
    assert elapsed < 3.0
