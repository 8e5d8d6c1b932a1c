"""Rank-based copula statistic for nonlinear multivariate dependence,
with a calibrated independence test, reference metrics, synthetic-data
generators, and reproducible experiment pipelines."""

from .copula_core import (
    EmpiricalCopula,
    PseudoSample,
    Sample,
    empirical_copula,
    frechet_lower,
    frechet_upper,
    product_copula,
    pseudo_observations,
    relative_distance,
)
from .errors import (
    BoundsViolated,
    CopstatError,
    DegenerateMarginal,
    DimensionMismatch,
    EmptyEdgeList,
    InvalidGrid,
    InvalidInput,
    InvalidParam,
)
from .experiments import (
    BiasRow,
    EquitabilityResult,
    NetworkScore,
    PowerCurve,
    dependence_matrix,
    run_bias_table,
    run_equitability,
    run_power,
    score_matrix,
    score_network,
)
from .independence import (
    DEFAULT_NULL_CURVE,
    PUBLISHED_NULL_CURVE,
    CalibrationCurve,
    TestResult,
    calibrate_null,
    null_moments,
    test_independence,
    type2_error,
)
from .metrics import compute_metric, dcor, kendall_mv, pearson, spearman
from .statistic import (
    CosReport,
    DomainPartition,
    DomainRecord,
    DomainRun,
    Trace,
    copula_statistic,
    copula_trace,
    detect_local_optima,
    domain_gamma,
    partition_domains,
)
from .synth import (
    DependencySpec,
    LcgStream,
    derive_rng,
    gen_dependency,
    gen_ripley,
    sample_clayton_copula,
    sample_gaussian_copula,
    sample_gumbel_copula,
)

__all__ = [
    "BiasRow",
    "BoundsViolated",
    "CalibrationCurve",
    "CopstatError",
    "CosReport",
    "DEFAULT_NULL_CURVE",
    "DegenerateMarginal",
    "DependencySpec",
    "DimensionMismatch",
    "DomainPartition",
    "DomainRecord",
    "DomainRun",
    "EmptyEdgeList",
    "EmpiricalCopula",
    "EquitabilityResult",
    "InvalidGrid",
    "InvalidInput",
    "InvalidParam",
    "LcgStream",
    "NetworkScore",
    "PUBLISHED_NULL_CURVE",
    "PowerCurve",
    "PseudoSample",
    "Sample",
    "TestResult",
    "Trace",
    "calibrate_null",
    "compute_metric",
    "copula_statistic",
    "copula_trace",
    "dcor",
    "dependence_matrix",
    "derive_rng",
    "detect_local_optima",
    "domain_gamma",
    "empirical_copula",
    "frechet_lower",
    "frechet_upper",
    "gen_dependency",
    "gen_ripley",
    "kendall_mv",
    "null_moments",
    "partition_domains",
    "pearson",
    "product_copula",
    "pseudo_observations",
    "relative_distance",
    "run_bias_table",
    "run_equitability",
    "run_power",
    "score_matrix",
    "sample_clayton_copula",
    "sample_gaussian_copula",
    "sample_gumbel_copula",
    "score_network",
    "spearman",
    "test_independence",
    "type2_error",
]

__version__ = "0.1.0"
