"""Sampling, estimation and Monte Carlo risk under the bivariate Clayton copula."""

from .copula import ClaytonCopula, cdf, generator, log_pdf, make_copula, pdf
from .estimation import (
    ClaytonMLE,
    FitOptions,
    FitResult,
    RankTransformer,
    fit_mle,
    log_likelihood,
    pseudo_observations,
)
from .exceptions import (
    CopulaError,
    DensityOverflow,
    DomainError,
    EmptyTail,
    InvalidInput,
    InvalidParameter,
    NoInteriorMaximum,
    NonFiniteObjective,
    PipelineError,
)
from .risk import (
    AggregateSample,
    ClaytonRiskEstimator,
    RiskReport,
    aggregate,
    empirical_quantile,
    expected_shortfall,
    run_risk_pipeline,
    value_at_risk,
)
from .rng import RngStream, stream
from .sampling import CHUNK_SIZE, sample, sample_parallel
from .studies import (
    RecoveryRecord,
    ScalingRecord,
    linear_grid,
    run_recovery,
    run_scaling_bench,
)

__version__ = "0.1.0"
