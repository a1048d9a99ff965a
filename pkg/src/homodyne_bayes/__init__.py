"""Bayesian phase estimation for squeezed-vacuum homodyne interferometry.

The package covers the full pipeline: Gaussian probe states and their
phase-shifted covariances, homodyne/double-homodyne statistics and samplers,
Fisher-information precision bounds, grid-based Bayesian posteriors,
two-step adaptive retuning protocols, and a seeded Monte Carlo experiment
harness with CSV/JSON reports.
"""
from .adaptive import (
    Scheme,
    TwoStepPlan,
    default_rough_count,
    plan_phase_retune,
    plan_squeeze_retune,
    rough_estimate,
    run_two_step,
)
from .bayes import (
    DEFAULT_GRID_SIZE,
    PosteriorGrid,
    asymptotic_posterior,
    gaussian_approx_variance,
    posterior_from_batch,
    posterior_from_stats,
    posterior_to_gaussian_ratio,
    skewness,
)
from .experiment import (
    AggregateRow,
    ExperimentConfig,
    ExperimentResult,
    RunRecord,
    emit_csv,
    emit_json,
    log_m_grid,
    run_experiment,
)
from .fisher import (
    BoundReport,
    NonIdentifiableError,
    bound_report,
    fisher_heterodyne,
    fisher_homodyne,
    numeric_fisher_heterodyne,
    numeric_fisher_homodyne,
    optimal_phase,
    optimal_squeezing,
    optimal_variance,
    qfi,
    variance_ratio_vs_optimal,
)
from .measurement import (
    HeterodynePoint,
    HomodyneBatch,
    QuadratureSample,
    heterodyne_logpdf,
    homodyne_logpdf,
    homodyne_variance,
    sample_homodyne,
)
from .probe import (
    HALF_PI,
    VACUUM_VARIANCE,
    CovarianceMatrix2,
    Probe,
    energy_fluctuation,
    phase_shifted_covariance,
    probe_covariance,
)
from .rng import child_seed

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # probe
    "HALF_PI",
    "VACUUM_VARIANCE",
    "Probe",
    "CovarianceMatrix2",
    "probe_covariance",
    "phase_shifted_covariance",
    "energy_fluctuation",
    # measurement
    "QuadratureSample",
    "HomodyneBatch",
    "HeterodynePoint",
    "homodyne_variance",
    "homodyne_logpdf",
    "sample_homodyne",
    "heterodyne_logpdf",
    # fisher information and bounds
    "NonIdentifiableError",
    "BoundReport",
    "bound_report",
    "fisher_homodyne",
    "fisher_heterodyne",
    "qfi",
    "optimal_variance",
    "optimal_phase",
    "optimal_squeezing",
    "variance_ratio_vs_optimal",
    "numeric_fisher_homodyne",
    "numeric_fisher_heterodyne",
    # posterior engine
    "DEFAULT_GRID_SIZE",
    "PosteriorGrid",
    "posterior_from_stats",
    "posterior_from_batch",
    "asymptotic_posterior",
    "gaussian_approx_variance",
    "posterior_to_gaussian_ratio",
    "skewness",
    # adaptive protocols
    "Scheme",
    "TwoStepPlan",
    "default_rough_count",
    "rough_estimate",
    "plan_squeeze_retune",
    "plan_phase_retune",
    "run_two_step",
    # experiment harness
    "ExperimentConfig",
    "ExperimentResult",
    "RunRecord",
    "AggregateRow",
    "log_m_grid",
    "run_experiment",
    "emit_csv",
    "emit_json",
    # reproducibility
    "child_seed",
]
