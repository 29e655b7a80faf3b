"""Basis pursuit de-noising, Gibbs-measure sampling and low-temperature scaling checks."""

from .model import (
    NumericalError,
    Problem,
    load_problem,
    objective,
    objective_gap,
    soft_threshold,
)
from .solver import (
    PlseSolution,
    SolverError,
    SolverOptions,
    classify_support,
    dual_vector,
    lipschitz_constant,
    solve,
    uniqueness_certificate,
)
from .sampling import (
    AnnealConfig,
    Batch1DResult,
    ChainResult,
    MhConfig,
    anneal_temperatures,
    mh_chain,
    mh_chain_batch_1d,
    replicate_seed,
    sa_chain,
    sa_iterations,
)
from .limits import (
    LimitLaw1D,
    boundary_law,
    exterior_law,
    interior_cdf,
    interior_density,
    interior_mean,
    interior_second_moment,
    ks_statistic,
    sample_interior,
)
from .criteria import (
    CriterionReport,
    CriterionRow,
    DegenerateChainError,
    DesignDistribution,
    ProposalFamily,
    bias_criterion_boundary,
    bias_criterion_exterior,
    bias_criterion_interior,
    criterion_values,
    msq_criterion_boundary,
    msq_criterion_exterior,
    msq_criterion_interior,
    rank_proposals,
)
from .temperature import (
    TemperatureConstraintError,
    TemperatureTarget,
    bias_mse_ratio,
    boundary_temperature,
    consistent_temperature,
    exterior_temperature,
    interior_temperature_from_bias,
    interior_temperature_from_mse,
    temperature_curves,
)
from .scaling import (
    RescaledSample,
    ScalingRow,
    SignEvent,
    brute_force_gibbs_1d,
    limit_density_nd,
    partition_indices,
    rescale_samples,
    sign_event_frequency,
    thinning_factor,
    verify_scaling_1d,
)

__version__ = "0.1.0"
