from .experiments import (
    EPS_GRID,
    ExperimentReport,
    ModelSpec,
    TrialResult,
    concentration_experiment,
    convergence_experiment,
    parse_offspring,
)
from .limits import LimitSolution, azuma_bound, er_limit
from .local import (
    OVERFLOW,
    LimitEstimate,
    NeighborhoodHistogram,
    estimate_limit_ratio,
    neighborhood_histogram,
    reference_histogram,
    tv_distance,
)
