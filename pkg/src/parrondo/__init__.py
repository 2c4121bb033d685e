"""Capital games on a line: classical, unitary walk, CP map, measured."""
from .classical import (
    AlwaysA,
    AlwaysB,
    CapitalDistribution,
    ClassicalGameParams,
    DegenerateChainError,
    Periodic,
    RandomMixture,
    SingularPotentialError,
    default_params,
    distribution_steps,
    losing_threshold,
    play_trajectory,
    propagate_distribution,
    ratchet_potential,
    stationary_drift,
)
from .cpmap import (
    DensityState,
    expected_capital_density,
    init_density,
    position_populations,
    sample_unitary_trajectory,
    second_moment_density,
    step_density,
    swap_conjugate,
)
from .gates import (
    ATOL_CROSS,
    ATOL_EXACT,
    CoinSet,
    MIX_PARAMS,
    SU2Params,
    default_coins,
    is_unitary,
    not_gate,
    su2,
)
from .kspace import (
    KGrid,
    KSpaceState,
    build_block_matrix,
    capital_via_kspace,
    propagate,
    propagate_steps,
    reconstruct_positions,
)
from .measured import average_trajectories, run_d_measured, run_dc_measured
from .series import CapitalSeries, format_float
from .walk import (
    LatticeOverflowError,
    PureState,
    StepOperators,
    expected_capital,
    init_state,
    position_distribution,
    run,
    second_moment,
    step,
)

__all__ = [
    "ATOL_CROSS",
    "ATOL_EXACT",
    "AlwaysA",
    "AlwaysB",
    "CapitalDistribution",
    "CapitalSeries",
    "ClassicalGameParams",
    "CoinSet",
    "DegenerateChainError",
    "DensityState",
    "KGrid",
    "KSpaceState",
    "LatticeOverflowError",
    "MIX_PARAMS",
    "Periodic",
    "PureState",
    "RandomMixture",
    "SU2Params",
    "SingularPotentialError",
    "StepOperators",
    "average_trajectories",
    "build_block_matrix",
    "capital_via_kspace",
    "default_coins",
    "default_params",
    "distribution_steps",
    "expected_capital",
    "expected_capital_density",
    "format_float",
    "init_density",
    "init_state",
    "is_unitary",
    "losing_threshold",
    "not_gate",
    "play_trajectory",
    "position_distribution",
    "position_populations",
    "propagate",
    "propagate_distribution",
    "propagate_steps",
    "ratchet_potential",
    "reconstruct_positions",
    "run",
    "run_d_measured",
    "run_dc_measured",
    "sample_unitary_trajectory",
    "second_moment",
    "second_moment_density",
    "stationary_drift",
    "step",
    "step_density",
    "su2",
    "swap_conjugate",
]
