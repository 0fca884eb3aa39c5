"""Two-sided manipulation games on stable matching markets.

Deferred acceptance, accomplice / one-for-many / self manipulations, push-up
best-response dynamics converging to Nash equilibria, stability and welfare
analytics, and seeded preference generators.
"""

from .core import (
    InputError,
    Instance,
    Matching,
    ParseError,
    PreferenceList,
    Side,
    StrategicPairs,
    StrategyProfile,
    ValidationError,
    effective_profile,
    load_instance,
    load_matching,
    load_pairs,
    load_profile,
    prefers,
    rank_of,
    serialize_instance,
    serialize_matching,
    serialize_pairs,
    serialize_profile,
)
from .da import da_on_profile, run_da
from .dynamics import (
    DynamicsInvariantError,
    DynamicsStep,
    DynamicsTrace,
    enumerate_all_ne,
    first_accomplice_deviation,
    first_woman_deviation,
    run_inconspicuous_dynamics,
    run_pushup_dynamics,
    trace_to_dict,
    verify_ne_accomplice,
    verify_ne_one_for_many,
    verify_ne_woman,
)
from .gen import MallowsParams, derive_rng, generate_instance, kendall_tau, mallows_sample
from .harness import (
    CSV_HEADER,
    EquilibriumCheckError,
    ExperimentConfig,
    PhiGrid,
    SizeSweep,
    WelfareRecord,
    rows_to_csv,
    run_experiment,
    run_length_experiment,
    run_welfare_experiment,
    welfare_record,
    write_csv,
)
from .manipulation import (
    ManipulationResult,
    find_accomplice_manipulation,
    find_one_for_many_manipulation,
    find_self_manipulation,
    one_for_many_to_accomplice,
    push_up,
)
from .stability import (
    OracleBoundError,
    PoAPoS,
    StabilityReport,
    blocking_pairs,
    enumerate_stable,
    is_stable,
    is_x_stable,
    poa_pos,
)

__all__ = [name for name in dir() if not name.startswith("_")]
