"""Four-player quantum Parrondo game on a two-dimensional discrete-time quantum walk."""

from .coins import (
    HADAMARD,
    CoinParams,
    InvalidCoinError,
    InvalidParameterError,
    Player,
    is_unitary,
    make_su2_coin,
    player_coin,
    player_matrix,
    tensor_coin,
)
from .oracle import check_engine_against_oracle, step1_amplitudes, step1_probabilities
from .rules import Mode, Verdict, decide_winners
from .strategies import (
    EPSILON_MIN,
    Kind,
    Schedule,
    ScheduleError,
    StrategySpec,
    build_alternating,
    build_combined,
    build_schedule,
    build_solo,
    run_game,
)
from .walk import (
    Distribution,
    Marginals,
    WalkState,
    apply_coin,
    apply_shift,
    dense_step_oracle,
    evolve,
    initial_state,
    marginals,
    position_distribution,
    step,
)

__version__ = "0.1.0"
