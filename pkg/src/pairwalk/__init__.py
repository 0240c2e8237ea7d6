"""One- and two-particle discrete-time quantum walks with time-dependent coins."""

from ._validation import BoundaryError, ValidationError
from .coins import (
    Alpha,
    General,
    Hadamard,
    InteractionRule,
    PairCoinSpec,
    Phi,
    coin_at,
    pair_coin_at,
    parse_coin,
)
from .entanglement import (
    SchmidtSpectrum,
    bipartite_matrix,
    entanglement_entropy,
    entropy,
    schmidt_spectrum,
)
from .estimators import SingleParticleWalk, TwoParticleWalk
from .evolution import oracle_evolve, run, step_pair, step_single
from .lattice import (
    Lattice,
    PairState,
    SingleState,
    Spin,
    make_initial_pair,
    make_initial_single,
    norm,
)
from .observables import (
    JointDistribution,
    ObservableRecord,
    avg_separation,
    correlation,
    joint_distribution,
    marginals,
    sigma,
)
from .scenarios import PRESETS, ScenarioConfig, fit_exponent, run_scenario, run_sweep

__all__ = [
    "Alpha",
    "avg_separation",
    "bipartite_matrix",
    "BoundaryError",
    "coin_at",
    "correlation",
    "entanglement_entropy",
    "entropy",
    "fit_exponent",
    "General",
    "Hadamard",
    "InteractionRule",
    "joint_distribution",
    "JointDistribution",
    "Lattice",
    "make_initial_pair",
    "make_initial_single",
    "marginals",
    "norm",
    "ObservableRecord",
    "oracle_evolve",
    "pair_coin_at",
    "PairCoinSpec",
    "PairState",
    "parse_coin",
    "Phi",
    "PRESETS",
    "run",
    "run_scenario",
    "run_sweep",
    "ScenarioConfig",
    "schmidt_spectrum",
    "SchmidtSpectrum",
    "sigma",
    "SingleParticleWalk",
    "SingleState",
    "Spin",
    "step_pair",
    "step_single",
    "TwoParticleWalk",
    "ValidationError",
]

__version__ = "0.1.0"
