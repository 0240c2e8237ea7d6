"""scikit-learn style front end for the walks.

Hyperparameters live in ``__init__`` untouched (so ``get_params``,
``set_params`` and ``sklearn.base.clone`` work, which the sweep runner
relies on); ``fit`` validates them, runs the evolution and stores the
trajectory in trailing-underscore attributes.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import ValidationError, check_int
from .coins import CoinSpec, PairCoinSpec, format_coin, parse_coin, parse_interaction
from .entanglement import entanglement_entropy
from .evolution import run
from .lattice import (
    UNBIASED_SPINOR,
    Lattice,
    PairState,
    SingleState,
    canonical_initial,
    make_initial_pair,
    make_initial_single,
)
from .observables import (
    JointDistribution,
    ObservableRecord,
    avg_separation,
    correlation,
    joint_distribution,
    sigma,
)

__all__ = ["SingleParticleWalk", "TwoParticleWalk", "as_coin", "default_entropy_stride"]

# entropy at every step costs O(m^3) with m ~ 2(2n+1); beyond this many
# steps the default stride thins it out to about this many evaluations
ENTROPY_FULL_RATE_STEPS = 200


def default_entropy_stride(steps: int) -> int:
    return max(1, math.ceil(steps / ENTROPY_FULL_RATE_STEPS))


def as_coin(value) -> CoinSpec:
    if isinstance(value, str):
        return parse_coin(value)
    # round-trip through the text form to reject non-coin objects early
    return parse_coin(format_coin(value))


def _check_snapshot_steps(snapshot_steps, steps):
    out = sorted({check_int(s, "snapshot step", minimum=0) for s in (snapshot_steps or ())})
    if out and out[-1] > steps:
        raise ValidationError(f"snapshot step {out[-1]} is beyond the run length {steps}")
    return out


class SingleParticleWalk(BaseEstimator):
    """One walker started at the origin.

    Parameters
    ----------
    coin : str or CoinSpec
        ``"hadamard"``, ``"alpha:A[:TAU]"``, ``"phi:Q/P"`` or a spec object.
    steps : int
        Number of coin-then-shift steps.
    spinor : pair of complex, optional
        Initial coin state at the origin; defaults to (1, i)/sqrt(2).
    snapshot_steps : sequence of int
        Steps at which the position distribution is kept.

    Attributes
    ----------
    sigma_ : ndarray of shape (steps + 1,)
        Position standard deviation after each step (index 0 is the start).
    norms_ : ndarray of shape (steps + 1,)
    state_ : SingleState
        Final state.
    snapshots_ : dict
        step -> position distribution.
    """

    def __init__(self, coin="hadamard", steps=100, spinor=None, snapshot_steps=()):
        self.coin = coin
        self.steps = steps
        self.spinor = spinor
        self.snapshot_steps = snapshot_steps

    def fit(self, X=None, y=None):
        """Run the walk. ``X`` may be a prepared :class:`SingleState`."""
        steps = check_int(self.steps, "steps", minimum=0)
        coin = as_coin(self.coin)
        snaps = set(_check_snapshot_steps(self.snapshot_steps, steps))

        if X is None:
            spinor = UNBIASED_SPINOR if self.spinor is None else self.spinor
            initial = make_initial_single(Lattice.for_steps(steps), spinor)
        elif isinstance(X, SingleState):
            initial = X
        else:
            raise ValidationError(f"X must be None or a SingleState, got {type(X).__name__}")

        sig = np.empty(steps + 1)
        norms = np.empty(steps + 1)
        snapshots: Dict[int, np.ndarray] = {}

        def observe(k, state):
            p = state.probabilities()
            norms[k] = p.sum()
            sig[k] = sigma(state)
            if k in snaps:
                snapshots[k] = p

        self.state_ = run(initial, coin, steps, [observe])
        self.lattice_ = initial.lattice
        self.sigma_ = sig
        self.norms_ = norms
        self.snapshots_ = snapshots
        return self

    def records(self) -> List[ObservableRecord]:
        check_is_fitted(self, "sigma_")
        return [ObservableRecord(step=k, sigma=float(s)) for k, s in enumerate(self.sigma_)]


class TwoParticleWalk(BaseEstimator):
    """Two walkers on a shared line with an optional contact interaction.

    Parameters
    ----------
    coin1, coin2 : str or CoinSpec
        Coins for particle 1 and particle 2.
    interaction : {"none", "identity", "pi-phase"}
    initial : {"sep", "psi-plus", "psi-minus"}
        Named start state, used when ``fit`` gets no explicit state.
    steps : int
    record_entropy : bool
    entropy_stride : int or None
        Compute entropy on steps divisible by this; ``None`` picks 1 for runs
        up to 200 steps and a coarser stride beyond.
    snapshot_steps : sequence of int
        Steps whose joint distribution is kept in ``snapshots_``.
    """

    def __init__(
        self,
        coin1="hadamard",
        coin2="hadamard",
        interaction="none",
        initial="sep",
        steps=100,
        record_entropy=True,
        entropy_stride=None,
        snapshot_steps=(),
    ):
        self.coin1 = coin1
        self.coin2 = coin2
        self.interaction = interaction
        self.initial = initial
        self.steps = steps
        self.record_entropy = record_entropy
        self.entropy_stride = entropy_stride
        self.snapshot_steps = snapshot_steps

    def pair_coin_spec(self) -> PairCoinSpec:
        return PairCoinSpec(as_coin(self.coin1), as_coin(self.coin2), parse_interaction(self.interaction))

    def fit(self, X=None, y=None):
        """Run the walk. ``X`` may be a prepared :class:`PairState`."""
        steps = check_int(self.steps, "steps", minimum=0)
        spec = self.pair_coin_spec()
        stride = (
            default_entropy_stride(steps)
            if self.entropy_stride is None
            else check_int(self.entropy_stride, "entropy_stride", minimum=1)
        )
        snaps = set(_check_snapshot_steps(self.snapshot_steps, steps))

        if X is None:
            initial = make_initial_pair(Lattice.for_steps(steps), canonical_initial(self.initial))
        elif isinstance(X, PairState):
            initial = X
        else:
            raise ValidationError(f"X must be None or a PairState, got {type(X).__name__}")

        c12 = np.empty(steps + 1)
        delta = np.empty(steps + 1)
        norms = np.empty(steps + 1)
        ent = np.full(steps + 1, np.nan)
        snapshots: Dict[int, JointDistribution] = {}

        def observe(k, state):
            dist = joint_distribution(state)
            norms[k] = dist.total()
            c12[k] = correlation(dist)
            delta[k] = avg_separation(dist)
            if self.record_entropy and k % stride == 0:
                ent[k] = entanglement_entropy(state)
            if k in snaps:
                snapshots[k] = dist

        self.state_ = run(initial, spec, steps, [observe])
        self.lattice_ = initial.lattice
        self.c12_ = c12
        self.delta12_ = delta
        self.entropy_ = ent
        self.norms_ = norms
        self.snapshots_ = snapshots
        self.entropy_stride_ = stride
        return self

    def records(self) -> List[ObservableRecord]:
        check_is_fitted(self, "c12_")
        out = []
        for k in range(len(self.c12_)):
            e: Optional[float] = None if np.isnan(self.entropy_[k]) else float(self.entropy_[k])
            out.append(
                ObservableRecord(step=k, c12=float(self.c12_[k]), delta12=float(self.delta12_[k]), entropy=e)
            )
        return out
