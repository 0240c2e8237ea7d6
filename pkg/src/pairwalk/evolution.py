"""Coin-then-shift stepping for one and two walkers, plus a dense reference.

``step_single`` / ``step_pair`` are the fast kernels used everywhere.
``oracle_evolve`` rebuilds every step as an explicit matrix on the full
Hilbert space and exists only to check the kernels on small lattices.
"""

from __future__ import annotations

from typing import Callable, Iterable, Union

import numpy as np

from ._validation import BoundaryError, ValidationError, check_int
from .coins import CoinSpec, InteractionRule, PairCoinSpec, coin_at, pair_coin_at
from .lattice import PairState, SingleState

__all__ = [
    "step_single",
    "step_pair",
    "run",
    "oracle_evolve",
    "oracle_step_operator",
    "ORACLE_MAX_HALF_WIDTH",
    "ORACLE_MAX_STEPS",
]

ORACLE_MAX_HALF_WIDTH = 12
ORACLE_MAX_STEPS = 10

Observer = Callable[[int, Union[SingleState, PairState]], None]


def _check_single_edges(amp: np.ndarray) -> None:
    if np.any(amp[0] != 0) or np.any(amp[-1] != 0):
        raise BoundaryError(
            "walker amplitude reached the lattice edge; enlarge the lattice (half-width > steps)"
        )


def _pair_window(state: PairState):
    window = state.window()
    if window is None:
        return None
    lo, hi = window
    if lo == 0 or hi == state.lattice.size - 1:
        # the radius hint is only a bound; look at the actual edge cells
        amp = state.amp
        if np.any(amp[0] != 0) or np.any(amp[-1] != 0) or np.any(amp[:, :, 0] != 0) or np.any(amp[:, :, -1] != 0):
            raise BoundaryError(
                "pair amplitude reached the lattice edge; enlarge the lattice (half-width > steps)"
            )
        lo, hi = max(lo, 1), min(hi, state.lattice.size - 2)
    return lo, hi


def step_single(state: SingleState, spec: CoinSpec, t: int) -> SingleState:
    """Apply the coin for time ``t`` at every site, then shift up +1 / down -1."""
    amp = state.amp
    _check_single_edges(amp)
    coined = amp @ coin_at(spec, t).T
    out = np.zeros_like(amp)
    out[1:, 0] = coined[:-1, 0]
    out[:-1, 1] = coined[1:, 1]
    return SingleState(state.lattice, out)


def step_pair(state: PairState, spec: PairCoinSpec, t: int) -> PairState:
    """Apply the per-cell 4x4 coin (interaction-substituted on x == y), then
    shift each particle by +1 (up) or -1 (down).

    Work is confined to the square window spanned by the occupied sites.
    """
    amp = state.amp
    out = np.zeros_like(amp)
    window = _pair_window(state)
    if window is None:
        return PairState(state.lattice, out, radius=-1)
    lo, hi = window
    sub = amp[lo : hi + 1, :, lo : hi + 1, :]

    c1 = coin_at(spec.coin1, t)
    c2 = coin_at(spec.coin2, t)
    half = sub @ c2.T  # coin2 on the s2 axis
    coined = np.empty_like(sub)
    coined[:, 0] = c1[0, 0] * half[:, 0] + c1[0, 1] * half[:, 1]
    coined[:, 1] = c1[1, 0] * half[:, 0] + c1[1, 1] * half[:, 1]

    if spec.interaction is not InteractionRule.NONE:
        # the window is the same on both axes, so its diagonal is x == y
        diag = np.arange(sub.shape[0])
        if spec.interaction is InteractionRule.IDENTITY:
            coined[diag, :, diag, :] = sub[diag, :, diag, :]
        else:
            coined[diag, :, diag, :] *= -1.0

    # target window starts one site left of lo: up lands at i + 2, down at i
    tgt = out[lo - 1 : hi + 2, :, lo - 1 : hi + 2, :]
    tgt[2:, 0, 2:, 0] = coined[:, 0, :, 0]
    tgt[2:, 0, :-2, 1] = coined[:, 0, :, 1]
    tgt[:-2, 1, 2:, 0] = coined[:, 1, :, 0]
    tgt[:-2, 1, :-2, 1] = coined[:, 1, :, 1]
    half_width = state.lattice.half_width
    return PairState(state.lattice, out, radius=max(half_width - lo, hi - half_width) + 1)


def run(
    initial: Union[SingleState, PairState],
    spec: Union[CoinSpec, PairCoinSpec],
    steps: int,
    observers: Iterable[Observer] = (),
):
    """Evolve ``steps`` times; observers see ``(0, initial)`` and then every
    ``(k, state)`` with the k-th step having used coin time ``t = k - 1``."""
    steps = check_int(steps, "steps", minimum=0)
    observers = list(observers)
    if isinstance(initial, PairState):
        if not isinstance(spec, PairCoinSpec):
            raise ValidationError("pair states need a PairCoinSpec")
        step = step_pair
    elif isinstance(initial, SingleState):
        if isinstance(spec, PairCoinSpec):
            raise ValidationError("single states need a single CoinSpec")
        step = step_single
    else:
        raise TypeError(f"unsupported state type {type(initial).__name__}")

    state = initial
    for obs in observers:
        obs(0, state)
    for k in range(1, steps + 1):
        state = step(state, spec, k - 1)
        for obs in observers:
            obs(k, state)
    return state


def _flat_index(size: int, x, s1, y, s2):
    return ((x * 2 + s1) * size + y) * 2 + s2


def _oracle_coin(size: int, spec: PairCoinSpec, t: int) -> np.ndarray:
    dim = 4 * size * size
    op = np.zeros((dim, dim), dtype=np.complex128)
    off_site = pair_coin_at(spec, t, same_site=False)
    on_site = pair_coin_at(spec, t, same_site=True)
    spins = [(a, b) for a in (0, 1) for b in (0, 1)]
    for x in range(size):
        for y in range(size):
            block = on_site if x == y else off_site
            for r, (a, b) in enumerate(spins):
                row = _flat_index(size, x, a, y, b)
                for c, (a2, b2) in enumerate(spins):
                    op[row, _flat_index(size, x, a2, y, b2)] = block[r, c]
    return op


def _oracle_shift(size: int) -> np.ndarray:
    # periodic wrap keeps the matrix a permutation; states never reach the edge
    dim = 4 * size * size
    op = np.zeros((dim, dim))
    move = {0: 1, 1: -1}
    for x in range(size):
        for y in range(size):
            for a in (0, 1):
                for b in (0, 1):
                    src = _flat_index(size, x, a, y, b)
                    dst = _flat_index(size, (x + move[a]) % size, a, (y + move[b]) % size, b)
                    op[dst, src] = 1.0
    return op


def _check_oracle_size(size_half_width: int) -> None:
    if size_half_width > ORACLE_MAX_HALF_WIDTH:
        raise ValidationError(
            f"oracle refuses lattices wider than half-width {ORACLE_MAX_HALF_WIDTH} "
            f"(got {size_half_width}); the dense operator would be too large"
        )


def oracle_step_operator(lattice, spec: PairCoinSpec, t: int) -> np.ndarray:
    """The full step matrix U_t = S C_t on the flattened pair space."""
    _check_oracle_size(lattice.half_width)
    size = lattice.size
    return _oracle_shift(size) @ _oracle_coin(size, spec, t)


def oracle_evolve(initial: PairState, spec: PairCoinSpec, steps: int) -> PairState:
    """Reference evolution using explicit dense coin and shift matrices."""
    steps = check_int(steps, "steps", minimum=0)
    if steps > ORACLE_MAX_STEPS:
        raise ValidationError(f"oracle supports at most {ORACLE_MAX_STEPS} steps, got {steps}")
    lattice = initial.lattice
    _check_oracle_size(lattice.half_width)
    size = lattice.size
    shift = _oracle_shift(size)
    vec = initial.amp.reshape(-1).copy()
    for t in range(steps):
        vec = shift @ (_oracle_coin(size, spec, t) @ vec)
    return PairState(lattice, vec.reshape(size, 2, size, 2))
