"""Amplitude containers for one and two walkers on a bounded integer line.

Positions run from ``-N`` to ``+N``; the spin axis uses index 0 for up
(moves +1 under the shift) and 1 for down (moves -1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from ._validation import ValidationError, check_normalized

__all__ = [
    "Spin",
    "Lattice",
    "SingleState",
    "PairState",
    "make_initial_single",
    "make_initial_pair",
    "norm",
    "UNBIASED_SPINOR",
]


class Spin(enum.IntEnum):
    UP = 0
    DOWN = 1

    @property
    def shift(self) -> int:
        return 1 if self is Spin.UP else -1


UNBIASED_SPINOR = (1 / np.sqrt(2), 1j / np.sqrt(2))


@dataclass(frozen=True)
class Lattice:
    """Finite window ``[-half_width, half_width]`` of the integer line."""

    half_width: int

    def __post_init__(self):
        if int(self.half_width) != self.half_width or self.half_width < 0:
            raise ValidationError(f"half_width must be a non-negative integer, got {self.half_width!r}")

    @classmethod
    def for_steps(cls, steps: int, margin: int = 1) -> "Lattice":
        return cls(int(steps) + margin)

    @property
    def size(self) -> int:
        return 2 * self.half_width + 1

    @property
    def positions(self) -> np.ndarray:
        return np.arange(-self.half_width, self.half_width + 1)

    def index(self, x: int) -> int:
        if abs(x) > self.half_width:
            raise IndexError(f"position {x} outside lattice of half-width {self.half_width}")
        return x + self.half_width

    def position(self, i: int) -> int:
        if not 0 <= i < self.size:
            raise IndexError(f"index {i} outside [0, {self.size})")
        return i - self.half_width


@dataclass
class SingleState:
    """One walker; ``amp[i, s]`` is the amplitude at position index ``i``, spin ``s``."""

    lattice: Lattice
    amp: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.amp = np.asarray(self.amp, dtype=np.complex128)
        if self.amp.shape != (self.lattice.size, 2):
            raise ValidationError(
                f"amplitude shape {self.amp.shape} does not match lattice ({self.lattice.size}, 2)"
            )

    @classmethod
    def zeros(cls, lattice: Lattice) -> "SingleState":
        return cls(lattice, np.zeros((lattice.size, 2), dtype=np.complex128))

    def copy(self) -> "SingleState":
        return SingleState(self.lattice, self.amp.copy())

    def probabilities(self) -> np.ndarray:
        return np.sum(np.abs(self.amp) ** 2, axis=1)


@dataclass
class PairState:
    """Two walkers; ``amp[ix, s1, iy, s2]`` holds the coefficient a_{x s1 y s2}.

    ``radius``, when set, is an upper bound on |x| and |y| over the support.
    Builders and step functions maintain it so that hot loops can skip
    empty parts of the lattice; ``None`` means unknown (a full scan is used).
    """

    lattice: Lattice
    amp: np.ndarray = field(repr=False)
    radius: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        self.amp = np.asarray(self.amp, dtype=np.complex128)
        n = self.lattice.size
        if self.amp.shape != (n, 2, n, 2):
            raise ValidationError(
                f"amplitude shape {self.amp.shape} does not match lattice ({n}, 2, {n}, 2)"
            )

    @classmethod
    def zeros(cls, lattice: Lattice) -> "PairState":
        n = lattice.size
        return cls(lattice, np.zeros((n, 2, n, 2), dtype=np.complex128))

    def copy(self) -> "PairState":
        return PairState(self.lattice, self.amp.copy(), self.radius)

    def amplitude(self, x: int, s1: int, y: int, s2: int) -> complex:
        lat = self.lattice
        return complex(self.amp[lat.index(x), int(s1), lat.index(y), int(s2)])

    def as_vector(self) -> np.ndarray:
        return self.amp.reshape(-1)

    def window(self) -> Optional[Tuple[int, int]]:
        """Index range ``[lo, hi]`` (same on both axes) containing the support;
        ``None`` for the zero state."""
        half = self.lattice.half_width
        if self.radius is not None:
            r = min(self.radius, half)
            return (half - r, half + r) if r >= 0 else None
        r = support_radius(self)
        return None if r < 0 else (half - r, half + r)


State = Union[SingleState, PairState]


def make_initial_single(lattice: Lattice, spinor: Sequence[complex] = UNBIASED_SPINOR) -> SingleState:
    """Place ``spinor = (c_up, c_down)`` at the origin."""
    spinor = np.asarray(spinor, dtype=np.complex128)
    if spinor.shape != (2,):
        raise ValidationError(f"spinor must have two components, got shape {spinor.shape}")
    check_normalized(spinor, what="spinor")
    state = SingleState.zeros(lattice)
    state.amp[lattice.index(0)] = spinor
    return state


_S = 1 / np.sqrt(2)

# (x, s1, y, s2, coefficient); all at the origin
_NAMED_PAIR_STATES = {
    "sep": [
        (0, Spin.UP, 0, Spin.UP, 0.5),
        (0, Spin.UP, 0, Spin.DOWN, 0.5j),
        (0, Spin.DOWN, 0, Spin.UP, 0.5j),
        (0, Spin.DOWN, 0, Spin.DOWN, -0.5),
    ],
    "psi-plus": [
        (0, Spin.UP, 0, Spin.DOWN, _S),
        (0, Spin.DOWN, 0, Spin.UP, _S),
    ],
    "psi-minus": [
        (0, Spin.UP, 0, Spin.DOWN, _S),
        (0, Spin.DOWN, 0, Spin.UP, -_S),
    ],
}

_ALIASES = {
    "sep": "sep",
    "psiplus": "psi-plus",
    "psi+": "psi-plus",
    "psi-plus": "psi-plus",
    "psiminus": "psi-minus",
    "psi-": "psi-minus",
    "psi-minus": "psi-minus",
}

PairInitial = Union[str, Iterable[Tuple[int, int, int, int, complex]]]


def canonical_initial(which: str) -> str:
    try:
        return _ALIASES[which.strip().lower().replace("_", "-")]
    except KeyError:
        raise ValidationError(
            f"unknown initial state {which!r}; expected one of sep, psi-plus, psi-minus"
        ) from None


def make_initial_pair(lattice: Lattice, which: PairInitial = "sep") -> PairState:
    """Build |Sep>, |psi+>, |psi-> by name, or a custom state from
    ``(x, s1, y, s2, amplitude)`` tuples."""
    if isinstance(which, str):
        terms = _NAMED_PAIR_STATES[canonical_initial(which)]
    else:
        terms = list(which)
        if not terms:
            raise ValidationError("custom initial state has no terms")
    state = PairState.zeros(lattice)
    for x, s1, y, s2, c in terms:
        state.amp[lattice.index(x), int(s1), lattice.index(y), int(s2)] += c
    check_normalized(state.amp, what="initial pair state")
    state.radius = support_radius(state)
    return state


def norm(state: State) -> float:
    """Total probability sum |amp|^2 (not its square root)."""
    return float(np.sum(np.abs(state.amp) ** 2))


def support_radius(state: State) -> int:
    """Largest |x| (either particle) carrying a nonzero amplitude; -1 for the zero state."""
    if isinstance(state, PairState):
        occupied = np.any(state.amp != 0, axis=(1, 3))
        rows = np.flatnonzero(occupied.any(axis=1))
        cols = np.flatnonzero(occupied.any(axis=0))
        idx = np.concatenate([rows, cols])
    else:
        idx = np.flatnonzero(np.any(state.amp != 0, axis=1))
    if idx.size == 0:
        return -1
    return int(np.max(np.abs(idx - state.lattice.half_width)))

