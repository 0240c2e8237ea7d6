"""Positional observables computed from a state snapshot."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .lattice import Lattice, PairState, SingleState

__all__ = [
    "JointDistribution",
    "ObservableRecord",
    "joint_distribution",
    "marginals",
    "correlation",
    "avg_separation",
    "sigma",
    "position_distribution",
]


@dataclass
class JointDistribution:
    """P(x, y) on the lattice; ``p[ix, iy]`` with indices offset by the half-width."""

    lattice: Lattice
    p: np.ndarray

    def at(self, x: int, y: int) -> float:
        return float(self.p[self.lattice.index(x), self.lattice.index(y)])

    def total(self) -> float:
        return float(self.p.sum())


@dataclass
class ObservableRecord:
    step: int
    sigma: Optional[float] = None
    c12: Optional[float] = None
    delta12: Optional[float] = None
    entropy: Optional[float] = None


def joint_distribution(state: PairState) -> JointDistribution:
    """P(x, y) = sum over both spins of |a_{x s1 y s2}|^2."""
    n = state.lattice.size
    p = np.zeros((n, n))
    window = state.window()
    if window is not None:
        lo, hi = window
        sub = state.amp[lo : hi + 1, :, lo : hi + 1, :]
        p[lo : hi + 1, lo : hi + 1] = np.sum(sub.real**2 + sub.imag**2, axis=(1, 3))
    return JointDistribution(state.lattice, p)


def position_distribution(state: SingleState) -> np.ndarray:
    return state.probabilities()


def marginals(dist: JointDistribution) -> Tuple[np.ndarray, np.ndarray]:
    """Return (P_x, P_y): the distributions of particle 1 and particle 2."""
    return dist.p.sum(axis=1), dist.p.sum(axis=0)


def correlation(dist: JointDistribution) -> float:
    """C12 = <xy> - <x><y>; positive means bunching."""
    x = dist.lattice.positions.astype(float)
    px, py = marginals(dist)
    mean_xy = float(x @ dist.p @ x)
    return mean_xy - float(x @ px) * float(x @ py)


def avg_separation(dist: JointDistribution) -> float:
    x = dist.lattice.positions
    gap = np.abs(x[:, None] - x[None, :])
    return float(np.sum(gap * dist.p))


def sigma(state: SingleState) -> float:
    """Standard deviation of the walker's position."""
    p = state.probabilities()
    x = state.lattice.positions.astype(float)
    mean = float(x @ p)
    var = float((x * x) @ p) - mean * mean
    return math.sqrt(max(var, 0.0))
