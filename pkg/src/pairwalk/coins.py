"""Time-dependent 2x2 coins, the 4x4 pair coin and the contact-interaction rule.

The step clock is zero-based: the k-th step applied to a state uses
``t = k - 1``.  Pair-coin matrices act on the 4-vector of a single cell
ordered with particle 1's spin as the major index, i.e.
``(a_uu, a_ud, a_du, a_dd)`` with the first letter for particle 1, so the
pair coin is literally ``np.kron(coin1, coin2)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ._validation import ValidationError, check_int, check_real

__all__ = [
    "Hadamard",
    "General",
    "Alpha",
    "Phi",
    "CoinSpec",
    "InteractionRule",
    "PairCoinSpec",
    "coin_at",
    "pair_coin_at",
    "parse_coin",
    "format_coin",
    "parse_interaction",
]

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)


@dataclass(frozen=True)
class Hadamard:
    pass


@dataclass(frozen=True)
class General:
    """Fixed coin [[cos, e^{i phi1} sin], [e^{i phi2} sin, -e^{i(phi1+phi2)} cos]].

    The upper-right phase is e^{+i phi1}; with e^{-i phi1} the matrix stops
    being unitary whenever sin(phi1) != 0.
    """

    theta: float
    phi1: float = 0.0
    phi2: float = 0.0


@dataclass(frozen=True)
class Alpha:
    """Real coin whose angle obeys cos(theta) = (tau / (t + tau))**alpha / sqrt(2)."""

    alpha: float
    tau: int = 1

    def __post_init__(self):
        check_real(self.alpha, "alpha", minimum=0.0)
        check_int(self.tau, "tau", minimum=1)


@dataclass(frozen=True)
class Phi:
    """Hadamard preceded by the phase diag(e^{-i Phi}, e^{i Phi}), Phi = 2 pi (q/p) t.

    ``q/p`` is kept exactly as given; no gcd reduction.
    """

    q: int
    p: int

    def __post_init__(self):
        check_int(self.q, "q", minimum=1)
        check_int(self.p, "p", minimum=1)


CoinSpec = Union[Hadamard, General, Alpha, Phi]


class InteractionRule(str, enum.Enum):
    NONE = "none"
    IDENTITY = "identity"
    PI_PHASE = "pi-phase"


@dataclass(frozen=True)
class PairCoinSpec:
    coin1: CoinSpec
    coin2: CoinSpec
    interaction: InteractionRule = InteractionRule.NONE


def alpha_cos(alpha: float, tau: int, t: int) -> float:
    return (tau / (t + tau)) ** alpha / math.sqrt(2.0)


def _phase(q: int, p: int, t: int) -> float:
    # (q * t) mod p is exact in integers, so Phi lands in [0, 2 pi) without drift
    return 2.0 * math.pi * ((q * t) % p) / p


def coin_at(spec: CoinSpec, t: int) -> np.ndarray:
    """Realize ``spec`` as a 2x2 complex unitary at integer time ``t >= 0``."""
    if isinstance(spec, Hadamard):
        return _HADAMARD.copy()
    if isinstance(spec, General):
        c, s = math.cos(spec.theta), math.sin(spec.theta)
        return np.array(
            [
                [c, np.exp(1j * spec.phi1) * s],
                [np.exp(1j * spec.phi2) * s, -np.exp(1j * (spec.phi1 + spec.phi2)) * c],
            ],
            dtype=np.complex128,
        )
    if isinstance(spec, Alpha):
        c = alpha_cos(spec.alpha, spec.tau, t)
        s = math.sqrt(1.0 - c * c)
        return np.array([[c, s], [s, -c]], dtype=np.complex128)
    if isinstance(spec, Phi):
        phase = _phase(spec.q, spec.p, t)
        em, ep = np.exp(-1j * phase), np.exp(1j * phase)
        return np.array([[em, em], [ep, -ep]], dtype=np.complex128) / math.sqrt(2.0)
    raise TypeError(f"not a coin spec: {spec!r}")


def pair_coin_at(spec: PairCoinSpec, t: int, same_site: bool) -> np.ndarray:
    """4x4 coin for one cell; ``same_site`` is x == y before the shift."""
    if same_site and spec.interaction is InteractionRule.IDENTITY:
        return np.eye(4, dtype=np.complex128)
    product = np.kron(coin_at(spec.coin1, t), coin_at(spec.coin2, t))
    if same_site and spec.interaction is InteractionRule.PI_PHASE:
        return -product
    return product


def parse_coin(text: str) -> CoinSpec:
    """Parse ``hadamard``, ``alpha:A[:TAU]``, ``phi:Q/P`` or ``general:THETA[:PHI1:PHI2]``."""
    raw = text
    text = text.strip().lower()
    kind, _, rest = text.partition(":")
    try:
        if kind in ("hadamard", "h"):
            if rest:
                raise ValueError
            return Hadamard()
        if kind == "alpha":
            parts = rest.split(":")
            if len(parts) == 1:
                return Alpha(float(parts[0]))
            if len(parts) == 2:
                return Alpha(float(parts[0]), int(parts[1]))
        elif kind == "phi":
            q, p = rest.split("/")
            return Phi(int(q), int(p))
        elif kind == "general":
            parts = [float(v) for v in rest.split(":")]
            if len(parts) in (1, 3):
                return General(*parts)
    except ValueError:
        pass
    raise ValidationError(
        f"cannot parse coin {raw!r}; expected hadamard, alpha:A[:TAU], phi:Q/P or general:THETA[:PHI1:PHI2]"
    )


def format_coin(spec: CoinSpec) -> str:
    if isinstance(spec, Hadamard):
        return "hadamard"
    if isinstance(spec, Alpha):
        return f"alpha:{spec.alpha!r}" + (f":{spec.tau}" if spec.tau != 1 else "")
    if isinstance(spec, Phi):
        return f"phi:{spec.q}/{spec.p}"
    if isinstance(spec, General):
        return f"general:{spec.theta!r}:{spec.phi1!r}:{spec.phi2!r}"
    raise TypeError(f"not a coin spec: {spec!r}")


_INTERACTION_ALIASES = {
    "none": InteractionRule.NONE,
    "noninteracting": InteractionRule.NONE,
    "identity": InteractionRule.IDENTITY,
    "one": InteractionRule.IDENTITY,
    "pi-phase": InteractionRule.PI_PHASE,
    "piphase": InteractionRule.PI_PHASE,
    "pi": InteractionRule.PI_PHASE,
}


def parse_interaction(value) -> InteractionRule:
    if isinstance(value, InteractionRule):
        return value
    try:
        return _INTERACTION_ALIASES[str(value).strip().lower().replace("_", "-")]
    except KeyError:
        raise ValidationError(
            f"unknown interaction {value!r}; expected none, identity or pi-phase"
        ) from None
