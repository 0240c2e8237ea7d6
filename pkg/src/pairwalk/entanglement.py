"""Inter-particle von Neumann entropy from the Schmidt spectrum.

The pair amplitudes, reshaped so rows carry particle 1's (x, s1) and
columns particle 2's (y, s2), form a matrix A with rho_1 = A A^dagger.
Its squared singular values are the eigenvalues of rho_1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._validation import ValidationError
from .lattice import PairState

__all__ = [
    "SchmidtSpectrum",
    "SpectrumError",
    "bipartite_matrix",
    "schmidt_spectrum",
    "entropy",
    "entanglement_entropy",
    "LAMBDA_CLAMP",
    "ENTROPY_CUTOFF",
]

# eigenvalues above -LAMBDA_CLAMP are rounding noise and are clamped to zero;
# rounding can also push a lone weight a few ulps past 1, which is clipped
LAMBDA_CLAMP = 1e-12
# terms with lambda <= ENTROPY_CUTOFF contribute 0 (0 log 0 := 0)
ENTROPY_CUTOFF = 1e-12
TRACE_ATOL = 1e-9


class SpectrumError(RuntimeError):
    pass


@dataclass(frozen=True)
class SchmidtSpectrum:
    lambdas: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float)
        if lam.ndim != 1:
            raise ValidationError("Schmidt spectrum must be one-dimensional")
        if np.any(lam < -LAMBDA_CLAMP):
            raise ValidationError(f"negative Schmidt weight {lam.min()!r}")
        lam = np.clip(lam, 0.0, 1.0)
        object.__setattr__(self, "lambdas", np.sort(lam)[::-1])

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.lambdas > ENTROPY_CUTOFF))


def bipartite_matrix(state: PairState) -> np.ndarray:
    n = state.lattice.size
    return state.amp.reshape(2 * n, 2 * n)


def _occupied_block(a: np.ndarray) -> np.ndarray:
    nz = a != 0
    rows = np.flatnonzero(nz.any(axis=1))
    cols = np.flatnonzero(nz.any(axis=0))
    return a[np.ix_(rows, cols)]


def schmidt_spectrum(a: np.ndarray) -> SchmidtSpectrum:
    """Squared singular values of ``a``, restricted to its nonzero rows and columns."""
    a = np.asarray(a, dtype=np.complex128)
    trace = float(np.sum(np.abs(a) ** 2))
    if abs(trace - 1.0) > TRACE_ATOL:
        raise ValidationError(f"trace(A A^dagger) = {trace!r}, expected 1")
    block = _occupied_block(a)
    try:
        sv = scipy.linalg.svdvals(block, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SpectrumError(
            f"singular value solver failed on a {block.shape[0]}x{block.shape[1]} block "
            f"(trace {trace!r}): {exc}"
        ) from exc
    return SchmidtSpectrum(sv**2)


def entropy(spectrum: SchmidtSpectrum) -> float:
    """-sum lambda log2 lambda, in bits."""
    lam = spectrum.lambdas[spectrum.lambdas > ENTROPY_CUTOFF]
    return max(0.0, float(-np.sum(lam * np.log2(lam))))


def entanglement_entropy(state: PairState) -> float:
    """Entropy of either particle's reduced state, in bits."""
    window = state.window()
    if window is None:
        raise ValidationError("entropy of the zero state is undefined")
    lo, hi = window
    sub = state.amp[lo : hi + 1, :, lo : hi + 1, :]
    m = 2 * (hi - lo + 1)
    # rows/columns outside the window are all zero and carry no singular values
    return entropy(schmidt_spectrum(sub.reshape(m, m)))
