"""Input checks shared by the state builders, estimators and scenario runner."""

from __future__ import annotations

import numbers

import numpy as np

NORM_ATOL = 1e-12


class ValidationError(ValueError):
    """Raised for malformed inputs before any simulation work is done."""


class BoundaryError(RuntimeError):
    """Raised when a step would push amplitude past the lattice edge."""


def check_normalized(amp, what="state", atol=NORM_ATOL):
    total = float(np.sum(np.abs(np.asarray(amp)) ** 2))
    if abs(total - 1.0) > atol:
        raise ValidationError(f"{what} is not normalized: sum |a|^2 = {total!r}")
    return total


def check_int(value, name, minimum=None):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ValidationError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if minimum is not None and value < minimum:
        raise ValidationError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_real(value, name, minimum=None):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ValidationError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not np.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value}")
    if minimum is not None and value < minimum:
        raise ValidationError(f"{name} must be >= {minimum}, got {value}")
    return value
