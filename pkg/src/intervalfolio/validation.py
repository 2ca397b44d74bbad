"""Input validation helpers shared by the functional API and the
sklearn-style estimators."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import LengthMismatch


def check_returns_matrix(X) -> np.ndarray:
    """Coerce X to a finite 2-D float array of shape (T, n), T, n >= 1."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"returns must be a 2-D matrix, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"returns matrix must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        t, j = np.argwhere(~np.isfinite(arr))[0]
        raise ValueError(f"non-finite return at period {t}, asset {j}")
    return arr


def check_vector(name: str, values, length: int, dtype=float) -> np.ndarray:
    """Coerce to a finite 1-D array of exactly ``length`` entries."""
    arr = np.asarray(values, dtype=dtype)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got ndim={arr.ndim}")
    if arr.shape[0] != length:
        raise LengthMismatch(f"{name} has length {arr.shape[0]}, expected {length}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def broadcast_per_asset(name: str, value, length: int) -> np.ndarray:
    """Accept a scalar or a per-asset sequence and return a vector of
    ``length`` floats."""
    if np.isscalar(value):
        return np.full(length, float(value))
    return check_vector(name, value, length)


def check_finite_scalar(name: str, value) -> float:
    x = float(value)
    if not np.isfinite(x):
        raise ValueError(f"{name} must be finite, got {value}")
    return x


def as_float_list(values: Sequence[float]) -> list[float]:
    return [float(v) for v in values]
