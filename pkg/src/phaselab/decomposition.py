"""Weight-vector decomposition of an isometry applied to phase states.

For an isometry V with rows <v_i|, the weights wt_i = <v_i|v_i>/N form a
probability distribution, and V |psi_h> factors as D_{V,h} |wt_V>, where
|wt_V> collects the square-rooted weights and D_{V,h} is the diagonal
rescaling matrix with entries <v_i|psi_h> / sqrt(wt_i).  The width of a
family measures how far its K rescaling diagonals deviate, on average, from
the typical unit magnitude; truncation clips diagonal entries to a bound B.

Zero-weight rows of V (weight below 1e-14) contribute nothing to any state:
their diagonal entries are set to 0, and they are excluded from the width
maximum and the boundedness check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .game import check_family, check_signs
from .numerics import check_isometry

__all__ = [
    "ZERO_WEIGHT_TOL",
    "RescalingMatrix",
    "isometry_weights",
    "weight_vector",
    "rescaling_matrix",
    "rescaling_diagonals",
    "truncate_rescaling",
    "truncate_values",
    "width",
    "is_b_bounded",
]

ZERO_WEIGHT_TOL = 1e-14


@dataclass(frozen=True)
class RescalingMatrix:
    """Diagonal rescaling matrix, stored as its diagonal plus a zero-weight mask."""

    diagonal: np.ndarray  # complex, length M
    mask: np.ndarray  # bool, length M; True where the weight is (numerically) zero

    @property
    def M(self) -> int:
        return self.diagonal.size

    def dense(self) -> np.ndarray:
        return np.diag(self.diagonal)


def isometry_weights(V) -> np.ndarray:
    """Row weights wt_i = <v_i|v_i>/N of an isometry; they sum to 1."""
    Vm = check_isometry(V)
    w = np.sum(np.abs(Vm) ** 2, axis=1) / Vm.shape[1]
    total = float(w.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"weights sum to {total}, expected 1")
    return w


def weight_vector(weights) -> np.ndarray:
    """Unit vector with amplitudes sqrt(wt_i)."""
    w = np.asarray(weights, dtype=np.float64)
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    return np.sqrt(w).astype(np.complex128)


def rescaling_diagonals(V, R) -> tuple[np.ndarray, np.ndarray]:
    """Rescaling diagonals for every row of a family at once.

    Returns (D, mask) where D is K x M with D[k, i] = <v_i|psi_{R_k}>/sqrt(wt_i)
    (0 at masked indices) and mask marks zero-weight rows of V.
    """
    Vm = check_isometry(V)
    Rv = check_family(R)
    if Rv.shape[1] != Vm.shape[1]:
        raise ValueError(f"family width {Rv.shape[1]} != N = {Vm.shape[1]}")
    w = isometry_weights(Vm)
    mask = w <= ZERO_WEIGHT_TOL
    amps = (Vm @ (Rv.T / np.sqrt(Rv.shape[1]))).T  # K x M, <v_i|psi_k>
    scale = np.sqrt(np.where(mask, 1.0, w))
    D = amps / scale
    D[:, mask] = 0.0
    return D, mask


def rescaling_matrix(V, h) -> RescalingMatrix:
    """Diagonal D_{V,h} with V |psi_h> = D_{V,h} |wt_V>."""
    hv = check_signs(h)
    D, mask = rescaling_diagonals(V, hv[None, :])
    return RescalingMatrix(diagonal=D[0], mask=mask)


def truncate_values(values: np.ndarray, B: float) -> np.ndarray:
    """Clip complex values to magnitude B, preserving phase."""
    if B <= 0:
        raise ValueError("truncation bound B must be positive")
    v = np.asarray(values, dtype=np.complex128)
    mag = np.abs(v)
    with np.errstate(invalid="ignore", divide="ignore"):
        clipped = np.where(mag > B, v * (B / np.where(mag > 0, mag, 1.0)), v)
    return clipped


def truncate_rescaling(D: RescalingMatrix, B: float) -> RescalingMatrix:
    return RescalingMatrix(diagonal=truncate_values(D.diagonal, B), mask=D.mask)


def width(V, R) -> float:
    """max over unmasked i of (1/K) sum_k |<v_i|psi_{R_k}>|^2 / wt_i."""
    Vm = check_isometry(V)
    D, mask = rescaling_diagonals(Vm, R)
    col_means = np.mean(np.abs(D) ** 2, axis=0)
    active = ~mask
    if not np.any(active):
        raise ValueError("isometry has no rows with nonzero weight")
    return float(np.max(col_means[active]))


def is_b_bounded(V, R, B: float) -> bool:
    """True iff every rescaling diagonal entry of every row has magnitude <= B."""
    if B <= 0:
        raise ValueError("bound B must be positive")
    D, mask = rescaling_diagonals(V, R)
    active = ~mask
    return bool(np.all(np.abs(D[:, active]) <= B + 1e-12))
