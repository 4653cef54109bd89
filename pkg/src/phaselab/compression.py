"""Space reduction for one-query circuits.

An isometry V from dimension D into a product space [L] x [S] induces the
measurement operators M_z = V^H (|z><z| tensor Id_S) V, a positive resolution
of the identity on D.  Stacking their square roots gives the compression

    compress(V) = sum_z |z> tensor sqrt(M_z)  :  C^D -> C^(L*D),

an isometry that preserves every oracle-conjugation statistic:
compress(V)^H (O_f tensor Id) compress(V) = V^H (O_f tensor Id) V for every
sign function f on [L].  A matching-inner-products construction extends any
consistent vector correspondence to a full isometry via the pseudo-inverse.
"""

from __future__ import annotations

import numpy as np

from .game import AdversarySpec
from .numerics import RngStream, check_isometry

__all__ = [
    "measurement_operators",
    "compress_isometry",
    "extend_to_isometry",
    "verify_one_query_simulation",
]


def measurement_operators(V, L: int, S: int) -> list[np.ndarray]:
    """M_z = V^H (|z><z| tensor Id_S) V for z in [L]; PSD, summing to Id_D."""
    Vm = check_isometry(V)
    if Vm.shape[0] != L * S:
        raise ValueError(f"isometry output {Vm.shape[0]} != L*S = {L * S}")
    blocks = Vm.reshape(L, S, Vm.shape[1])
    return [b.conj().T @ b for b in blocks]


def _psd_sqrt(m: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    vals, vecs = np.linalg.eigh((m + m.conj().T) / 2)
    if np.min(vals) < -tol:
        raise ArithmeticError(f"matrix not PSD: eigenvalue {np.min(vals):.3e}")
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def compress_isometry(V, L: int, S: int) -> np.ndarray:
    """compress(V): stack the square roots sqrt(M_z) into an (L*D) x D isometry."""
    ops = measurement_operators(V, L, S)
    D = ops[0].shape[0]
    out = np.zeros((L * D, D), dtype=np.complex128)
    for z, m in enumerate(ops):
        out[z * D : (z + 1) * D, :] = _psd_sqrt(m)
    return out


def extend_to_isometry(xs, ys, tol: float = 1e-8) -> np.ndarray:
    """Isometry T with T x_i = y_i, given matching pairwise inner products.

    With X and Y the column stacks, T = (Y^H)^+ X^H maps span(xs) onto
    span(ys) isometrically because X^H X = Y^H Y; the orthogonal complements
    are then paired up by any isometry to complete T.
    """
    X = np.stack([np.asarray(x, dtype=np.complex128).ravel() for x in xs], axis=1)
    Y = np.stack([np.asarray(y, dtype=np.complex128).ravel() for y in ys], axis=1)
    d1, d2 = X.shape[0], Y.shape[0]
    if d1 > d2:
        raise ValueError(f"cannot isometrically embed dimension {d1} into {d2}")
    gx = X.conj().T @ X
    gy = Y.conj().T @ Y
    dev = np.abs(gx - gy)
    if dev.size and float(dev.max()) > tol:
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        raise ValueError(
            f"inner products do not match: worst pair ({i}, {j}) deviates by "
            f"{dev[i, j]:.3e}"
        )
    T = np.linalg.pinv(Y.conj().T, rcond=1e-12) @ X.conj().T
    # Complete T with an isometry between the orthogonal complements of the spans.
    qx = _span_basis(X)
    qy = _span_basis(Y)
    qx_perp = _complement_basis(qx, d1)
    qy_perp = _complement_basis(qy, d2)
    k = qx_perp.shape[1]
    if k > 0:
        T = T + qy_perp[:, :k] @ qx_perp.conj().T
    return T


def _span_basis(A: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], 0), dtype=np.complex128)
    u, s, _ = np.linalg.svd(A, full_matrices=False)
    rank = int(np.sum(s > tol * max(1.0, float(s.max(initial=0.0)))))
    return u[:, :rank]


def _complement_basis(q: np.ndarray, dim: int) -> np.ndarray:
    u, s, _ = np.linalg.svd(np.eye(dim) - q @ q.conj().T)
    rank = int(np.sum(s > 1e-9))
    return u[:, :rank]


def verify_one_query_simulation(
    adv: AdversarySpec, L: int, trials: int, rng: RngStream
) -> float:
    """Max inner-product deviation between original and compressed executions.

    For random oracle pairs (f, g) on [L] and random input states (x, y), the
    vectors Phi_{f,x} = (O_f tensor Id) V |x> and their compressed analogues
    must have identical pairwise inner products; the returned maximum
    deviation certifies that every one-query measurement statistic survives
    compression.
    """
    Vm = adv.V
    M, D = Vm.shape
    if M % L != 0:
        raise ValueError(f"total dimension {M} does not factor through L = {L}")
    S = M // L
    W = compress_isometry(Vm, L, S)
    worst = 0.0
    for t in range(trials):
        g = rng.child(t).generator()
        f1 = np.where(g.random(L) < 0.5, 1.0, -1.0)
        f2 = np.where(g.random(L) < 0.5, 1.0, -1.0)
        x = g.standard_normal(D) + 1j * g.standard_normal(D)
        y = g.standard_normal(D) + 1j * g.standard_normal(D)
        x /= np.linalg.norm(x)
        y /= np.linalg.norm(y)
        phi_x = np.repeat(f1, S) * (Vm @ x)
        phi_y = np.repeat(f2, S) * (Vm @ y)
        chat_x = np.repeat(f1, D) * (W @ x)
        chat_y = np.repeat(f2, D) * (W @ y)
        dev = abs(np.vdot(phi_x, phi_y) - np.vdot(chat_x, chat_y))
        worst = max(worst, float(dev))
    return worst
