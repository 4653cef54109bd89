"""The phase-state distinguishing game.

A function family is a K x N table of +-1 signs; row k defines the binary
phase state |psi_k> with amplitudes R[k, x] / sqrt(N).  A one-query adversary
is a triple (M, V, Pi): an isometry V from dimension N into dimension M, one
query to a diagonal +-1 phase oracle O_f on the larger space, and a final
projective measurement Pi.  Its acceptance probability on a phase state is

    p(h | f) = <psi_h| V^H O_f Pi O_f V |psi_h>,

and its distinguishing advantage on a family R is the gap between the average
acceptance over the family's states and the acceptance averaged over all
phase states (the latter has the closed form tr(V^H O_f Pi O_f V) / N, since
a uniformly random phase state averages to the maximally mixed state).

Everything that maximizes over oracle functions goes through a single M x M
Hermitian kernel B with  gap(f) = f^T B f, so each candidate f costs one
quadratic form and single-sign flips cost O(M).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import (
    CapacityError,
    RngStream,
    check_isometry,
    check_projector,
    parallel_blocks,
)

__all__ = [
    "AdversarySpec",
    "check_family",
    "check_signs",
    "random_family",
    "random_signs",
    "phase_state",
    "acceptance_probability",
    "haar_average_acceptance",
    "advantage_given_f",
    "advantage_kernel",
    "kernel_quadratic_form",
    "max_advantage_bruteforce",
    "max_advantage_localsearch",
    "simulate_game",
    "BRUTEFORCE_CUTOFF",
]

BRUTEFORCE_CUTOFF = 24
_CHUNK = 1 << 16


def check_signs(values) -> np.ndarray:
    """Validate and return a +-1 vector (a Boolean function in sign form)."""
    a = np.asarray(values)
    if a.ndim != 1 or a.size < 1:
        raise ValueError(f"expected a 1-d sign vector, got shape {a.shape}")
    f = a.astype(np.float64)
    if not np.all(np.abs(f) == 1.0):
        raise ValueError("sign vector entries must all be +1 or -1")
    return f


def check_family(values) -> np.ndarray:
    """Validate and return a K x N +-1 array (a function family)."""
    a = np.asarray(values)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"expected a K x N sign table, got shape {a.shape}")
    r = a.astype(np.float64)
    if not np.all(np.abs(r) == 1.0):
        raise ValueError("family entries must all be +1 or -1")
    return r


def random_signs(length: int, rng: RngStream) -> np.ndarray:
    g = rng.generator()
    return np.where(g.random(length) < 0.5, 1.0, -1.0)


def random_family(K: int, N: int, rng: RngStream) -> np.ndarray:
    g = rng.generator()
    return np.where(g.random((K, N)) < 0.5, 1.0, -1.0)


@dataclass(frozen=True)
class AdversarySpec:
    """One-query adversary in normal form: isometry V (M x N), projector Pi (M x M)."""

    V: np.ndarray
    Pi: np.ndarray

    def __post_init__(self):
        V = check_isometry(self.V)
        Pi = check_projector(self.Pi)
        if Pi.shape[0] != V.shape[0]:
            raise ValueError(
                f"projector dimension {Pi.shape[0]} != isometry output {V.shape[0]}"
            )
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "Pi", Pi)

    @property
    def N(self) -> int:
        return self.V.shape[1]

    @property
    def M(self) -> int:
        return self.V.shape[0]


def phase_state(h) -> np.ndarray:
    """Binary phase state: amplitude h(x)/sqrt(L) at position x."""
    f = check_signs(h)
    return (f / np.sqrt(f.size)).astype(np.complex128)


def acceptance_probability(adv: AdversarySpec, h, f) -> float:
    """p(h | f) = <psi_h| V^H O_f Pi O_f V |psi_h>, clamped to [0, 1]."""
    hv = check_signs(h)
    fv = check_signs(f)
    if hv.size != adv.N:
        raise ValueError(f"challenge length {hv.size} != N = {adv.N}")
    if fv.size != adv.M:
        raise ValueError(f"oracle length {fv.size} != M = {adv.M}")
    psi = phase_state(hv)
    w = fv * (adv.V @ psi)
    p = float(np.real(w.conj() @ (adv.Pi @ w)))
    if p < -1e-9 or p > 1 + 1e-9:
        raise ValueError(f"acceptance probability {p} outside [0, 1] tolerance")
    return min(1.0, max(0.0, p))


def haar_average_acceptance(adv: AdversarySpec, f) -> float:
    """Average acceptance over all phase states: tr(V^H O_f Pi O_f V) / N.

    A uniformly random phase state averages to the maximally mixed state, so
    the average is exact -- no Monte Carlo over the 2^N challenge functions.
    """
    fv = check_signs(f)
    if fv.size != adv.M:
        raise ValueError(f"oracle length {fv.size} != M = {adv.M}")
    A = fv[:, None] * adv.V
    val = float(np.real(np.sum(A.conj() * (adv.Pi @ A)))) / adv.N
    return min(1.0, max(0.0, val))


def advantage_given_f(adv: AdversarySpec, R, f) -> float:
    """|E_k p(R_k | f) - E_h p(h | f)| for a fixed oracle function f."""
    Rv = check_family(R)
    if Rv.shape[1] != adv.N:
        raise ValueError(f"family width {Rv.shape[1]} != N = {adv.N}")
    fam = float(np.mean([acceptance_probability(adv, row, f) for row in Rv]))
    return abs(fam - haar_average_acceptance(adv, f))


def advantage_kernel(adv: AdversarySpec, R) -> np.ndarray:
    """Hermitian M x M kernel B with  f^T B f = E_k p(R_k|f) - E_h p(h|f).

    Writing u_k = V |psi_k>, the acceptance probability expands entrywise as
    p = sum_ij f_i f_j Pi_ij conj(u_i) u_j, and the all-h average replaces the
    outer product by conj(V V^H)/N.  The signed gap is the quadratic form of
    the difference; its absolute value is the advantage at f.
    """
    Rv = check_family(R)
    if Rv.shape[1] != adv.N:
        raise ValueError(f"family width {Rv.shape[1]} != N = {adv.N}")
    U = (adv.V @ (Rv.T / np.sqrt(Rv.shape[1]))).T  # K x M, row k = V|psi_k>
    outer = (U.conj().T @ U) / Rv.shape[0]  # E_k conj(u_i) u_j at (i, j)
    gram = adv.V @ adv.V.conj().T
    return adv.Pi * (outer - gram.conj() / adv.N)


def kernel_quadratic_form(B: np.ndarray, f) -> float:
    """Signed gap f^T B f (real for Hermitian B and +-1 vectors f)."""
    fv = check_signs(f)
    return float(np.real(fv @ (B @ fv)))


def _sign_chunk(start: int, stop: int, m: int) -> np.ndarray:
    """Rows start..stop of the fixed enumeration of sign vectors with f_1 = +1.

    Index bits map to coordinates 2..M with coordinate 2 most significant and
    bit 0 meaning +1, so the enumeration is lexicographic with +1 first and
    the first maximizer found is the lexicographically first one.
    """
    idx = np.arange(start, stop, dtype=np.uint64)[:, None]
    shifts = np.arange(m - 2, -1, -1, dtype=np.uint64)[None, :]
    bits = (idx >> shifts) & 1
    F = np.empty((stop - start, m))
    F[:, 0] = 1.0
    F[:, 1:] = 1.0 - 2.0 * bits
    return F


def max_advantage_bruteforce(adv_or_kernel, R=None, cutoff: int = BRUTEFORCE_CUTOFF):
    """Exact maximum advantage over all 2^M oracle functions.

    The sign symmetry gap(f) = gap(-f) halves the enumeration by pinning
    f_1 = +1.  Returns (advantage, maximizing f); ties break to the
    lexicographically first maximizer.  Accepts either an adversary plus a
    family or a precomputed kernel.
    """
    if R is not None:
        B = advantage_kernel(adv_or_kernel, R)
    else:
        B = np.asarray(adv_or_kernel, dtype=np.complex128)
    m = B.shape[0]
    if m > cutoff:
        raise CapacityError(
            f"brute force over 2^{m} oracle functions exceeds the cutoff "
            f"M = {cutoff}; use max_advantage_localsearch instead"
        )
    if m == 1:
        f = np.ones(1)
        return abs(kernel_quadratic_form(B, f)), f
    total = 1 << (m - 1)
    best_val = -1.0
    best_idx = 0
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        F = _sign_chunk(start, stop, m)
        vals = np.abs(np.real(np.einsum("ci,ci->c", F @ B, F)))
        j = int(np.argmax(vals))
        if vals[j] > best_val:
            best_val = float(vals[j])
            best_idx = start + j
    f = _sign_chunk(best_idx, best_idx + 1, m)[0]
    return best_val, f


def max_advantage_localsearch(
    adv_or_kernel, R=None, restarts: int = 20, rng: RngStream | None = None
):
    """Heuristic lower bound on the maximum advantage via sign-flip hill climbing.

    Each restart starts from a random sign vector and repeatedly takes the
    best single-coordinate flip that increases |f^T B f|, using O(M)
    incremental updates of the gradient g = B f.  The result is locally
    maximal, hence always <= the true maximum.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if rng is None:
        rng = RngStream(0)
    if R is not None:
        B = advantage_kernel(adv_or_kernel, R)
    else:
        B = np.asarray(adv_or_kernel, dtype=np.complex128)
    m = B.shape[0]
    diag = np.real(np.diagonal(B))
    best_val, best_f = -1.0, np.ones(m)
    for r in range(restarts):
        g = rng.child(r).generator()
        f = np.where(g.random(m) < 0.5, 1.0, -1.0)
        grad = B @ f
        q = float(np.real(f @ grad))
        improved = True
        while improved:
            improved = False
            # Flipping coordinate i changes q by -2 f_i s_i.
            s = 2.0 * np.real(grad) - 2.0 * diag * f
            cand = np.abs(q - 2.0 * f * s)
            i = int(np.argmax(cand))
            if cand[i] > abs(q) + 1e-12:
                grad = grad - 2.0 * f[i] * B[:, i]
                q = float(q - 2.0 * f[i] * s[i])
                f[i] = -f[i]
                improved = True
        if abs(q) > best_val:
            best_val, best_f = abs(q), f.copy()
    return best_val, best_f


def simulate_game(
    adv: AdversarySpec, R, f, trials: int, rng: RngStream, block: int = 8192
) -> float:
    """Monte Carlo play of the distinguishing game; returns the win frequency.

    Each trial: the challenger flips b; on b = 0 it sends |psi_{R_k}> for a
    random row k, on b = 1 a fresh random phase state (the adversary's view is
    identical to the random-basis-state challenger).  The adversary measures
    Pi on O_f V |psi> and answers 0 on acceptance.  Phase states have real
    amplitudes, so every acceptance probability is the real quadratic form
    h^T Re(Q) h / N with Q = (O_f V)^H Pi (O_f V), evaluated blockwise.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    Rv = check_family(R)
    fv = check_signs(f)
    if Rv.shape[1] != adv.N or fv.size != adv.M:
        raise ValueError("dimension mismatch between adversary, family, and oracle")
    N = adv.N
    A = fv[:, None] * adv.V
    # The imaginary part cancels on real states; copy so BLAS sees a
    # contiguous real matrix rather than a strided view into complex storage.
    Q = np.ascontiguousarray(np.real(A.conj().T @ (adv.Pi @ A)))
    p_rows = np.sum((Rv @ Q) * Rv, axis=1) / N

    n_blocks = (trials + block - 1) // block

    def run_block(b: int) -> int:
        size = min(block, trials - b * block)
        g = rng.child(b).generator()
        bits = g.integers(0, 2, size=size)
        ks = g.integers(0, Rv.shape[0], size=size)
        H = np.where(g.random((size, N)) < 0.5, 1.0, -1.0)
        u = g.random(size)
        p_haar = np.sum((H @ Q) * H, axis=1) / N
        p = np.where(bits == 0, p_rows[ks], p_haar)
        outputs = np.where(u < p, 0, 1)
        return int(np.sum(outputs == bits))

    wins = sum(parallel_blocks(run_block, n_blocks))
    return wins / trials
