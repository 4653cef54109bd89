"""Operator-norm upper bounds on the distinguishing advantage.

Replacing the oracle-rotated weight vector O_f |wt_V> by an arbitrary unit
vector turns the maximum over oracle functions into an operator norm of a
difference of averaged conjugated rescaling matrices -- the spectral
relaxation.  Three variants live here: the plain relaxation (all-h term in
closed form), the truncated relaxation (diagonals clipped at B, all-h term by
Monte Carlo), and the decoupled relaxation over two independent families.
A subset-norm explorer for product-space measurements rounds out the module.
"""

from __future__ import annotations

import numpy as np

from .decomposition import ZERO_WEIGHT_TOL, rescaling_diagonals, truncate_values
from .game import AdversarySpec, _sign_chunk, check_family, check_signs
from .numerics import CapacityError, RngStream, operator_norm

__all__ = [
    "spectral_relaxation",
    "truncated_spectral_relaxation",
    "decoupled_spectral_relaxation",
    "decoupled_kernel",
    "decoupled_advantage_given_f",
    "max_decoupled_bruteforce",
    "subset_norm_conjecture",
]

_CHUNK = 1 << 16


def _weights_and_mask(adv: AdversarySpec) -> tuple[np.ndarray, np.ndarray]:
    w = np.sum(np.abs(adv.V) ** 2, axis=1) / adv.N
    mask = w <= ZERO_WEIGHT_TOL
    return w, mask


def _haar_conjugated_term(adv: AdversarySpec) -> np.ndarray:
    """Closed form of E_h[D_h^H Pi D_h].

    Entry (i, j) is Pi_ij <v_j|v_i> / (N sqrt(wt_i wt_j)), which follows from
    averaging conj(<v_i|psi_h>) <v_j|psi_h> against the maximally mixed state.
    Masked (zero-weight) rows contribute zero.
    """
    w, mask = _weights_and_mask(adv)
    gram = (adv.V @ adv.V.conj().T).conj()  # (i, j) entry = <v_j|v_i>
    scale = np.sqrt(np.where(mask, 1.0, w))
    T = adv.Pi * gram / (adv.N * np.outer(scale, scale))
    T[mask, :] = 0.0
    T[:, mask] = 0.0
    return T


def spectral_relaxation(adv: AdversarySpec, R) -> float:
    """|| E_k D_k^H Pi D_k  -  E_h D_h^H Pi D_h ||_op, all-h term exact."""
    Rv = check_family(R)
    D, _ = rescaling_diagonals(adv.V, Rv)
    family_term = adv.Pi * (D.conj().T @ D) / Rv.shape[0]
    return operator_norm(family_term - _haar_conjugated_term(adv))


def truncated_spectral_relaxation(
    adv: AdversarySpec,
    R,
    B: float,
    samples: int = 10_000,
    rng: RngStream | None = None,
    batches: int = 10,
) -> tuple[float, float]:
    """Spectral relaxation with diagonals clipped at magnitude B.

    Truncation destroys the closed form of the all-h term, so it is estimated
    over `samples` random sign functions.  Returns (value, standard error),
    the latter from a jackknife over `batches` sample batches.
    """
    if rng is None:
        rng = RngStream(0)
    Rv = check_family(R)
    D, _ = rescaling_diagonals(adv.V, Rv)
    DB = truncate_values(D, B)
    family_term = adv.Pi * (DB.conj().T @ DB) / Rv.shape[0]

    per_batch = max(1, samples // batches)
    sums = []
    counts = []
    for b in range(batches):
        g = rng.child(b).generator()
        H = np.where(g.random((per_batch, adv.N)) < 0.5, 1.0, -1.0)
        Dh, _ = rescaling_diagonals(adv.V, H)
        DhB = truncate_values(Dh, B)
        sums.append(DhB.conj().T @ DhB)
        counts.append(per_batch)
    total = sum(sums)
    n = sum(counts)
    value = operator_norm(family_term - adv.Pi * total / n)
    # Jackknife over batches for the Monte Carlo error on the norm.
    loo = []
    for b in range(batches):
        rest = (total - sums[b]) / (n - counts[b])
        loo.append(operator_norm(family_term - adv.Pi * rest))
    loo = np.asarray(loo)
    stderr = float(np.sqrt((batches - 1) / batches * np.sum((loo - loo.mean()) ** 2)))
    return value, stderr


def decoupled_spectral_relaxation(adv: AdversarySpec, R, Rp) -> float:
    """|| E_k D_k^H Pi D'_k ||_op over two families of the same shape."""
    Rv = check_family(R)
    Rpv = check_family(Rp)
    if Rv.shape != Rpv.shape:
        raise ValueError(f"family shapes differ: {Rv.shape} vs {Rpv.shape}")
    D, _ = rescaling_diagonals(adv.V, Rv)
    Dp, _ = rescaling_diagonals(adv.V, Rpv)
    return operator_norm(adv.Pi * (D.conj().T @ Dp) / Rv.shape[0])


def decoupled_kernel(adv: AdversarySpec, R, Rp) -> np.ndarray:
    """M x M kernel C with  f^T C f = E_k <psi_k| V^H O_f Pi O_f V |psi'_k>."""
    Rv = check_family(R)
    Rpv = check_family(Rp)
    if Rv.shape != Rpv.shape:
        raise ValueError(f"family shapes differ: {Rv.shape} vs {Rpv.shape}")
    sqrtN = np.sqrt(Rv.shape[1])
    U = (adv.V @ (Rv.T / sqrtN)).T
    Up = (adv.V @ (Rpv.T / sqrtN)).T
    return adv.Pi * (U.conj().T @ Up) / Rv.shape[0]


def decoupled_advantage_given_f(adv: AdversarySpec, R, Rp, f) -> float:
    """|E_k <psi_k| V^H O_f Pi O_f V |psi'_k>| at a fixed oracle function."""
    fv = check_signs(f)
    C = decoupled_kernel(adv, R, Rp)
    return float(np.abs(fv @ (C @ fv)))


def max_decoupled_bruteforce(adv: AdversarySpec, R, Rp, cutoff: int = 24):
    """Exact max over oracle functions of the decoupled advantage.

    The kernel is generally non-Hermitian, so the quadratic form is complex;
    the maximized quantity is its modulus.  Sign symmetry halves the search.
    """
    C = decoupled_kernel(adv, R, Rp)
    m = C.shape[0]
    if m > cutoff:
        raise CapacityError(
            f"brute force over 2^{m} oracle functions exceeds the cutoff {cutoff}"
        )
    if m == 1:
        f = np.ones(1)
        return float(np.abs(C[0, 0])), f
    total = 1 << (m - 1)
    best_val, best_idx = -1.0, 0
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        F = _sign_chunk(start, stop, m)
        vals = np.abs(np.einsum("ci,ci->c", (F + 0j) @ C, F))
        j = int(np.argmax(vals))
        if vals[j] > best_val:
            best_val, best_idx = float(vals[j]), start + j
    return best_val, _sign_chunk(best_idx, best_idx + 1, m)[0]


def _subset_value_terms(projectors, states) -> list[np.ndarray]:
    """Per-projector deviation terms on the co-factor space.

    For states |psi_k> in dimension N and projectors on dimension N * P, each
    term is E_k (<psi_k| x Id) Pi_i (|psi_k> x Id) minus its Haar average
    tr_over_first_factor(Pi_i)/N; the subset value is the operator norm of the
    sum over the chosen subset.
    """
    states = [np.asarray(s, dtype=np.complex128).ravel() for s in states]
    N = states[0].size
    if any(s.size != N for s in states):
        raise ValueError("states must share one dimension")
    for s in states:
        if abs(np.linalg.norm(s) - 1.0) > 1e-8:
            raise ValueError("states must be unit vectors")
    dim = np.asarray(projectors[0]).shape[0]
    if dim % N != 0:
        raise ValueError(f"projector dimension {dim} not divisible by N = {N}")
    P = dim // N
    total = np.zeros((dim, dim), dtype=np.complex128)
    terms = []
    for Pi in projectors:
        Pm = np.asarray(Pi, dtype=np.complex128)
        if Pm.shape != (dim, dim):
            raise ValueError("projectors must share one dimension")
        total += Pm
        T = Pm.reshape(N, P, N, P)
        pinched = np.zeros((P, P), dtype=np.complex128)
        for s in states:
            pinched += np.einsum("k,kplq,l->pq", np.conj(s), T, s)
        pinched /= len(states)
        haar = np.einsum("kpkq->pq", T) / N
        terms.append(pinched - haar)
    if float(np.max(np.abs(total - np.eye(dim)))) > 1e-8:
        raise ValueError("projectors must sum to the identity")
    return terms


def subset_norm_conjecture(
    projectors,
    states,
    mode: str = "brute",
    restarts: int = 32,
    rng: RngStream | None = None,
    cutoff: int = 20,
):
    """Maximize || sum_{i in S} deviation-term_i ||_op over subsets S.

    'brute' enumerates all 2^L subsets (L <= cutoff); 'greedy' grows S by
    single-index additions, accepting the first improving move, with random
    restart orders.  Returns (best value, witness subset as a sorted tuple).
    """
    terms = _subset_value_terms(projectors, states)
    L = len(terms)
    if mode == "brute":
        if L > cutoff:
            raise CapacityError(f"2^{L} subsets exceed the brute-force cutoff {cutoff}")
        best_val, best_set = 0.0, ()
        for bits in range(1, 1 << L):
            members = [i for i in range(L) if (bits >> i) & 1]
            val = operator_norm(sum(terms[i] for i in members))
            if val > best_val + 1e-15:
                best_val, best_set = val, tuple(members)
        return best_val, best_set
    if mode != "greedy":
        raise ValueError(f"unknown mode {mode!r}")
    if rng is None:
        rng = RngStream(0)
    best_val, best_set = 0.0, ()
    for r in range(restarts):
        order = rng.child(r).generator().permutation(L)
        chosen: set[int] = set()
        acc = np.zeros_like(terms[0])
        val = 0.0
        improved = True
        while improved:
            improved = False
            for i in order:
                if int(i) in chosen:
                    continue
                cand = operator_norm(acc + terms[int(i)])
                if cand > val + 1e-12:
                    chosen.add(int(i))
                    acc = acc + terms[int(i)]
                    val = cand
                    improved = True
                    break
        if val > best_val:
            best_val, best_set = val, tuple(sorted(chosen))
    return best_val, best_set
