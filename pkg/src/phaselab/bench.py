"""Monte Carlo validators for the concentration inequalities the analysis leans on.

Each bench samples a random object, measures a norm or deviation, and compares
empirical tail frequencies against the corresponding closed-form bound, with a
3-sigma binomial allowance for finite samples.  The reference bounds are
theorems, so a FAIL flags an implementation bug rather than new mathematics.
Existential constants in the width and advantage tails are replaced by named,
configurable test constants (conservative defaults documented inline).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decomposition import rescaling_diagonals, truncate_values, width
from .game import AdversarySpec, advantage_given_f, check_signs, random_family
from .numerics import RngStream, check_isometry, operator_norm, parallel_blocks

__all__ = [
    "TailReport",
    "rademacher_series_bench",
    "matrix_hoeffding_bench",
    "truncated_conjugation_sampler",
    "complex_hoeffding_bench",
    "width_tail_bench",
    "advantage_tail_bench",
    "default_suite",
]


@dataclass(frozen=True)
class TailReport:
    """Empirical tail frequencies against a reference bound at fixed thresholds."""

    bound_name: str
    thresholds: tuple[float, ...]
    empirical: tuple[float, ...]
    bounds: tuple[float, ...]
    samples: int
    passed: bool
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (len(self.thresholds) == len(self.empirical) == len(self.bounds)):
            raise ValueError("threshold/frequency/bound lists must align")
        if any(not (0.0 <= p <= 1.0) for p in self.empirical):
            raise ValueError("frequencies must lie in [0, 1]")


def _binomial_slack(p_bound: float, samples: int) -> float:
    p = min(max(p_bound, 0.0), 1.0)
    return 3.0 * np.sqrt(p * (1.0 - p) / samples) if samples > 0 else 0.0


def _tail_report(name, values, thresholds, bounds, samples, extras=None) -> TailReport:
    freqs = [float(np.mean(values >= t)) for t in thresholds]
    ok = all(
        f <= b + _binomial_slack(min(b, 1.0), samples) + 1e-12
        for f, b in zip(freqs, bounds)
    )
    if extras:
        ok = ok and all(extras.get(k, True) is not False for k in ("mean_ok",))
    return TailReport(
        bound_name=name,
        thresholds=tuple(float(t) for t in thresholds),
        empirical=tuple(freqs),
        bounds=tuple(float(b) for b in bounds),
        samples=int(samples),
        passed=bool(ok),
        extras=dict(extras or {}),
    )


def rademacher_series_bench(
    coefficients, samples: int, rng: RngStream, thresholds=None
) -> TailReport:
    """Random sign combinations Z = sum_k x_k C_k of fixed matrices.

    The matrix variance v(Z) = max(||sum C_k C_k^H||, ||sum C_k^H C_k||)
    controls both the expected operator norm, E||Z|| <= sqrt(2 ln(d1+d2) v),
    and the tail Pr[||Z|| >= t] <= (d1+d2) exp(-t^2 / 2v).
    """
    if samples < 100:
        raise ValueError("need at least 100 samples")
    C = [np.asarray(c, dtype=np.complex128) for c in coefficients]
    shape = C[0].shape
    if any(c.shape != shape for c in C):
        raise ValueError("coefficient matrices must share one shape")
    d1, d2 = shape
    v = max(
        operator_norm(sum(c @ c.conj().T for c in C)),
        operator_norm(sum(c.conj().T @ c for c in C)),
    )
    mean_bound = float(np.sqrt(2.0 * np.log(d1 + d2) * v))
    if thresholds is None:
        thresholds = [0.5 * mean_bound, mean_bound, 1.5 * mean_bound]
        if mean_bound == 0.0:
            thresholds = [0.5, 1.0, 1.5]

    def run_block(b):
        g = rng.child(b).generator()
        size = samples // 16 + (1 if b < samples % 16 else 0)
        out = np.empty(size)
        stacked = np.stack(C)
        for i in range(size):
            signs = np.where(g.random(len(C)) < 0.5, 1.0, -1.0)
            out[i] = operator_norm(np.tensordot(signs, stacked, axes=1))
        return out

    norms = np.concatenate(parallel_blocks(run_block, 16))
    bounds = [min(1.0, (d1 + d2) * np.exp(-(t**2) / (2.0 * v))) for t in thresholds]
    mean = float(norms.mean())
    se = float(norms.std(ddof=1) / np.sqrt(len(norms)))
    extras = {
        "variance_statistic": float(v),
        "mean_norm": mean,
        "mean_bound": mean_bound,
        "mean_ok": mean <= mean_bound + 3.0 * se + 1e-12,
    }
    return _tail_report(
        "matrix-rademacher", norms, thresholds, bounds, len(norms), extras
    )


def truncated_conjugation_sampler(V, Pi, B: float):
    """Sampler of centered truncated conjugated rescaling matrices.

    Draws a random sign function h, forms trunc_B(D_h)^H Pi trunc_B(D_h), and
    subtracts the exact all-h average (enumerated, so N must stay small).
    Entries of the truncated diagonal are bounded by B, so each sample is
    Hermitian with norm at most 2 B^2; returns (sampler, uniform bound 2B^2).
    """
    Vm = check_isometry(V)
    N = Vm.shape[1]
    if N > 12:
        raise ValueError("exact centering enumerates 2^N sign functions; N <= 12")
    signs = np.array(
        [[1.0 - 2.0 * ((i >> x) & 1) for x in range(N)] for i in range(1 << N)]
    )
    Dall, _ = rescaling_diagonals(Vm, signs)
    DallB = truncate_values(Dall, B)
    mean = np.einsum("ki,ij,kj->ij", DallB.conj(), Pi, DallB) / signs.shape[0]

    def sampler(g: np.random.Generator) -> np.ndarray:
        h = np.where(g.random(N) < 0.5, 1.0, -1.0)
        D, _ = rescaling_diagonals(Vm, h[None, :])
        DB = truncate_values(D[0], B)
        return np.conj(DB)[:, None] * Pi * DB[None, :] - mean

    return sampler, 2.0 * B * B


def matrix_hoeffding_bench(
    sampler,
    norm_bound: float,
    K: int,
    samples: int,
    rng: RngStream,
    thresholds=None,
) -> TailReport:
    """Sums of K iid mean-zero Hermitian matrices with ||Z_k|| <= norm_bound.

    With C_k = norm_bound * Id, the variance proxy is sigma^2 = K norm_bound^2
    and Pr[||sum Z_k|| >= t] <= 2 D exp(-t^2 / (8 sigma^2)).
    """
    g0 = rng.child(0).generator()
    probe = sampler(g0)
    if float(np.max(np.abs(probe - probe.conj().T))) > 1e-8:
        raise ValueError("sampler must produce Hermitian matrices")
    D = probe.shape[0]
    sigma2 = K * norm_bound**2
    if thresholds is None:
        s = np.sqrt(sigma2)
        thresholds = [0.5 * s, s, 2.0 * s]

    def run_block(b):
        g = rng.child(b + 1).generator()
        size = samples // 16 + (1 if b < samples % 16 else 0)
        out = np.empty(size)
        for i in range(size):
            acc = np.zeros((D, D), dtype=np.complex128)
            for _ in range(K):
                acc += sampler(g)
            out[i] = operator_norm(acc)
        return out

    norms = np.concatenate(parallel_blocks(run_block, 16))
    bounds = [
        min(1.0, 2.0 * D * np.exp(-(t**2) / (8.0 * sigma2))) for t in thresholds
    ]
    extras = {"sigma2": float(sigma2), "mean_norm": float(norms.mean())}
    return _tail_report(
        "matrix-hoeffding", norms, thresholds, bounds, len(norms), extras
    )


def complex_hoeffding_bench(
    weights, samples: int, rng: RngStream, thresholds=(1.0, 2.0, 3.0)
) -> TailReport:
    """|S| for S = sum a_i b_i with random signs b_i and unit total weight.

    Tail reference: Pr[|S| >= t] <= 2 exp(-t^2 / 2); also validates the
    second-moment identity E|S|^2 = sum |a_i|^2 = 1 within sampling error.
    """
    a = np.asarray(weights, dtype=np.complex128).ravel()
    total = float(np.sum(np.abs(a) ** 2))
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"squared magnitudes sum to {total}, expected 1")

    def run_block(b):
        g = rng.child(b).generator()
        size = samples // 16 + (1 if b < samples % 16 else 0)
        signs = np.where(g.random((size, a.size)) < 0.5, 1.0, -1.0)
        return np.abs(signs @ a)

    mags = np.concatenate(parallel_blocks(run_block, 16))
    bounds = [min(1.0, 2.0 * np.exp(-(t**2) / 2.0)) for t in thresholds]
    sq = mags**2
    se = float(sq.std(ddof=1) / np.sqrt(len(sq))) if len(sq) > 1 else 0.0
    extras = {
        "second_moment": float(sq.mean()),
        "second_moment_se": se,
        "mean_ok": abs(float(sq.mean()) - 1.0) <= 3.0 * se + 1e-12,
    }
    return _tail_report(
        "complex-hoeffding", mags, thresholds, bounds, len(mags), extras
    )


def width_tail_bench(
    V,
    K: int,
    samples: int,
    rng: RngStream,
    thresholds=(0.5, 1.0, 2.0),
    c_test: float = 0.05,
) -> TailReport:
    """Width of fresh random families against 2 M exp(-c min(t^2, t) K).

    The constant in the theorem is existential; c_test is the configurable
    stand-in (default 0.05, chosen conservative for desk-scale dimensions).
    Thresholds are excesses t, i.e. events {width >= 1 + t}.
    """
    Vm = check_isometry(V)
    M, N = Vm.shape

    def run_block(b):
        g_stream = rng.child(b)
        size = samples // 16 + (1 if b < samples % 16 else 0)
        out = np.empty(size)
        for i in range(size):
            R = random_family(K, N, g_stream.child(i))
            out[i] = width(Vm, R)
        return out

    widths = np.concatenate(parallel_blocks(run_block, 16))
    excess = widths - 1.0
    bounds = [
        min(1.0, 2.0 * M * np.exp(-c_test * min(t * t, t) * K)) for t in thresholds
    ]
    extras = {"mean_width": float(widths.mean()), "c_test": c_test}
    return _tail_report(
        "width-tail", excess, thresholds, bounds, len(widths), extras
    )


def advantage_tail_bench(
    adv: AdversarySpec,
    K: int,
    samples: int,
    rng: RngStream,
    epsilons=(0.05, 0.1, 0.2),
    f=None,
    mode: str = "fixed-f",
    c_test: float = 0.01,
) -> TailReport:
    """Tail of the advantage over fresh random families.

    fixed-f mode measures Pr[gap(R | f) >= eps] against 2 exp(-c eps^2 K N)
    (no-query regime: f is pinned in advance).  max-f mode brute-forces the
    maximum over oracle functions (M <= 12) and measures the tail of the
    excess over the sample mean.  c_test replaces the existential constant.
    """
    N = adv.N
    if mode == "fixed-f":
        if f is None:
            f = np.ones(adv.M)
        fv = check_signs(f)

        def run_block(b):
            g_stream = rng.child(b)
            size = samples // 16 + (1 if b < samples % 16 else 0)
            out = np.empty(size)
            for i in range(size):
                R = random_family(K, N, g_stream.child(i))
                out[i] = advantage_given_f(adv, R, fv)
            return out

        values = np.concatenate(parallel_blocks(run_block, 16))
        bounds = [
            min(1.0, 2.0 * np.exp(-c_test * e * e * K * N)) for e in epsilons
        ]
        extras = {"mode": mode, "c_test": c_test, "mean_advantage": float(values.mean())}
        return _tail_report(
            "advantage-tail-fixed-f", values, epsilons, bounds, len(values), extras
        )
    if mode != "max-f":
        raise ValueError(f"unknown mode {mode!r}")
    from .game import max_advantage_bruteforce

    if adv.M > 12:
        raise ValueError("max-f mode brute-forces oracle functions; M <= 12")

    def run_block(b):
        g_stream = rng.child(b)
        size = samples // 16 + (1 if b < samples % 16 else 0)
        out = np.empty(size)
        for i in range(size):
            R = random_family(K, N, g_stream.child(i))
            out[i], _ = max_advantage_bruteforce(adv, R)
        return out

    values = np.concatenate(parallel_blocks(run_block, 16))
    excess = values - values.mean()
    bounds = [min(1.0, 4.0 * np.exp(-c_test * e * e * K * N)) for e in epsilons]
    extras = {"mode": mode, "c_test": c_test, "mean_advantage": float(values.mean())}
    return _tail_report(
        "advantage-tail-max-f", excess, epsilons, bounds, len(values), extras
    )


def default_suite(seed: int = 2026, samples: int = 500) -> list[TailReport]:
    """The standard bench battery: one report per concentration tool."""
    from .numerics import random_isometry, random_projector

    rng = RngStream(seed)
    g = rng.child(1000).generator()
    coeffs = [
        g.standard_normal((6, 6)) + 1j * g.standard_normal((6, 6)) for _ in range(8)
    ]
    reports = [rademacher_series_bench(coeffs, samples, rng.child(0))]

    V = random_isometry(8, 16, rng.child(1001))
    Pi = random_projector(16, 8, rng.child(1002))
    sampler, bound = truncated_conjugation_sampler(V, Pi, B=2.0)
    reports.append(matrix_hoeffding_bench(sampler, bound, K=8, samples=samples, rng=rng.child(1)))

    weights = np.full(64, 1.0 / 8.0)
    reports.append(complex_hoeffding_bench(weights, max(samples, 2000), rng.child(2)))

    Vw = random_isometry(16, 48, rng.child(1003))
    reports.append(width_tail_bench(Vw, K=16, samples=samples, rng=rng.child(3)))

    Va = random_isometry(8, 10, rng.child(1004))
    Pa = random_projector(10, 5, rng.child(1005))
    adv = AdversarySpec(V=Va, Pi=Pa)
    reports.append(
        advantage_tail_bench(adv, K=16, samples=samples, rng=rng.child(4), mode="fixed-f")
    )
    reports.append(
        advantage_tail_bench(adv, K=16, samples=samples, rng=rng.child(5), mode="max-f")
    )
    return reports
