import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phaselab.decomposition import rescaling_diagonals
from phaselab.game import (
    AdversarySpec,
    advantage_given_f,
    max_advantage_bruteforce,
    random_family,
    random_signs,
)
from phaselab.numerics import CapacityError, RngStream, operator_norm, random_isometry, random_projector
from phaselab.relaxations import (
    _haar_conjugated_term,
    decoupled_advantage_given_f,
    decoupled_kernel,
    decoupled_spectral_relaxation,
    max_decoupled_bruteforce,
    spectral_relaxation,
    subset_norm_conjecture,
    truncated_spectral_relaxation,
)


def _random_adversary(N, M, rank, seed):
    rng = RngStream(seed)
    return AdversarySpec(
        V=random_isometry(N, M, rng.child(0)),
        Pi=random_projector(M, rank, rng.child(1)),
    )


class TestHaarTerm:
    def test_matches_exhaustive_sign_average(self):
        # Independent oracle: enumerate all 2^N sign functions at N=8 and
        # average the conjugated rescaling matrices directly.
        adv = _random_adversary(8, 12, 6, 1)
        H = np.array(list(itertools.product((1.0, -1.0), repeat=8)))
        D, _ = rescaling_diagonals(adv.V, H)
        empirical = np.einsum("ki,ij,kj->ij", D.conj(), adv.Pi, D) / H.shape[0]
        np.testing.assert_allclose(_haar_conjugated_term(adv), empirical, atol=1e-10)

    def test_hermitian(self):
        T = _haar_conjugated_term(_random_adversary(6, 10, 5, 2))
        np.testing.assert_allclose(T, T.conj().T, atol=1e-12)


class TestSpectralRelaxation:
    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=20, deadline=None)
    def test_upper_bounds_fixed_f_advantage(self, seed):
        adv = _random_adversary(6, 9, 4, seed)
        R = random_family(3, 6, RngStream(seed).child(5))
        f = random_signs(9, RngStream(seed).child(6))
        assert advantage_given_f(adv, R, f) <= spectral_relaxation(adv, R) + 1e-10

    def test_upper_bounds_maximized_advantage(self):
        adv = _random_adversary(6, 10, 5, 3)
        R = random_family(4, 6, RngStream(4))
        best, _ = max_advantage_bruteforce(adv, R)
        assert best <= spectral_relaxation(adv, R) + 1e-10

    def test_nonnegative(self):
        adv = _random_adversary(5, 8, 4, 5)
        assert spectral_relaxation(adv, random_family(2, 5, RngStream(6))) >= 0.0


class TestTruncatedRelaxation:
    def test_loose_bound_recovers_plain_relaxation(self):
        adv = _random_adversary(6, 9, 4, 7)
        R = random_family(3, 6, RngStream(8))
        exact = spectral_relaxation(adv, R)
        # B far above any diagonal magnitude: only Monte Carlo error remains.
        val, stderr = truncated_spectral_relaxation(
            adv, R, B=50.0, samples=20_000, rng=RngStream(9)
        )
        assert abs(val - exact) < max(6 * stderr, 0.02)

    def test_stderr_positive_and_small(self):
        adv = _random_adversary(5, 8, 4, 10)
        R = random_family(3, 5, RngStream(11))
        val, stderr = truncated_spectral_relaxation(
            adv, R, B=2.0, samples=5000, rng=RngStream(12)
        )
        assert val >= 0.0
        assert 0.0 <= stderr < 0.1

    def test_deterministic(self):
        adv = _random_adversary(5, 8, 4, 13)
        R = random_family(3, 5, RngStream(14))
        a = truncated_spectral_relaxation(adv, R, B=1.5, samples=2000, rng=RngStream(15))
        b = truncated_spectral_relaxation(adv, R, B=1.5, samples=2000, rng=RngStream(15))
        assert a == b


class TestDecoupled:
    def test_kernel_quadratic_form_matches_fixed_f(self):
        adv = _random_adversary(6, 8, 4, 16)
        R = random_family(3, 6, RngStream(17))
        Rp = random_family(3, 6, RngStream(18))
        f = random_signs(8, RngStream(19))
        C = decoupled_kernel(adv, R, Rp)
        assert abs(f @ (C @ f)) == pytest.approx(
            decoupled_advantage_given_f(adv, R, Rp, f), abs=1e-12
        )

    def test_bruteforce_dominates_fixed_f(self):
        adv = _random_adversary(6, 8, 4, 20)
        R = random_family(3, 6, RngStream(21))
        Rp = random_family(3, 6, RngStream(22))
        best, fbest = max_decoupled_bruteforce(adv, R, Rp)
        assert decoupled_advantage_given_f(adv, R, Rp, fbest) == pytest.approx(best)
        for seed in range(5):
            f = random_signs(8, RngStream(40 + seed))
            assert decoupled_advantage_given_f(adv, R, Rp, f) <= best + 1e-10

    def test_relaxation_bounds_bruteforce(self):
        adv = _random_adversary(6, 8, 4, 23)
        R = random_family(3, 6, RngStream(24))
        Rp = random_family(3, 6, RngStream(25))
        best, _ = max_decoupled_bruteforce(adv, R, Rp)
        assert best <= decoupled_spectral_relaxation(adv, R, Rp) + 1e-9

    def test_shape_mismatch_rejected(self):
        adv = _random_adversary(6, 8, 4, 26)
        with pytest.raises(ValueError):
            decoupled_spectral_relaxation(
                adv, random_family(3, 6, RngStream(0)), random_family(4, 6, RngStream(1))
            )


def _projector_resolution(dim, L, seed):
    U = random_isometry(dim, dim, RngStream(seed))
    block = dim // L
    return [
        U[:, i * block : (i + 1) * block] @ U[:, i * block : (i + 1) * block].conj().T
        for i in range(L)
    ]


def _unit_states(N, K, seed):
    g = RngStream(seed).generator()
    out = []
    for _ in range(K):
        s = g.standard_normal(N) + 1j * g.standard_normal(N)
        out.append(s / np.linalg.norm(s))
    return out


class TestSubsetNormConjecture:
    def test_trivial_resolution_gives_zero(self):
        # A single projector equal to the identity has zero deviation.
        val, subset = subset_norm_conjecture([np.eye(8)], _unit_states(4, 3, 1))
        assert val == pytest.approx(0.0, abs=1e-12)

    def test_greedy_never_exceeds_brute(self):
        projs = _projector_resolution(8, 4, 2)
        states = _unit_states(4, 3, 3)
        vb, _ = subset_norm_conjecture(projs, states, mode="brute")
        vg, _ = subset_norm_conjecture(projs, states, mode="greedy", rng=RngStream(4))
        assert vg <= vb + 1e-10

    def test_brute_witness_attains_value(self):
        projs = _projector_resolution(8, 4, 5)
        states = _unit_states(4, 2, 6)
        from phaselab.relaxations import _subset_value_terms

        terms = _subset_value_terms(projs, states)
        val, subset = subset_norm_conjecture(projs, states, mode="brute")
        assert operator_norm(sum(terms[i] for i in subset)) == pytest.approx(val)

    def test_rejects_incomplete_resolution(self):
        projs = _projector_resolution(8, 4, 7)[:-1]
        with pytest.raises(ValueError):
            subset_norm_conjecture(projs, _unit_states(4, 2, 8))

    def test_rejects_nonunit_states(self):
        projs = _projector_resolution(8, 4, 9)
        with pytest.raises(ValueError):
            subset_norm_conjecture(projs, [np.ones(4)])

    def test_brute_cutoff(self):
        projs = _projector_resolution(8, 8, 10)
        with pytest.raises(CapacityError):
            subset_norm_conjecture(projs, _unit_states(4, 2, 11), cutoff=4)
