import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phaselab.game import (
    AdversarySpec,
    acceptance_probability,
    advantage_given_f,
    advantage_kernel,
    check_family,
    check_signs,
    haar_average_acceptance,
    kernel_quadratic_form,
    max_advantage_bruteforce,
    max_advantage_localsearch,
    phase_state,
    random_family,
    random_signs,
    simulate_game,
)
from phaselab.numerics import CapacityError, RngStream, random_isometry, random_projector


def _random_adversary(N, M, rank, seed):
    rng = RngStream(seed)
    return AdversarySpec(
        V=random_isometry(N, M, rng.child(0)),
        Pi=random_projector(M, rank, rng.child(1)),
    )


class TestValidatorsAndStates:
    def test_check_signs_rejects_nonsign(self):
        with pytest.raises(ValueError):
            check_signs([1.0, 0.5])

    def test_check_family_rejects_wrong_ndim(self):
        with pytest.raises(ValueError):
            check_family(np.ones(4))

    def test_random_family_entries(self):
        R = random_family(5, 8, RngStream(0))
        assert R.shape == (5, 8)
        assert set(np.unique(R)) <= {-1.0, 1.0}

    def test_random_signs_deterministic(self):
        np.testing.assert_array_equal(
            random_signs(16, RngStream(3)), random_signs(16, RngStream(3))
        )

    def test_phase_state_is_unit(self):
        h = random_signs(16, RngStream(1))
        psi = phase_state(h)
        assert np.linalg.norm(psi) == pytest.approx(1.0)
        np.testing.assert_allclose(np.abs(psi), 1.0 / 4.0)

    def test_adversary_spec_validates(self):
        with pytest.raises(ValueError):
            AdversarySpec(V=np.ones((4, 2)), Pi=np.eye(4))


class TestAcceptanceProbability:
    def test_matches_direct_formula(self):
        adv = _random_adversary(4, 6, 3, 10)
        h = random_signs(4, RngStream(11))
        f = random_signs(6, RngStream(12))
        state = (f * (adv.V @ phase_state(h)))
        expected = np.real(np.vdot(state, adv.Pi @ state))
        assert acceptance_probability(adv, h, f) == pytest.approx(expected)

    def test_identity_projector_accepts_always(self):
        adv = AdversarySpec(V=random_isometry(4, 6, RngStream(1)), Pi=np.eye(6))
        h = random_signs(4, RngStream(2))
        assert acceptance_probability(adv, h, np.ones(6)) == pytest.approx(1.0)

    def test_haar_average_equals_exhaustive_mean(self):
        # Independent oracle: enumerate all 2^N sign functions at N=8.
        adv = _random_adversary(8, 12, 5, 20)
        f = random_signs(12, RngStream(21))
        total = 0.0
        for bits in itertools.product((1.0, -1.0), repeat=8):
            total += acceptance_probability(adv, np.array(bits), f)
        assert haar_average_acceptance(adv, f) == pytest.approx(total / 256, abs=1e-12)


class TestAdvantageKernel:
    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=25, deadline=None)
    def test_kernel_quadratic_form_matches_direct_advantage(self, seed):
        adv = _random_adversary(6, 9, 4, seed)
        R = random_family(3, 6, RngStream(seed).child(5))
        f = random_signs(9, RngStream(seed).child(6))
        B = advantage_kernel(adv, R)
        assert abs(kernel_quadratic_form(B, f)) == pytest.approx(
            advantage_given_f(adv, R, f), abs=1e-12
        )

    def test_kernel_is_hermitian(self):
        adv = _random_adversary(6, 9, 4, 3)
        B = advantage_kernel(adv, random_family(3, 6, RngStream(4)))
        np.testing.assert_allclose(B, B.conj().T, atol=1e-12)

    def test_global_sign_flip_invariance(self):
        adv = _random_adversary(5, 7, 3, 8)
        R = random_family(2, 5, RngStream(9))
        f = random_signs(7, RngStream(10))
        assert advantage_given_f(adv, R, f) == pytest.approx(
            advantage_given_f(adv, R, -f)
        )


class TestBruteForce:
    def test_m2_hand_enumeration(self):
        # With M = 2 only f = (+1, +1) and (+1, -1) matter (global flip).
        adv = _random_adversary(2, 2, 1, 30)
        R = random_family(2, 2, RngStream(31))
        candidates = [np.array([1.0, 1.0]), np.array([1.0, -1.0])]
        vals = [advantage_given_f(adv, R, f) for f in candidates]
        best, f = max_advantage_bruteforce(adv, R)
        assert best == pytest.approx(max(vals), abs=1e-14)
        np.testing.assert_array_equal(f, candidates[int(np.argmax(vals))])

    def test_matches_exhaustive_loop_at_m8(self):
        adv = _random_adversary(6, 8, 4, 40)
        R = random_family(4, 6, RngStream(41))
        exhaustive = max(
            advantage_given_f(adv, R, np.array(bits))
            for bits in itertools.product((1.0, -1.0), repeat=8)
        )
        best, f = max_advantage_bruteforce(adv, R)
        assert best == pytest.approx(exhaustive, abs=1e-12)
        assert advantage_given_f(adv, R, f) == pytest.approx(best, abs=1e-12)

    def test_witness_first_coordinate_positive(self):
        adv = _random_adversary(4, 6, 3, 42)
        _, f = max_advantage_bruteforce(adv, random_family(3, 4, RngStream(43)))
        assert f[0] == 1.0

    def test_cutoff_raises_capacity_error(self):
        adv = _random_adversary(4, 8, 4, 44)
        with pytest.raises(CapacityError):
            max_advantage_bruteforce(adv, random_family(2, 4, RngStream(45)), cutoff=6)


class TestLocalSearch:
    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=15, deadline=None)
    def test_never_exceeds_bruteforce(self, seed):
        adv = _random_adversary(5, 8, 4, seed)
        R = random_family(3, 5, RngStream(seed).child(7))
        best, _ = max_advantage_bruteforce(adv, R)
        local, f = max_advantage_localsearch(adv, R, rng=RngStream(seed).child(8))
        assert local <= best + 1e-10
        assert advantage_given_f(adv, R, f) == pytest.approx(local, abs=1e-10)

    def test_usually_finds_optimum_at_small_m(self):
        hits = 0
        for seed in range(20):
            adv = _random_adversary(5, 8, 4, 100 + seed)
            R = random_family(3, 5, RngStream(200 + seed))
            best, _ = max_advantage_bruteforce(adv, R)
            local, _ = max_advantage_localsearch(adv, R, rng=RngStream(300 + seed))
            hits += local >= best - 1e-9
        assert hits >= 15

    def test_deterministic_given_stream(self):
        adv = _random_adversary(6, 10, 5, 50)
        R = random_family(4, 6, RngStream(51))
        a = max_advantage_localsearch(adv, R, rng=RngStream(52))
        b = max_advantage_localsearch(adv, R, rng=RngStream(52))
        assert a[0] == b[0]
        np.testing.assert_array_equal(a[1], b[1])


class TestSimulateGame:
    def test_win_rate_tracks_half_plus_half_gap(self):
        adv = _random_adversary(8, 12, 6, 60)
        R = random_family(4, 8, RngStream(61))
        f = random_signs(12, RngStream(62))
        B = advantage_kernel(adv, R)
        signed_gap = kernel_quadratic_form(B, f)
        trials = 40_000
        win = simulate_game(adv, R, f, trials, RngStream(63))
        sigma = 0.5 / np.sqrt(trials)
        assert abs(win - (0.5 + signed_gap / 2)) < 5 * sigma

    def test_deterministic(self):
        adv = _random_adversary(4, 6, 3, 70)
        R = random_family(2, 4, RngStream(71))
        f = np.ones(6)
        assert simulate_game(adv, R, f, 5000, RngStream(72)) == simulate_game(
            adv, R, f, 5000, RngStream(72)
        )

    def test_rejects_bad_trials(self):
        adv = _random_adversary(4, 6, 3, 73)
        with pytest.raises(ValueError):
            simulate_game(adv, random_family(2, 4, RngStream(0)), np.ones(6), 0, RngStream(1))
