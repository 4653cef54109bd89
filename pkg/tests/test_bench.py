import itertools

import numpy as np
import pytest

from phaselab.bench import (
    TailReport,
    advantage_tail_bench,
    complex_hoeffding_bench,
    default_suite,
    matrix_hoeffding_bench,
    rademacher_series_bench,
    truncated_conjugation_sampler,
    width_tail_bench,
)
from phaselab.game import AdversarySpec
from phaselab.numerics import RngStream, operator_norm, random_isometry, random_projector


class TestTailReport:
    def test_field_lengths_must_match(self):
        with pytest.raises(ValueError):
            TailReport(
                bound_name="x",
                thresholds=(1.0, 2.0),
                empirical=(0.1,),
                bounds=(0.5, 0.5),
                samples=10,
                passed=True,
                extras={},
            )


class TestRademacherSeries:
    def _coeffs(self, seed, count=6, dim=5):
        g = RngStream(seed).generator()
        return [
            g.standard_normal((dim, dim)) + 1j * g.standard_normal((dim, dim))
            for _ in range(count)
        ]

    def test_passes_on_random_coefficients(self):
        rep = rademacher_series_bench(self._coeffs(1), 300, RngStream(2))
        assert rep.passed
        assert rep.samples == 300

    def test_single_coefficient_exact(self):
        # One term: ||eps A|| = ||A|| always; the mean bound must cover it.
        A = self._coeffs(3, count=1)[0]
        rep = rademacher_series_bench([A], 100, RngStream(4))
        assert rep.passed
        assert rep.extras["mean_norm"] == pytest.approx(operator_norm(A))

    def test_rejects_too_few_samples(self):
        with pytest.raises(ValueError):
            rademacher_series_bench(self._coeffs(5), 10, RngStream(6))


class TestTruncatedConjugationSampler:
    def test_centered_over_full_enumeration(self):
        V = random_isometry(4, 8, RngStream(7))
        Pi = random_projector(8, 4, RngStream(8))
        sampler, bound = truncated_conjugation_sampler(V, Pi, B=2.0)
        total = np.zeros((8, 8), dtype=np.complex128)
        for bits in itertools.product((1.0, -1.0), repeat=4):
            g = _FixedSignGenerator(np.array(bits))
            total += sampler(g)
        np.testing.assert_allclose(total / 16, 0.0, atol=1e-10)

    def test_norm_bound_respected(self):
        V = random_isometry(4, 8, RngStream(9))
        Pi = random_projector(8, 4, RngStream(10))
        B = 1.5
        sampler, bound = truncated_conjugation_sampler(V, Pi, B)
        assert bound == pytest.approx(2 * B * B)
        g = RngStream(11).generator()
        for _ in range(50):
            assert operator_norm(sampler(g)) <= bound + 1e-9


class _FixedSignGenerator:
    """Stands in for a Generator, emitting one prescribed sign pattern."""

    def __init__(self, signs):
        self._signs = signs

    def random(self, size):
        return np.where(self._signs > 0, 0.25, 0.75)


class TestMatrixHoeffding:
    def test_passes_for_truncated_conjugations(self):
        V = random_isometry(6, 12, RngStream(12))
        Pi = random_projector(12, 6, RngStream(13))
        sampler, bound = truncated_conjugation_sampler(V, Pi, B=2.0)
        rep = matrix_hoeffding_bench(sampler, bound, K=8, samples=200, rng=RngStream(14))
        assert rep.passed


class TestComplexHoeffding:
    def test_passes_and_normalizes_second_moment(self):
        rep = complex_hoeffding_bench(np.full(32, 1.0 / np.sqrt(32)) ** 1, 400, RngStream(15))
        assert rep.passed
        assert rep.extras["second_moment"] == pytest.approx(1.0, abs=0.2)

    def test_thresholds_and_bounds(self):
        w = np.full(16, 0.25)
        rep = complex_hoeffding_bench(w, 200, RngStream(16))
        var = float(np.sum(w**2))
        for t, b in zip(rep.thresholds, rep.bounds):
            assert b == pytest.approx(min(1.0, 2.0 * np.exp(-t * t / (2 * var))))


class TestWidthTail:
    def test_passes_and_reports_mean(self):
        V = random_isometry(8, 24, RngStream(17))
        rep = width_tail_bench(V, K=8, samples=96, rng=RngStream(18))
        assert rep.passed
        assert rep.extras["mean_width"] >= 1.0


class TestAdvantageTail:
    def _adv(self, seed):
        rng = RngStream(seed)
        return AdversarySpec(
            V=random_isometry(6, 10, rng.child(0)),
            Pi=random_projector(10, 5, rng.child(1)),
        )

    def test_fixed_f_passes(self):
        rep = advantage_tail_bench(self._adv(19), K=8, samples=96, rng=RngStream(20))
        assert rep.passed
        assert rep.extras["mode"] == "fixed-f"

    def test_max_f_passes(self):
        rep = advantage_tail_bench(
            self._adv(21), K=8, samples=64, rng=RngStream(22), mode="max-f"
        )
        assert rep.passed

    def test_max_f_rejects_large_m(self):
        rng = RngStream(23)
        adv = AdversarySpec(
            V=random_isometry(6, 14, rng.child(0)),
            Pi=random_projector(14, 7, rng.child(1)),
        )
        with pytest.raises(ValueError):
            advantage_tail_bench(adv, K=8, samples=32, rng=rng.child(2), mode="max-f")


class TestDefaultSuite:
    def test_six_reports_deterministic(self):
        a = default_suite(seed=5, samples=160)
        b = default_suite(seed=5, samples=160)
        assert len(a) == 6
        names = [r.bound_name for r in a]
        assert len(set(names)) == 6
        for ra, rb in zip(a, b):
            assert ra == rb
