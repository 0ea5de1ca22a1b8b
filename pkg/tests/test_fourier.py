import math

import mpmath
import pytest

from toruswalk import (
    ValidationError,
    best_fourier_lower_bound,
    builtin_generators,
    discrepancy_exact,
    etk_upper_bound,
    exact_walk_distribution,
    load_generators,
    project_to_torus,
    qhat,
    single_h_lower_bound,
    weight_R,
)

GOLDEN = builtin_generators("golden", 1, 1)
HALF = load_generators([[0.5]])


class TestQhat:
    def test_half_at_one(self):
        assert qhat(HALF, (1,)) == pytest.approx(-1.0, abs=1e-15)

    def test_zero_frequency_is_one(self):
        G = builtin_generators("random", 3, 2, seed=1)
        assert qhat(G, (0, 0)) == 1.0

    def test_golden_high_precision(self):
        # independent high-precision oracle for cos(2 pi alpha)
        alpha = mpmath.mpf("0.6180339887498949")
        expected = float(mpmath.cos(2 * mpmath.pi * alpha))
        assert qhat(GOLDEN, (1,)) == pytest.approx(expected, abs=1e-14)
        assert qhat(GOLDEN, (1,)) == pytest.approx(-0.737368, abs=1e-6)

    def test_evenness(self):
        G = builtin_generators("random", 2, 2, seed=9)
        for h in [(1, 2), (3, -4), (0, 5)]:
            neg = tuple(-v for v in h)
            assert qhat(G, h) == pytest.approx(qhat(G, neg), abs=1e-15)

    def test_bounded_by_one(self):
        G = builtin_generators("sqrt_primes", 2, 2)
        for h1 in range(-4, 5):
            for h2 in range(-4, 5):
                assert abs(qhat(G, (h1, h2))) <= 1.0 + 1e-15

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            qhat(GOLDEN, (1, 2))


class TestWeightR:
    @pytest.mark.parametrize(
        "h,expected", [((3, 0, -2), 6), ((0, 0), 1), ((1, 1, 1), 1), ((-5,), 5)]
    )
    def test_values(self, h, expected):
        assert weight_R(h) == expected


class TestSingleH:
    def test_no_steps(self):
        assert single_h_lower_bound(GOLDEN, 0, (1,)) == pytest.approx(
            1.0 / math.pi, abs=1e-12
        )

    def test_half_two_steps(self):
        v = single_h_lower_bound(HALF, 2, (1,))
        assert v == pytest.approx(1.0 / math.pi, abs=1e-12)
        P = project_to_torus(exact_walk_distribution(HALF, 2), HALF)
        assert discrepancy_exact(P).value >= v

    def test_golden_three_steps(self):
        v = single_h_lower_bound(GOLDEN, 3, (1,))
        assert v == pytest.approx(abs(qhat(GOLDEN, (1,))) ** 3 / math.pi, abs=1e-15)
        assert v == pytest.approx(0.1276158, abs=1e-6)

    def test_explicit_r_matches_default_schedule(self):
        # r_i = 1/(4|h_i|) reproduces the closed form
        for h in [(1,), (3,), (-2,)]:
            r = (1.0 / (4 * abs(h[0])),)
            assert single_h_lower_bound(GOLDEN, 5, h, r) == pytest.approx(
                single_h_lower_bound(GOLDEN, 5, h), abs=1e-15
            )

    def test_zero_h_rejected(self):
        with pytest.raises(ValidationError):
            single_h_lower_bound(GOLDEN, 1, (0,))

    def test_bad_r_rejected(self):
        with pytest.raises(ValidationError):
            single_h_lower_bound(GOLDEN, 1, (1,), (0.7,))

    def test_is_lower_bound_for_discrepancy(self):
        G = builtin_generators("sqrt_primes", 1, 2)
        for k in (1, 2, 4):
            P = project_to_torus(exact_walk_distribution(G, k), G)
            D = discrepancy_exact(P).value
            for h in [(1, 0), (0, 1), (1, 1), (2, -1)]:
                assert single_h_lower_bound(G, k, h) <= D + 1e-12


class TestBestLowerBound:
    def test_half_prefers_unit_frequency(self):
        v, h = best_fourier_lower_bound(HALF, 1, 2)
        assert v == pytest.approx(1.0 / math.pi, abs=1e-12)
        assert h in ((-1,), (1,))

    def test_zero_steps_tie_break(self):
        v, h = best_fourier_lower_bound(GOLDEN, 0, 1)
        assert v == pytest.approx(1.0 / math.pi, abs=1e-12)
        assert h == (-1,)

    def test_matches_exhaustive(self):
        expected = max(
            single_h_lower_bound(GOLDEN, 10, (h,)) for h in range(-8, 9) if h != 0
        )
        v, _ = best_fourier_lower_bound(GOLDEN, 10, 8)
        assert v == expected

    def test_monotone_in_hmax(self):
        G = builtin_generators("sqrt_primes", 1, 2)
        vals = [best_fourier_lower_bound(G, 6, hmax)[0] for hmax in (1, 2, 4, 8)]
        assert all(b >= a for a, b in zip(vals, vals[1:]))


class TestEtk:
    def test_half_k3_m1(self):
        assert etk_upper_bound(HALF, 3, 1) == pytest.approx(4.5, abs=1e-12)

    def test_quarter_k1_m1(self):
        G = load_generators([[0.25]])
        assert etk_upper_bound(G, 1, 1) == pytest.approx(1.5, abs=1e-12)

    def test_upper_bounds_exact_discrepancy(self):
        P = project_to_torus(exact_walk_distribution(GOLDEN, 100), GOLDEN)
        D = discrepancy_exact(P).value
        for M in (1, 3, 7, 20):
            assert etk_upper_bound(GOLDEN, 100, M) >= D

    def test_validation(self):
        with pytest.raises(ValidationError):
            etk_upper_bound(GOLDEN, 1, 0)
