import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gauss_periodize import (InvalidParameterError, SeriesParams, error_scan, evaluate,
                             evaluate_many, evaluate_naive, order_cap, poisson_coefficients,
                             select_order, truncation_tail_bound)
from gauss_periodize.evaluation import (THREADS_ENV, eval_noise_allowance, reduce_argument,
                                        scan_workers, symmetric_grid)


def series(tau_m, n_max):
    return poisson_coefficients(SeriesParams(tau_m, n_max))


S12 = series(12.0, 30)


class TestEvaluate:
    def test_center_collapses_to_coefficient_sum(self, backend):
        s = series(12.0, 30)
        want = math.fsum([-0.5 * s.coeffs[0], *s.coeffs])
        got = evaluate(s, 0.0)
        assert abs(got - want) <= 4 * np.spacing(want)
        assert abs(got - evaluate_naive(s, 0.0)[0]) <= 4 * np.spacing(want)

    @given(st.floats(min_value=-40.0, max_value=40.0))
    def test_even_bitwise(self, t):
        assert evaluate(S12, t) == evaluate(S12, -t)

    def test_selected_order_accuracy(self, backend):
        s = poisson_coefficients(select_order(12.0, 1e-15))
        assert abs(evaluate(s, 1.75) - math.exp(-1.75 ** 2 / 4)) <= 1e-15

    def test_single_term(self):
        assert evaluate(series(12.0, 0), 0.0) == math.sqrt(math.pi) / 12.0

    def test_plus_a0_form_is_identical(self):
        # sqrt(pi)/tau_m + sum_{n>=1} a_n cos(...) is the same approximation
        s = series(12.0, 25)
        t = symmetric_grid(12.0, 101)
        for x in t:
            alt = math.fsum([math.sqrt(math.pi) / 12.0] +
                            [a * math.cos(math.pi * n * x / 12.0)
                             for n, a in enumerate(s.coeffs) if n])
            assert abs(evaluate(s, x) - alt) <= 8 * np.spacing(s.coeffs[0])

    def test_scalar_matches_vector(self):
        t = np.array([-3.0, 0.5, 11.0])
        assert [evaluate(S12, x) for x in t] == list(evaluate_many(S12, t))

    def test_vector_shape_preserved(self):
        t = np.zeros((3, 4))
        assert evaluate_many(S12, t).shape == (3, 4)


class TestPeriodicExtension:
    @given(st.floats(min_value=-12.0, max_value=12.0))
    def test_shift_by_period(self, t):
        shifted = t + 24.0
        preimage = shifted - 24.0  # exact by Sterbenz
        a, b = evaluate(S12, shifted), evaluate(S12, preimage)
        assert abs(a - b) <= 8 * np.spacing(max(abs(a), abs(b)))
        # against the unshifted point the only extra error is the rounding of t + 24
        slope = 0.5  # >= max |d/dt exp(-t^2/4)| plus images
        assert abs(a - evaluate(S12, t)) <= 8 * np.spacing(S12.coeffs[0]) + slope * abs(preimage - t)

    def test_reduction_is_exact(self):
        t = np.array([12.0, 13.0, -13.0, 36.0, 35.5, -100.25])
        r = reduce_argument(t, 12.0)
        assert list(r) == [12.0, -11.0, 11.0, 12.0, 11.5, -4.25]

    def test_inside_unchanged(self):
        t = symmetric_grid(12.0, 1001)
        assert np.array_equal(reduce_argument(t, 12.0), t)


class TestSymmetricGrid:
    def test_endpoints_and_symmetry(self):
        g = symmetric_grid(12.0, 100001)
        assert g[0] == -12.0 and g[-1] == 12.0
        assert np.array_equal(g, -g[::-1])
        assert np.all(np.diff(g) > 0)

    def test_rejects_single_point(self):
        with pytest.raises(InvalidParameterError):
            symmetric_grid(12.0, 1)


class TestErrorScan:
    def test_tau12_n30(self, backend):
        rep = error_scan(series(12.0, 30), 100001)
        assert rep.max_error <= 1e-15
        assert rep.within_budget

    def test_single_term_dominated_by_tail(self):
        rep = error_scan(series(12.0, 0), 10001)
        bound = truncation_tail_bound(SeriesParams(12.0, 0))
        assert rep.max_error <= bound <= 2 * rep.max_error

    def test_two_point_grid(self):
        rep = error_scan(S12, 2)
        assert list(rep.grid) == [-12.0, 12.0]
        assert rep.argmax_t in (-12.0, 12.0)
        assert rep.abs_errors[0] == rep.abs_errors[1]

    def test_report_fields(self):
        rep = error_scan(S12, 1001)
        assert rep.max_error == np.max(rep.abs_errors)
        assert rep.abs_errors[list(rep.grid).index(rep.argmax_t)] == rep.max_error
        assert np.array_equal(rep.abs_errors, rep.abs_errors[::-1])
        assert np.array_equal(rep.abs_errors, np.abs(rep.series_values - rep.exact))

    @pytest.mark.parametrize("tau_m", [8.0, 12.0, 16.0, 24.0])
    def test_budget_sound(self, tau_m):
        cap = order_cap(tau_m)
        for n in sorted({0, 1, 3, 8, 16, cap // 4, cap // 2, cap - 1, cap}):
            rep = error_scan(series(tau_m, n), 4001)
            assert rep.within_budget, (tau_m, n, rep.max_error, rep.budget)

    @pytest.mark.parametrize("tau_m, eps", [(12.0, 1e-15), (16.0, 1e-12), (24.0, 1e-10), (8.0, 1e-6)])
    def test_error_decreases_with_order(self, tau_m, eps):
        n = select_order(tau_m, eps).n_max
        assert n >= 4
        full = error_scan(series(tau_m, n), 4001).max_error
        half = error_scan(series(tau_m, n // 2), 4001).max_error
        floor = 4 * (eps + eval_noise_allowance(n))
        assert full <= half or max(full, half) <= floor

    def test_partition_independent(self):
        s = series(24.0, 120)
        one = error_scan(s, 50001, workers=1)
        many = error_scan(s, 50001, workers=5)
        assert np.array_equal(one.series_values, many.series_values)
        assert one.max_error == many.max_error and one.argmax_t == many.argmax_t


class TestThreadsEnv:
    def test_unset(self, monkeypatch):
        monkeypatch.delenv(THREADS_ENV, raising=False)
        assert scan_workers() is None

    def test_value(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "3")
        assert scan_workers() == 3

    @pytest.mark.parametrize("raw", ["0", "-2", "lots"])
    def test_invalid(self, monkeypatch, raw):
        monkeypatch.setenv(THREADS_ENV, raw)
        with pytest.raises(InvalidParameterError):
            scan_workers()
