import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frobstats.algebra import Poly, irreducibles
from frobstats.bounds import (
    CVInput,
    bound_ratio_trend,
    char_power_sum,
    cv_bound,
    lindelof_bound,
    lindelof_check,
    n_max,
    sup_log_abs,
    sup_log_L,
)
from frobstats.errors import DomainError
from frobstats.places import DirichletChar, L_eval, char_L_poly


def test_cv_trivial_cases():
    M = 7
    zero = CVInput.from_roots(np.zeros(M), 10)
    for N in range(1, 11):
        assert sup_log_abs(np.zeros(M)) <= cv_bound(zero, N) + 1e-12
        assert cv_bound(zero, N) == pytest.approx(math.log(2) * M / (N + 1))
    ones = CVInput.from_roots(np.ones(M), 10)
    for N in range(1, 11):
        H = sum(1 / n for n in range(1, N + 1))
        assert cv_bound(ones, N) == pytest.approx(math.log(2) * M / (N + 1) + M * H)
        assert cv_bound(ones, N) >= M * math.log(2)
    assert sup_log_abs(np.ones(M)) == pytest.approx(M * math.log(2))


def test_cv_input_validation():
    with pytest.raises(DomainError):
        CVInput(0, ())
    with pytest.raises(DomainError):
        CVInput(2, (-1.0,))
    with pytest.raises(DomainError):
        cv_bound(CVInput(2, (1.0, 1.0)), 3)


@given(st.integers(1, 20), st.integers(0, 2**32 - 1))
@settings(max_examples=200, deadline=None)
def test_cv_inequality_random_disk(M, seed):
    rng = np.random.default_rng(seed)
    r = np.sqrt(rng.uniform(0, 1, M)) * np.exp(2j * np.pi * rng.uniform(0, 1, M))
    if rng.integers(0, 2):
        r = r / np.abs(r)  # roots on the circle are the extreme case
    inp = CVInput.from_roots(r, 10)
    sup = sup_log_abs(r)
    for N in range(1, 11):
        assert sup <= cv_bound(inp, N) + 1e-9


def test_char_power_sum_degree_one_vanishes():
    for v in irreducibles(3, 1):
        chi = DirichletChar(v, 2)
        assert char_L_poly(chi).normalized().degree == 0
        for n in range(1, 6):
            assert char_power_sum(chi, n).is_zero()


def test_char_power_sum_exhaustive_ell2():
    for d in range(1, 9):
        for v in irreducibles(3, d):
            chi = DirichletChar(v, 2)
            L = char_L_poly(chi)
            for n in range(1, 9):
                s = char_power_sum(chi, n, L)
                assert s.is_rational
                assert abs(int(s)) <= 3 ** (n / 2) * (1 + 3 ** (n / 2))


def test_char_power_sum_ell3():
    for v in irreducibles(7, 3)[:10]:
        for k in (1, 2):
            chi = DirichletChar(v, 3, k)
            L = char_L_poly(chi)
            for n in range(1, 7):
                char_power_sum(chi, n, L)


def test_grid_refinement_stable():
    for v in irreducibles(3, 6)[:5] + irreducibles(3, 7)[:5]:
        L = char_L_poly(DirichletChar(v, 2)).normalized()
        a, _ = sup_log_L(L, 1024)
        b, _ = sup_log_L(L, 4096)
        assert abs(a - b) < 1e-4


def test_sigma_two_is_small():
    for v in irreducibles(3, 6)[:10]:
        L = char_L_poly(DirichletChar(v, 2)).normalized()
        coarse = sum(abs(c) * 3.0 ** (-2 * m) for m, c in enumerate(L.complex_coeffs()) if m)
        t = np.linspace(0, 2 * np.pi / math.log(3), 200)
        vals = np.log(np.abs(L_eval(L, 2.0, t)))
        assert vals.max() <= math.log1p(coarse) + 1e-12
        assert vals.max() < lindelof_bound(3, 8)[0]


def test_lindelof_small_degrees():
    for v in irreducibles(3, 4) + irreducibles(3, 5)[:10]:
        r = lindelof_check(DirichletChar(v, 2), 512)
        assert r.ok and r.sup_logL <= r.bound


def test_lindelof_bound_n_range():
    assert n_max(3, 3) == 2
    for d in range(3, 60):
        b, N = lindelof_bound(3, d)
        assert 1 <= N <= n_max(3, d)
        assert b == min(lindelof_bound(3, d, k)[0] for k in range(1, n_max(3, d) + 1))
    with pytest.raises(DomainError):
        lindelof_bound(3, 2)


def test_bound_ratio_trend_values():
    # frozen: the ratio rises to d = 19, then falls
    trend = dict(bound_ratio_trend(3, range(10, 41)))
    assert trend[19] == pytest.approx(1.216475239530214, abs=1e-12)
    assert max(trend, key=trend.get) == 19
    assert trend[40] < trend[20]


def test_lindelof_rejects_small_grid():
    with pytest.raises(DomainError):
        lindelof_check(DirichletChar(Poly((1, 2, 0, 1), 3), 2), 16)
