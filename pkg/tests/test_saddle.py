import math

import pytest

from orbitasym.saddle import (
    QuadratureError,
    cauchy_integral,
    delta_terms,
    estimate,
    exact_log,
    log_prefactor,
    log_prefactor_at,
    solve,
    starr,
    leading_prefactor,
    validate_saddle,
)
from orbitasym.special import k_ell
from orbitasym.zfunctions import z_staircase


def test_solution_residuals_and_widths():
    sol = solve(2, 50, 7)
    assert max(sol.residuals) < 1e-10
    assert sol.lam == pytest.approx(z_staircase(2, 3, sol.t) ** -0.5, rel=1e-14)
    assert sol.mu == pytest.approx(z_staircase(2, 1, sol.t) ** -0.5, rel=1e-14)


@pytest.mark.parametrize("k", [0, 50, 60, -1])
def test_solve_rejects_bad_k(k):
    with pytest.raises(ValueError):
        solve(2, 50, k)


def test_solve_rejects_small_ell():
    with pytest.raises(ValueError):
        solve(1, 50, 7)


def test_small_ratio_regime():
    sol = solve(3, 10000, 10)
    assert 0.99 <= sol.t / (2 * 10 / 10000) <= 1.01


def test_rho_limit():
    n = 10**6
    sol = solve(2, n, math.ceil(n**0.5))
    limit = 1 / float(k_ell(2))
    assert abs(sol.rho / limit - 1) < 0.05


def test_starr_examples():
    for ell in (2, 3, 4):
        ref = (ell - 1) * math.log(50) - ell * math.log(ell - 1) + ell + math.log(float(k_ell(ell)))
        assert starr(ell, 50, 1) == pytest.approx(ref, rel=1e-14)
    n, k = 200, 9
    ref = -2 * k * math.log(k) + k * (math.log(n) + 2 + math.log(math.pi**2 / 6))
    assert starr(2, n, k) == pytest.approx(ref, rel=1e-14)
    assert starr(3, 100, 5) < starr(3, 101, 5)
    with pytest.raises(ValueError):
        starr(2, 5, 0)


@pytest.mark.parametrize("ell,n,k", [(2, 100, 10), (3, 1000, 100), (4, 500, 60), (5, 10**4, 300)])
def test_prefactor_decomposes_into_starr_and_delta(ell, n, k):
    sol = solve(ell, n, k)
    lm = log_prefactor(sol)
    d = delta_terms(sol)
    assert lm == pytest.approx(starr(ell, n, k) + k * d.delta, rel=1e-9)
    assert d.delta == pytest.approx((ell - 1) * d.eps - math.log1p(d.eta), rel=1e-9, abs=1e-12)
    assert log_prefactor_at(ell, n, k, sol.t, sol.rho) == pytest.approx(lm, rel=1e-12)


def test_leading_prefactors():
    assert leading_prefactor(2) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
    assert leading_prefactor(3) == pytest.approx(1 / (math.pi * math.sqrt(2)), rel=1e-15)


def test_estimate_assembly(tables):
    r = estimate(3, 40, 8)
    assert r.estimate_log == pytest.approx(math.log(leading_prefactor(3)) + r.starr + r.correction, rel=1e-14)
    assert r.exact_log is None and r.log_error is None
    r = estimate(2, 30, 6, table=tables(2, 30))
    assert r.exact_log == pytest.approx(exact_log(tables(2, 30), 30, 6), rel=1e-14)
    with pytest.raises(ValueError):
        estimate(3, 30, 6, table=tables(2, 30))


def test_estimate_ratio_trend(tables):
    small = estimate(2, 16, 4, table=tables(2, 64))
    large = estimate(2, 64, 8, table=tables(2, 64))
    assert 0.5 < math.exp(large.log_error) < 2.0
    assert abs(large.log_error) < abs(small.log_error)


def test_exact_log_rejects_zero(tables):
    with pytest.raises(ValueError):
        exact_log(tables(2, 10), 10, 0)


@pytest.mark.parametrize("ell,n,k", [(2, 20, 4), (2, 30, 5), (3, 15, 6)])
def test_cauchy_identity(ell, n, k, tables):
    chk = validate_saddle(ell, n, k, table=tables(ell, n))
    assert chk.residual < 1e-6


def test_integrand_peak_at_origin():
    c = cauchy_integral(2, 20, 4)
    assert c.max_modulus == pytest.approx(1.0, abs=1e-12)
    assert c.argmax == (0.0, 0.0)


def test_scaled_integral_approaches_prefactor():
    errs = []
    for n in (100, 400):
        c = cauchy_integral(2, n, math.ceil(n**0.5))
        ratio = n * c.value / leading_prefactor(2)
        assert abs(ratio - 1) < 0.2
        errs.append(abs(ratio - 1))
    assert errs[1] < errs[0]


def test_quadrature_failure_reports_values():
    with pytest.raises(QuadratureError) as info:
        cauchy_integral(2, 400, 20, grid=16, max_grid=64)
    assert len(info.value.last_values) == 2
    with pytest.raises(ValueError):
        cauchy_integral(2, 20, 4, grid=8)
