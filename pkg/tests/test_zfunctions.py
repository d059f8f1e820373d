import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitasym.special import MP, k_ell, zeta, zeta_deriv
from orbitasym.zfunctions import (
    AsymptoticExpansion,
    ZSpec,
    c_coeff,
    dirichlet_weights,
    eval_expansion,
    h,
    h_inverse,
    h_prime,
    mixed_log_convexity_probe,
    staircase_coeff,
    staircase_expansion,
    residue_expansion,
    z_direct,
    z_staircase,
    z_sum,
)

from helpers import loglog_slope, staircase_remainders
from oracles import naive_z


def test_zspec_validates_length():
    with pytest.raises(ValueError):
        ZSpec(2, (1,))
    assert ZSpec.staircase(3, 2).alphas == (2, 1, 0)


def test_z_direct_examples():
    assert z_direct(ZSpec(0, ()), 0.7) == pytest.approx(math.exp(-0.7), rel=1e-15)
    for t in (0.05, 0.3, 2.0):
        assert z_direct(ZSpec(1, (0,)), t) == pytest.approx(-math.log(-math.expm1(-t)), abs=1e-12)
    assert abs(z_direct(ZSpec(2, (1, 0)), 1.0) - naive_z((1, 0), 1.0, 60)) < 1e-12


@pytest.mark.parametrize("alphas,t", [((1, 1), 0.5), ((2, 1), 0.7), ((F(1, 2), F(-3, 2)), 0.4), ((3,), 0.3)])
def test_z_direct_against_naive_sum(alphas, t):
    spec = ZSpec(len(alphas), alphas)
    ref = naive_z([float(a) for a in alphas], t, 400)
    assert abs(z_direct(spec, t, 1e-12) - ref) < 1e-11 * max(1.0, ref)


def test_z_direct_rejects_bad_input():
    with pytest.raises(ValueError):
        z_direct(ZSpec(1, (0,)), 0.0)
    with pytest.raises(ValueError):
        z_direct(ZSpec(1, (0,)), 1.0, eps=0)


def test_z_direct_extended_precision_agrees():
    spec = ZSpec.staircase(3, 3)
    lo = z_direct(spec, 0.3, 1e-13)
    with MP.workdps(50):
        hi = z_direct(spec, 0.3, 1e-45, dps=50)
    assert abs(hi - lo) < 1e-13 * lo


def test_terms_used_grows_as_t_shrinks():
    spec = ZSpec.staircase(2, 2)
    assert z_sum(spec, 0.05)[1] > z_sum(spec, 0.5)[1]


def test_weights_are_divisor_convolutions():
    w = dirichlet_weights((F(2), F(1)), 12)
    sigma = [0] + [sum(d for d in range(1, n + 1) if n % d == 0) for n in range(1, 13)]
    assert [round(x) for x in w] == sigma


def test_c_coeff_examples():
    for ell in range(2, 7):
        assert c_coeff(ZSpec.staircase(ell, ell), -ell, 0) == pytest.approx(float(k_ell(ell)), rel=1e-14)
    assert float(c_coeff(ZSpec.staircase(2, 1), 0, 1)) == pytest.approx(-0.5, rel=1e-15)
    # single sum with exponent 0: Z = -ln(1 - e^{-t}) = -ln t + ..., so the (-ln t) coefficient is 1
    assert float(c_coeff(ZSpec(1, (0,)), 0, 1)) == pytest.approx(1.0, rel=1e-15)
    # with exponent 1 the factor z*zeta(z) has no constant term, so nothing survives
    assert c_coeff(ZSpec(1, (1,)), 0, 1) == 0
    assert c_coeff(ZSpec(2, (1, 0)), 0, 5) == 0


def test_staircase_expansion_examples():
    e = staircase_expansion(2, 1, 3)
    assert [(a, b) for a, b, _ in e] == [(-1, 0), (0, 1), (0, 0), (1, 0)]
    vals = [float(c) for _, _, c in e]
    assert vals == pytest.approx([math.pi**2 / 6, -0.5, -0.5 * math.log(2 * math.pi), -1 / 24], rel=1e-15)

    e = staircase_expansion(2, 2, 5)
    assert [(a, b) for a, b, _ in e] == [(-2, 0), (-1, 0), (0, 0)]
    assert [float(c) for _, _, c in e] == pytest.approx([math.pi**2 / 6, -0.5, 1 / 24], rel=1e-15)

    e = staircase_expansion(3, 2, 4)
    z2, z3 = zeta(2), zeta(3)
    ref = {
        (-2, 0): z2 * z3,
        (-1, 0): zeta(0) * z2,
        (0, 1): zeta(-1) * zeta(0),
        (0, 0): zeta_deriv(-1) * zeta(0) + zeta(-1) * zeta_deriv(0),
    }
    assert {(int(a), b) for a, b, _ in e} == set(ref)
    for a, b, c in e:
        assert abs(c - ref[(int(a), b)]) < 1e-30


def test_staircase_top_terms():
    for ell in range(2, 7):
        e = staircase_expansion(ell, ell, 0)
        assert e.terms[0][0] == -ell
        assert abs(e.terms[0][2] - k_ell(ell)) < 1e-30


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=5), st.integers(min_value=-3, max_value=7))
def test_residue_formula_matches_closed_forms(ell, m):
    spec = ZSpec.staircase(ell, m)
    N = 4
    general = residue_expansion(spec, N)
    closed = staircase_expansion(ell, m, N)
    for e in (general, closed):
        for _, b, _ in e:
            assert b <= 1
    keys = {(a, b) for a, b, _ in general} | {(a, b) for a, b, _ in closed}
    for a, b in keys:
        assert abs(general.coeff(a, b) - closed.coeff(a, b)) < 1e-28
        assert abs(staircase_coeff(ell, m, int(a), b) - c_coeff(spec, a, b)) < 1e-28


def test_expansion_ordering_and_merge():
    e = AsymptoticExpansion([(1, 0, 2.0), (0, 0, 1.0), (0, 1, 3.0), (0, 0, 4.0)])
    assert [(a, b) for a, b, _ in e] == [(0, 1), (0, 0), (1, 0)]
    assert e.coeff(0, 0) == 5.0


def test_eval_expansion_trivial():
    assert eval_expansion(AsymptoticExpansion([]), 0.3) == 0
    assert eval_expansion(AsymptoticExpansion([(0, 0, 5.0)]), 0.3) == 5.0
    with pytest.raises(ValueError):
        eval_expansion(AsymptoticExpansion([]), 0.0)


def test_z1_two_expansion_at_point_one():
    e = staircase_expansion(2, 1, 1)
    assert len(e) == 4
    assert abs(z_staircase(2, 1, 0.1) - float(eval_expansion(e, 0.1))) < 1e-8


@pytest.mark.parametrize(
    "ell,m,ts,dps",
    [
        (2, 1, [0.8, 0.4, 0.2], 120),
        (2, 2, [0.8, 0.4, 0.2], 120),
        (3, 2, [0.2, 0.1, 0.05, 0.025, 0.0125], 150),
        (3, 3, [0.2, 0.1, 0.05, 0.025, 0.0125], 150),
        (4, 3, [0.2, 0.1, 0.05, 0.025, 0.0125], 70),
        (4, 4, [0.2, 0.1, 0.05, 0.025, 0.0125], 70),
        (5, 4, [0.2, 0.1, 0.05, 0.025, 0.0125], 60),
        (5, 5, [0.2, 0.1, 0.05, 0.025, 0.0125], 60),
    ],
)
def test_remainder_decays_faster_than_truncation_order(ell, m, ts, dps):
    N = 3
    rem, floors = staircase_remainders(ell, m, N, ts, dps)
    assert all(r > f for r, f in zip(rem, floors)), "remainder lost in rounding"
    assert loglog_slope(ts, rem) >= N + 0.5
    assert rem[-1] / ts[-1] ** N < rem[0] / ts[0] ** N


@pytest.mark.parametrize("ell", [2, 3, 4])
@pytest.mark.parametrize("m_offset", [-1, 0])
@pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
def test_log_convexity_in_m(ell, m_offset, t):
    m = ell + m_offset
    lo, mid, hi = (z_staircase(ell, j, t) for j in (m - 1, m, m + 1))
    assert lo * hi - mid * mid > 0
    assert (lo * hi - mid * mid) / (lo * hi) > 1e-12


@pytest.mark.parametrize("ell,m", [(2, 1), (2, 2), (3, 2), (4, 3), (5, 5)])
@pytest.mark.parametrize("t", [0.3, 1.5])
def test_derivative_relation(ell, m, t):
    step = 1e-4 * t
    fd = (z_staircase(ell, m, t + step) - z_staircase(ell, m, t - step)) / (2 * step)
    assert fd == pytest.approx(-z_staircase(ell, m + 1, t), rel=1e-6)


@pytest.mark.parametrize("ell", [2, 3, 4, 5])
def test_h_shape(ell):
    assert 0.99 <= h(ell, 1e-4) / 1e-4 <= 1.01
    assert h(ell, 50) > (ell - 1) * (1 - 1e-6)
    assert h(ell, 1) < h(ell, 2)
    ts = [0.01, 0.1, 0.5, 1, 3, 10]
    vals = [h(ell, t) for t in ts]
    assert all(0 < v < ell - 1 for v in vals)
    assert vals == sorted(vals)
    assert all(h_prime(ell, t) > 0 for t in ts)


@pytest.mark.parametrize("ell", [2, 3, 4, 5])
def test_h_inverse_round_trip(ell):
    for t in (0.01, 0.3, 2.0):
        v = h(ell, t)
        back = h_inverse(ell, v)
        assert back == pytest.approx(t, abs=1e-10)
        assert abs(h(ell, back) - v) <= 1e-12 * v


def test_h_inverse_limits():
    assert h_inverse(2, 1e-5) == pytest.approx(1e-5, rel=1e-3)
    far = h_inverse(2, 0.999)
    assert math.isfinite(far) and far > 5


@pytest.mark.parametrize("v", [0.0, -0.1, 1.0, 1.5])
def test_h_inverse_rejects_out_of_range(v):
    with pytest.raises(ValueError):
        h_inverse(2, v)


def test_h_derivative_formula():
    for ell in (2, 3, 4):
        t, step = 0.7, 1e-5
        fd = (h(ell, t + step) - h(ell, t - step)) / (2 * step)
        assert h_prime(ell, t) == pytest.approx(fd, rel=1e-6)


def test_mixed_probe_is_finite():
    v = mixed_log_convexity_probe(ZSpec(3, (3, 2, 1)), 0, 1, 0.5)
    assert math.isfinite(v)
