from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitasym.series import (
    RationalSeries as S,
    SeriesError,
    exp_series,
    ps_add,
    ps_compose,
    ps_exp,
    ps_inv,
    ps_log,
    ps_mul,
    ps_revert,
)


def z(order):
    return S.variable(order)


def test_add_examples():
    assert ps_add(S([1, 1]), S([1, -1])) == S([2, 0])
    s = S([3, F(1, 7), 5])
    assert ps_add(S.zero(2), s) == s
    assert ps_add(S([1, F(1, 2)]), S([0, F(1, 2)])) == S([1, 1])


def test_add_uses_min_order():
    assert ps_add(S([1, 2, 3]), S([1, 1])).order == 1


def test_mul_examples():
    assert ps_mul(S([1, 1], 2), S([1, -1], 2)) == S([1, 0, -1])
    assert ps_mul(S([1, 1]), S([1, 1])) == S([1, 2])
    e = exp_series(6)
    em = S([c * (-1) ** i for i, c in enumerate(e.coeffs)])
    assert ps_mul(e, em) == S.one(6)


def test_exp_examples():
    assert ps_exp(S.zero(4)) == S.one(4)
    assert ps_exp(z(4)) == S([1, 1, F(1, 2), F(1, 6), F(1, 24)])
    assert ps_exp(S([0, 1, 1], 3)) == S([1, 1, F(3, 2), F(7, 6)])


def test_exp_rejects_constant():
    with pytest.raises(SeriesError):
        ps_exp(S([1, 1]))


def test_log_examples():
    assert ps_log(S.one(3)) == S.zero(3)
    assert ps_log(S([1, 1], 3)) == S([0, 1, F(-1, 2), F(1, 3)])
    a = S([0, 1, 0, 2, 0])
    assert ps_log(ps_exp(a)) == a


def test_log_rejects_bad_constant():
    with pytest.raises(SeriesError):
        ps_log(S([2, 1]))


def test_compose_examples():
    f = S([3, F(1, 2), -1, 4])
    assert ps_compose(f, z(3)) == f
    assert ps_compose(S([1, 1], 3), S([0, 0, 1], 3)) == S([1, 0, 1, 0])
    assert ps_compose(exp_series(4), ps_log(S([1, 1], 4))) == S([1, 1, 0, 0, 0])


def test_compose_rejects_constant_inner():
    with pytest.raises(SeriesError):
        ps_compose(S([1, 1]), S([1, 1]))


def test_revert_examples():
    assert ps_revert(z(5)) == z(5)
    assert ps_revert(S([0, 1, -1, 0])) == S([0, 1, 1, 2])
    a = S([0, 1, 1, 0, 0, 0])
    assert ps_compose(ps_revert(a), a) == z(5)


def test_revert_rejects_bad_normalisation():
    with pytest.raises(SeriesError):
        ps_revert(S([0, 2, 1]))
    with pytest.raises(SeriesError):
        ps_revert(S([1, 1, 1]))


def test_floats_refused():
    with pytest.raises(TypeError):
        S([1.0, 2])


def test_inverse():
    a = S([2, 1, F(-3, 5), 7])
    assert ps_mul(a, ps_inv(a)) == S.one(3)


def test_truncate_never_extends():
    s = S([1, 2, 3])
    assert s.truncate(1) == S([1, 2])
    with pytest.raises(SeriesError):
        s.truncate(5)


small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def series(draw, constant=None, linear=None, max_order=7):
    order = draw(st.integers(min_value=1, max_value=max_order))
    coeffs = draw(st.lists(small, min_size=order + 1, max_size=order + 1))
    if constant is not None:
        coeffs[0] = F(constant)
    if linear is not None:
        coeffs[1] = F(linear)
    return S(coeffs, order)


@settings(max_examples=60, deadline=None)
@given(series(constant=0))
def test_log_of_exp_is_identity(a):
    assert ps_log(ps_exp(a)) == a


@settings(max_examples=60, deadline=None)
@given(series(constant=1))
def test_exp_of_log_is_identity(a):
    assert ps_exp(ps_log(a)) == a


@settings(max_examples=60, deadline=None)
@given(series(constant=0, linear=1))
def test_reversion_is_two_sided_inverse(a):
    b = ps_revert(a)
    assert ps_compose(b, a) == z(a.order)
    assert ps_compose(a, b) == z(a.order)


@settings(max_examples=40, deadline=None)
@given(series(), series())
def test_product_is_commutative(a, b):
    assert ps_mul(a, b) == ps_mul(b, a)


@settings(max_examples=40, deadline=None)
@given(series(constant=0), series(constant=0))
def test_exp_turns_sums_into_products(a, b):
    lhs = ps_exp(ps_add(a, b))
    rhs = ps_mul(ps_exp(a), ps_exp(b))
    assert lhs == rhs
