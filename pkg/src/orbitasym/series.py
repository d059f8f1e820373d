"""Truncated power series with exact coefficients.

A :class:`RationalSeries` stores ``coeffs[0..order]`` and represents a series
known modulo ``z**(order + 1)``.  Integer coefficients are promoted to
:class:`fractions.Fraction`, so every operation stays exact.  The same code
also runs over any other field whose elements support ``+ - * /`` (the
constants pipeline feeds it extended-precision floats); Python floats are
refused to keep accidental rounding out of the exact paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


class SeriesError(ValueError):
    """Raised when an operation's normalisation precondition is violated."""


def _coerce(c):
    if isinstance(c, bool):
        return Fraction(int(c))
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        raise TypeError("float coefficients are not allowed; use Fraction or an mpf")
    return c


@dataclass(frozen=True)
class RationalSeries:
    coeffs: tuple
    order: int

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [_coerce(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise SeriesError("order must be >= 0")
        zero = cs[0] * 0 if cs else Fraction(0)
        cs = (cs + [zero] * (order + 1 - len(cs)))[: order + 1]
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "RationalSeries":
        return cls([0], order)

    @classmethod
    def one(cls, order: int) -> "RationalSeries":
        return cls([1], order)

    @classmethod
    def variable(cls, order: int) -> "RationalSeries":
        """The series ``z``."""
        return cls([0, 1], order)

    # helpers ------------------------------------------------------------
    def __getitem__(self, i: int):
        return self.coeffs[i]

    def __len__(self) -> int:
        return self.order + 1

    def truncate(self, order: int) -> "RationalSeries":
        if order > self.order:
            raise SeriesError("cannot extend a truncated series")
        return RationalSeries(self.coeffs[: order + 1], order)

    def _zero(self):
        return self.coeffs[0] * 0

    def __add__(self, other):
        return ps_add(self, _as_series(other, self.order))

    __radd__ = __add__

    def __sub__(self, other):
        return ps_add(self, ps_scale(_as_series(other, self.order), -1))

    def __rsub__(self, other):
        return ps_add(_as_series(other, self.order), ps_scale(self, -1))

    def __neg__(self):
        return ps_scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, RationalSeries):
            return ps_mul(self, other)
        return ps_scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RationalSeries):
            return ps_mul(self, ps_inv(other))
        return RationalSeries([c / _coerce(other) for c in self.coeffs], self.order)

    def __pow__(self, k: int):
        if k < 0:
            return ps_inv(self) ** (-k)
        out = RationalSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                out = ps_mul(out, base)
            base = ps_mul(base, base)
            k >>= 1
        return out

    def __call__(self, inner: "RationalSeries") -> "RationalSeries":
        return ps_compose(self, inner)

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"RationalSeries([{terms}], order={self.order})"


def _as_series(x, order: int) -> RationalSeries:
    if isinstance(x, RationalSeries):
        return x
    return RationalSeries([x], order)


def ps_add(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    n = min(a.order, b.order)
    return RationalSeries([a.coeffs[i] + b.coeffs[i] for i in range(n + 1)], n)


def ps_scale(a: RationalSeries, c) -> RationalSeries:
    c = _coerce(c)
    return RationalSeries([c * x for x in a.coeffs], a.order)


def ps_mul(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for i in range(n + 1):
        s = ac[0] * bc[i]
        for j in range(1, i + 1):
            s += ac[j] * bc[i - j]
        out.append(s)
    return RationalSeries(out, n)


def ps_inv(a: RationalSeries) -> RationalSeries:
    """Multiplicative inverse; ``a`` must have a nonzero constant term."""
    a0 = a.coeffs[0]
    if a0 == 0:
        raise SeriesError("series with zero constant term is not invertible")
    out = [1 / a0]
    for i in range(1, a.order + 1):
        s = a.coeffs[1] * out[i - 1]
        for j in range(2, i + 1):
            s += a.coeffs[j] * out[i - j]
        out.append(-s / a0)
    return RationalSeries(out, a.order)


def ps_exp(a: RationalSeries) -> RationalSeries:
    """exp of a series without constant term, from ``(exp a)' = a' exp a``."""
    if a.coeffs[0] != 0:
        raise SeriesError("ps_exp needs a zero constant term")
    ac = a.coeffs
    out = [ac[0] * 0 + 1]
    for n in range(1, a.order + 1):
        s = ac[1] * out[n - 1]
        for k in range(2, n + 1):
            s += k * ac[k] * out[n - k]
        out.append(s / n)
    return RationalSeries(out, a.order)


def ps_log(a: RationalSeries) -> RationalSeries:
    """log of a series with constant term 1."""
    if a.coeffs[0] != 1:
        raise SeriesError("ps_log needs constant term 1")
    ac = a.coeffs
    out = [ac[0] * 0]
    for n in range(1, a.order + 1):
        s = n * ac[n]
        for k in range(1, n):
            s -= k * out[k] * ac[n - k]
        out.append(s / n)
    return RationalSeries(out, a.order)


def ps_compose(outer: RationalSeries, inner: RationalSeries) -> RationalSeries:
    """``outer(inner(z))``; ``inner`` must have a zero constant term."""
    if inner.coeffs[0] != 0:
        raise SeriesError("inner series must have a zero constant term")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    acc = RationalSeries([outer.coeffs[n]], n)
    for i in range(n - 1, -1, -1):
        acc = ps_mul(acc, inner)
        acc = RationalSeries((acc.coeffs[0] + outer.coeffs[i],) + acc.coeffs[1:], n)
    return acc


def ps_revert(a: RationalSeries) -> RationalSeries:
    """Compositional inverse of ``a = z + O(z**2)``.

    Solves ``sum_j b_j a(z)**j = z`` one order at a time; the system is
    unit lower-triangular because ``[z**j] a**j = 1``.
    """
    if a.order < 1 or a.coeffs[0] != 0 or a.coeffs[1] != 1:
        raise SeriesError("ps_revert needs a series of the form z + O(z^2)")
    n = a.order
    powers = [None, a]
    for j in range(2, n + 1):
        powers.append(ps_mul(powers[-1], a))
    zero = a._zero()
    b = [zero, zero + 1]
    for m in range(2, n + 1):
        s = zero
        for j in range(1, m):
            s += b[j] * powers[j].coeffs[m]
        b.append(-s)
    return RationalSeries(b, n)


def from_function(f, order: int) -> RationalSeries:
    """Series with coefficients ``f(0), ..., f(order)``."""
    return RationalSeries([f(i) for i in range(order + 1)], order)


def exp_series(order: int) -> RationalSeries:
    out, c = [], Fraction(1)
    for i in range(order + 1):
        out.append(c)
        c /= i + 1
    return RationalSeries(out, order)

