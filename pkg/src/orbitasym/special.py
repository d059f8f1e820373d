"""Riemann zeta, its derivatives, Stieltjes constants and Gamma/zeta Taylor data.

Everything is evaluated in a private extended-precision mpmath context
(:data:`MP`, 40 significant digits by default) so that the constants
pipeline keeps headroom; callers wanting doubles just ``float()`` the result.

zeta and its derivatives come from the Euler-Maclaurin formula::

    zeta(s) = sum_{n<M} n**-s + M**(1-s)/(s-1) + M**-s/2
              + sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * M**(1-s-2j)

differentiated term by term in ``s``.  Only the mpmath number type and
elementary functions (exp, log, pi) are used here; the library's own zeta is
never consulted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath.ctx_mp import MPContext

from .series import RationalSeries, ps_exp

MP = MPContext()
MP.dps = 40

STIELTJES_MAX = 12


class PoleError(ZeroDivisionError):
    """zeta was evaluated at its pole s = 1."""


@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple:
    """Exact B_0..B_n (convention B_1 = -1/2) from sum_j C(m+1, j) B_j = 0."""
    bs = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(math.comb(m + 1, j) * bs[j] for j in range(m))
        bs.append(-s / (m + 1))
    return tuple(bs)


def bernoulli(n: int) -> Fraction:
    return bernoulli_numbers(n)[n]


def _as_mpf(x):
    if isinstance(x, Fraction):
        return MP.mpf(x.numerator) / x.denominator
    return MP.mpf(x)


def _is_int(s) -> bool:
    if isinstance(s, Fraction):
        return s.denominator == 1
    return float(s) == math.floor(float(s)) and MP.mpf(s) == int(math.floor(float(s)))


class ZetaEngine:
    """Euler-Maclaurin evaluator for zeta^(k)(s) at real s != 1.

    ``em_terms`` is the direct-summation cutoff M.  Correction terms are added
    until they drop below the working precision (at least ``min_corrections``
    of them, i.e. B_2..B_20 by default), which keeps negative arguments
    accurate where the fixed B_2..B_20 tail would not be.
    """

    def __init__(self, em_terms: int = 50, min_corrections: int = 10, max_corrections: int = 140):
        self.em_terms = em_terms
        self.min_corrections = min_corrections
        self.max_corrections = max_corrections
        self._cache: dict = {}

    @property
    def bernoulli_cache(self) -> tuple:
        return bernoulli_numbers(2 * self.max_corrections)

    def _guard_digits(self, s) -> int:
        # n**-s for n < M reaches M**(1-s): that many digits cancel when s < 0
        sf = float(s)
        lost = max(0.0, (1 - sf) * math.log10(self.em_terms)) if sf < 0 else 0.0
        return int(lost) + 15

    def derivative(self, s, k: int = 0):
        """k-th derivative of zeta at s (exact Bernoulli value for k=0, s<=0 integer)."""
        if k < 0:
            raise ValueError("derivative order must be >= 0")
        key = (Fraction(s), k, MP.prec) if isinstance(s, (int, float, Fraction)) else None
        if key is not None and key in self._cache:
            return self._cache[key]
        if s == 1:
            raise PoleError("zeta has a pole at s = 1")
        if k == 0 and _is_int(s) and s <= 0:
            n = -int(s)
            val = _as_mpf((-1) ** n * bernoulli(n + 1) / (n + 1))
        else:
            with MP.extradps(self._guard_digits(s)):
                val = +self._em(_as_mpf(s), k)
        if key is not None:
            self._cache[key] = val
        return val

    def _em(self, s, k: int):
        M = self.em_terms
        lnM = MP.log(M)
        eps = MP.mpf(2) ** (-MP.prec)
        total = MP.mpf(0)
        for n in range(2, M):
            ln = MP.log(n)
            total += (-ln) ** k * MP.exp(-s * ln)
        if k == 0:
            total += 1
        Ms = MP.exp((1 - s) * lnM)  # M**(1-s)
        # d^k/ds^k  M**(1-s)/(s-1)
        for i in range(k + 1):
            total += math.comb(k, i) * (-lnM) ** (k - i) * Ms * (-1) ** i * math.factorial(i) / (s - 1) ** (i + 1)
        total += (-lnM) ** k * Ms / M / 2
        # Taylor coefficients of P_j(s+z) = prod_{r=0}^{2j-2} (s+r+z) up to z^k
        poly = [MP.mpf(1)] + [MP.mpf(0)] * k
        poly = _poly_mul_linear(poly, s)
        bs = self.bernoulli_cache
        scale = abs(total) + abs(Ms)
        prev = None
        for j in range(1, self.max_corrections + 1):
            if j > 1:
                poly = _poly_mul_linear(_poly_mul_linear(poly, s + 2 * j - 3), s + 2 * j - 2)
            base = Ms * MP.mpf(M) ** (-2 * j)
            # sum_i C(k,i) P^(i)(s) (-lnM)^(k-i), P^(i)(s) = i! poly[i]
            dsum = MP.mpf(0)
            for i in range(k + 1):
                dsum += math.comb(k, i) * math.factorial(i) * poly[i] * (-lnM) ** (k - i)
            term = _as_mpf(bs[2 * j]) / math.factorial(2 * j) * dsum * base
            total += term
            size = abs(term)
            if j >= self.min_corrections and j > (abs(float(s)) + k) / 2 + 2:
                if size < eps * scale or (prev is not None and size > prev and size < 1e-5 * scale):
                    break
            prev = size
        return total


def _poly_mul_linear(poly: list, c) -> list:
    """Multiply a truncated polynomial in z by (c + z)."""
    out = [c * poly[0]]
    for i in range(1, len(poly)):
        out.append(c * poly[i] + poly[i - 1])
    return out


ENGINE = ZetaEngine()


def zeta(s):
    """Riemann zeta at real s != 1."""
    return ENGINE.derivative(s, 0)


def zeta_deriv(s, k: int = 1):
    """k-th derivative of zeta at real s != 1 (default first derivative)."""
    return ENGINE.derivative(s, k)


@lru_cache(maxsize=None)
def _stieltjes(k: int, prec: int):
    M = ENGINE.em_terms
    with MP.extradps(10 + 2 * k):
        lnM = MP.log(M)
        total = MP.mpf(0)
        for n in range(2, M):
            total += MP.log(n) ** k / n
        if k == 0:
            total += 1
        total -= lnM ** (k + 1) / (k + 1)
        total += lnM**k / M / 2
        # f^(r)(x) = x^(-1-r) P_r(ln x) with P_0(L) = L^k,
        # P_{r+1}(L) = -(r+1) P_r(L) + P_r'(L)
        poly = [MP.mpf(0)] * k + [MP.mpf(1)]
        bs = bernoulli_numbers(2 * ENGINE.max_corrections)
        eps = MP.mpf(2) ** (-MP.prec)
        for r in range(0, 2 * ENGINE.max_corrections):
            if r % 2 == 1:
                j = (r + 1) // 2
                val = sum(c * lnM**i for i, c in enumerate(poly)) * MP.mpf(M) ** (-1 - r)
                term = _as_mpf(bs[2 * j]) / math.factorial(2 * j) * val
                total -= term
                if j >= ENGINE.min_corrections and abs(term) < eps:
                    break
            deriv = [(i + 1) * poly[i + 1] for i in range(len(poly) - 1)] + [MP.mpf(0)]
            poly = [-(r + 1) * poly[i] + deriv[i] for i in range(len(poly))]
        return +total


def stieltjes(k: int):
    """Stieltjes constant gamma_k for 0 <= k <= 12."""
    if not 0 <= k <= STIELTJES_MAX:
        raise ValueError(f"Stieltjes index must be in 0..{STIELTJES_MAX}")
    return _stieltjes(k, MP.prec)


def euler_gamma():
    return stieltjes(0)


def k_ell(ell: int):
    """(ell-1)! zeta(2) zeta(3) ... zeta(ell); equals 1 for ell = 1."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    out = MP.mpf(math.factorial(ell - 1))
    for j in range(2, ell + 1):
        out *= zeta(j)
    return out


# ---------------------------------------------------------------------------
# Taylor data for z*Gamma(u+z) and z*zeta(u+z)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentCoeffs:
    """``coeffs[k] = [z**k] z*F(u+z)`` for F in {gamma, zeta}, k = 0..K."""

    center: object
    kind: str
    coeffs: tuple

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)


@lru_cache(maxsize=None)
def _gamma_one_taylor(K: int, prec: int) -> tuple:
    """Taylor coefficients of Gamma(1+z) = exp(-gamma z + sum_{m>=2} (-1)^m zeta(m) z^m/m)."""
    c = [MP.mpf(0), -euler_gamma()]
    for m in range(2, K + 1):
        c.append((-1) ** m * zeta(m) / m)
    return ps_exp(RationalSeries(c[: K + 1], K)).coeffs


def _poly_mul(a: list, b: list, K: int) -> list:
    out = [MP.mpf(0)] * (K + 1)
    for i, x in enumerate(a[: K + 1]):
        if x:
            for j, y in enumerate(b[: K + 1 - i]):
                out[i + j] += x * y
    return out


def gamma_taylor(u, K: int) -> LaurentCoeffs:
    """Coefficients ``[z**k] z*Gamma(u+z)`` for k = 0..K."""
    if K < 0:
        raise ValueError("K must be >= 0")
    g1 = list(_gamma_one_taylor(max(K, 1), MP.prec))
    if _is_int(u) and u <= 0:
        a = -int(u)
        # (-1)^a/a! * Gamma(1+z) / prod_{r=1}^{a} (1 - z/r)
        series = g1[: K + 1] + [MP.mpf(0)] * (K + 1 - len(g1[: K + 1]))
        for r in range(1, a + 1):
            geo = [MP.mpf(1) / MP.mpf(r) ** i for i in range(K + 1)]
            series = _poly_mul(series, geo, K)
        pref = MP.mpf((-1) ** a) / math.factorial(a)
        coeffs = [pref * c for c in series]
    else:
        if _is_int(u):
            # Gamma(N+z) = Gamma(1+z) prod_{r=1}^{N-1} (r+z)
            taylor = g1[:K] + [MP.mpf(0)] * max(0, K - len(g1))
            for r in range(1, int(u)):
                taylor = _poly_mul(taylor, [MP.mpf(r), MP.mpf(1)], K - 1) if K else taylor
        else:
            taylor = _gamma_taylor_generic(_as_mpf(u), K)
        coeffs = [MP.mpf(0)] + list(taylor[:K])
    return LaurentCoeffs(u, "gamma", tuple(coeffs[: K + 1]))


def _gamma_taylor_generic(u, K: int) -> list:
    # log Gamma(u+z) = log Gamma(u) + sum_{m>=1} psi^(m-1)(u) z^m / m!
    if K == 0:
        return []
    logc = [MP.mpf(0)] + [MP.psi(m - 1, u) / math.factorial(m) for m in range(1, K)]
    ser = ps_exp(RationalSeries(logc, K - 1)).coeffs
    g = MP.gamma(u)
    return [g * c for c in ser]


def zeta_taylor(u, K: int) -> LaurentCoeffs:
    """Coefficients ``[z**k] z*zeta(u+z)`` for k = 0..K."""
    if K < 0:
        raise ValueError("K must be >= 0")
    if u == 1:
        coeffs = [MP.mpf(1)]
        for k in range(1, K + 1):
            coeffs.append(MP.mpf((-1) ** (k - 1)) / math.factorial(k - 1) * stieltjes(k - 1))
    else:
        coeffs = [MP.mpf(0)]
        for k in range(1, K + 1):
            coeffs.append(zeta_deriv(u, k - 1) / math.factorial(k - 1))
    return LaurentCoeffs(u, "zeta", tuple(coeffs))


def named_values() -> dict:
    """The special values dumped by ``constants --special``."""
    out = {
        "zeta(0)": zeta(0),
        "zeta'(0)": zeta_deriv(0),
        "zeta'(-1)": zeta_deriv(-1),
        "zeta'(-2)": zeta_deriv(-2),
    }
    for k in range(5):
        out[f"gamma_{k}"] = stieltjes(k)
    for ell in range(2, 7):
        out[f"K_{ell}"] = k_ell(ell)
    return out
