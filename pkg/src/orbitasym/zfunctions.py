"""The multiple sums Z^{[ell]}_{alpha}(t) and their t -> 0+ expansions.

``Z(t) = sum_{d_1..d_ell >= 1} d_1**(alpha_1-1) ... d_ell**(alpha_ell-1) exp(-d_1...d_ell t)``

Direct evaluation groups terms by the product ``D = d_1 ... d_ell``; the
weights ``w(D)`` are an ell-fold Dirichlet convolution of power laws.  The
asymptotic expansion is available in two independent forms: the general
residue formula (:func:`c_coeff`, :func:`residue_expansion`) and the closed
forms for staircase exponents (:func:`staircase_expansion`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .special import MP, gamma_taylor, zeta, zeta_deriv, zeta_taylor

MAX_TERMS = 20_000_000


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class ZSpec:
    ell: int
    alphas: tuple

    def __init__(self, ell: int, alphas=()):
        alphas = tuple(_frac(a) for a in alphas)
        if ell < 0 or len(alphas) != ell:
            raise ValueError(f"need exactly ell={ell} exponents, got {len(alphas)}")
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "alphas", alphas)

    @classmethod
    def staircase(cls, ell: int, m: int) -> "ZSpec":
        """Z_m^{[ell]}: exponents m, m-1, ..., m-ell+1."""
        return cls(ell, tuple(m - j for j in range(ell)))


# ---------------------------------------------------------------------------
# direct summation
# ---------------------------------------------------------------------------

def _convolve_float(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    # every product d*q <= N has min(d, q) <= sqrt(N): loop over the small factor
    n = len(f) - 1
    out = np.zeros(n + 1, dtype=f.dtype)
    r = math.isqrt(n)
    for i in range(1, r + 1):
        hi = n // i
        out[i * i :: i][: hi - i + 1] += f[i] * g[i : hi + 1]
        if hi > i:
            out[i * (i + 1) :: i][: hi - i] += g[i] * f[i + 1 : hi + 1]
    return out


def _power_array(e: Fraction, n: int, exact: bool) -> np.ndarray:
    if exact:
        arr = np.empty(n + 1, dtype=object)
        arr[0] = MP.mpf(0)
        ef = MP.mpf(e.numerator) / e.denominator
        for i in range(1, n + 1):
            if e.denominator == 1 and e >= 0:
                arr[i] = MP.mpf(i ** int(e))
            elif e.denominator == 1:
                arr[i] = MP.mpf(1) / MP.mpf(i ** int(-e))
            else:
                arr[i] = MP.mpf(i) ** ef
        return arr
    arr = np.zeros(n + 1)
    arr[1:] = np.arange(1, n + 1, dtype=float) ** float(e)
    return arr


_WEIGHTS: dict = {}


def dirichlet_weights(alphas: tuple, n: int, exact: bool = False) -> np.ndarray:
    """w(D) for D = 0..n, ``w(D) = sum_{d_1...d_ell = D} prod d_j**(alpha_j - 1)``.

    Float arrays are cached per exponent tuple and grown geometrically;
    ``exact=True`` returns an object array of extended-precision values.
    """
    alphas = tuple(_frac(a) for a in alphas)
    key = (alphas, exact, MP.prec if exact else None)
    cached = _WEIGHTS.get(key)
    if cached is not None and len(cached) > n:
        return cached[: n + 1]
    size = n if cached is None else max(n, 2 * (len(cached) - 1))
    if not alphas:
        w = np.zeros(size + 1, dtype=object if exact else float)
        if size >= 1:
            w[1] = MP.mpf(1) if exact else 1.0
    else:
        w = _power_array(alphas[0] - 1, size, exact)
        for a in alphas[1:]:
            w = _convolve_float(w, _power_array(a - 1, size, exact))
    _WEIGHTS[key] = w
    return w[: n + 1]


def _cutoff(spec: ZSpec, t: float, eps: float) -> int:
    """Smallest D0 with sum_{D > D0} w(D) e^{-Dt} <= eps / 10.

    Uses ``|w(D)| <= D**p`` with ``p = ell - 1 + max(alpha_j - 1, 0)`` and, for
    D0 >= 2p/t, a geometric tail of ratio at most ``e^{-t/2}``.
    """
    if not spec.alphas:
        return 1
    p = spec.ell - 1 + max(0.0, max(float(a) - 1 for a in spec.alphas))
    log_target = math.log(eps / 10)
    log_geo = -math.log(-math.expm1(-t / 2))

    def log_tail(d0: float) -> float:
        return p * math.log(d0 + 1) - (d0 + 1) * t + log_geo

    lo = max(1.0, 2 * p / t)
    if log_tail(lo) <= log_target:
        return int(math.ceil(lo))
    hi = lo
    while log_tail(hi) > log_target:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) / 2
        if log_tail(mid) > log_target:
            lo = mid
        else:
            hi = mid
    return int(math.ceil(hi))


def z_sum(spec: ZSpec, t: float, eps: float = 1e-12, dps: int | None = None):
    """Direct value of Z and the number of grouped terms used."""
    if t <= 0:
        raise ValueError("t must be > 0")
    if eps <= 0:
        raise ValueError("eps must be > 0")
    if spec.ell == 0:
        return (MP.exp(-MP.mpf(t)) if dps else math.exp(-t)), 1
    d0 = _cutoff(spec, float(t), float(eps))
    if d0 > MAX_TERMS:
        raise ValueError(f"t={t} needs {d0} terms (> {MAX_TERMS}); use the expansion instead")
    if dps is None:
        w = dirichlet_weights(spec.alphas, d0)
        e = np.exp(-t * np.arange(d0 + 1, dtype=float))
        return float(np.sum(w * e)), d0
    with MP.workdps(dps):
        w = dirichlet_weights(spec.alphas, d0, exact=True)
        tt = MP.mpf(t)
        q = MP.exp(-tt)
        total, qd = MP.mpf(0), MP.mpf(1)
        for d in range(1, d0 + 1):
            qd *= q
            total += w[d] * qd
        return +total, d0


def z_direct(spec: ZSpec, t: float, eps: float = 1e-12, dps: int | None = None):
    """Z^{[ell]}_{alpha}(t) to absolute error ``eps``.

    Plain doubles by default; with ``dps`` the weights and the sum are carried
    at that many decimal digits and an mpf is returned.
    """
    return z_sum(spec, t, eps, dps)[0]


def z_staircase(ell: int, m: int, t: float, rel: float = 1e-17):
    """Z_m^{[ell]}(t) to relative accuracy ``rel``.

    A cheap partial sum over the bulk of the terms gives a lower bound for Z,
    which turns the relative target into an absolute one.
    """
    spec = ZSpec.staircase(ell, m)
    if ell == 0:
        return math.exp(-t)
    d1 = max(2, math.ceil(10 / t))
    if d1 > MAX_TERMS:
        raise ValueError(f"t={t} is too small for direct summation")
    w = dirichlet_weights(spec.alphas, d1)
    lower = float(np.sum(w * np.exp(-t * np.arange(d1 + 1, dtype=float))))
    return z_direct(spec, t, rel * lower)


# ---------------------------------------------------------------------------
# asymptotic expansions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticExpansion:
    """Terms ``coeff * t**a * (-ln t)**b``, sorted by a ascending then b descending."""

    terms: tuple  # of (a: Fraction, b: int, coeff)

    def __init__(self, terms=()):
        merged: dict = {}
        for a, b, c in terms:
            key = (_frac(a), int(b))
            merged[key] = merged.get(key, 0) + c
        ordered = sorted(merged.items(), key=lambda kv: (kv[0][0], -kv[0][1]))
        object.__setattr__(self, "terms", tuple((a, b, c) for (a, b), c in ordered))

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, a, b: int = 0):
        a = _frac(a)
        for aa, bb, c in self.terms:
            if aa == a and bb == b:
                return c
        return MP.mpf(0)

    def truncate(self, N) -> "AsymptoticExpansion":
        return AsymptoticExpansion([x for x in self.terms if x[0] <= N])

    def first(self, count: int) -> "AsymptoticExpansion":
        return AsymptoticExpansion(self.terms[:count])


def eval_expansion(e: AsymptoticExpansion, t):
    """Sum of ``coeff * t**a * (-ln t)**b``; mpf if any input is mpf."""
    if t <= 0:
        raise ValueError("t must be > 0")
    use_mp = not isinstance(t, float) or any(not isinstance(c, float) for _, _, c in e.terms)
    if not use_mp:
        lt = -math.log(t)
        return math.fsum(c * t ** float(a) * lt**b for a, b, c in e.terms)
    tt = MP.mpf(t)
    lt = -MP.log(tt)
    total = MP.mpf(0)
    for a, b, c in e.terms:
        total += c * tt ** (MP.mpf(a.numerator) / a.denominator) * lt**b
    return total


def _series_mul(a: list, b: list, K: int) -> list:
    out = [MP.mpf(0)] * (K + 1)
    for i in range(min(len(a), K + 1)):
        if a[i]:
            for j in range(min(len(b), K + 1 - i)):
                out[i + j] += a[i] * b[j]
    return out


def c_coeff(spec: ZSpec, a, b: int):
    """Coefficient of ``t**a (-ln t)**b`` from the residue formula.

    ``1/b! * [z**(ell-b)] z*Gamma(-a+z) * prod_j z*zeta(-a+1-alpha_j+z)``,
    i.e. the constrained sum over p + k_1 + ... + k_ell = ell - b.
    """
    ell = spec.ell
    if not 0 <= b <= ell:
        return MP.mpf(0)
    a = _frac(a)
    K = ell - b
    prod = list(gamma_taylor(-a, K).coeffs)
    for alpha in spec.alphas:
        prod = _series_mul(prod, list(zeta_taylor(-a + 1 - alpha, K).coeffs), K)
    return prod[K] / math.factorial(b)


def expansion_exponents(spec: ZSpec, N) -> list:
    """Candidate exponents a <= N: nonnegative integers and the -alpha_j."""
    N = _frac(N)
    cands = {Fraction(i) for i in range(0, math.floor(N) + 1)}
    cands |= {-al for al in spec.alphas if -al <= N}
    return sorted(cands)


def residue_expansion(spec: ZSpec, N, drop_below: float = 1e-30) -> AsymptoticExpansion:
    """All terms with a <= N, b = 0..ell, from :func:`c_coeff`."""
    terms = []
    for a in expansion_exponents(spec, N):
        for b in range(spec.ell + 1):
            c = c_coeff(spec, a, b)
            if abs(c) > drop_below:
                terms.append((a, b, c))
    return AsymptoticExpansion(terms)


def _zprod(js, a: int, m: int):
    out = MP.mpf(1)
    for j in js:
        out *= zeta(-a - m + j)
    return out


def staircase_coeff(ell: int, m: int, a: int, b: int):
    """Closed-form coefficient of ``t**a (-ln t)**b`` in Z_m^{[ell]}(t)."""
    in_s = -m <= a <= -m + ell - 1
    in_n = a >= 0
    if b not in (0, 1) or not (in_s or in_n):
        return MP.mpf(0)
    js = range(1, ell + 1)
    if in_n and not in_s:
        if b:
            return MP.mpf(0)
        return MP.mpf((-1) ** a) / math.factorial(a) * _zprod(js, a, m)
    pole = a + m + 1
    rest = [j for j in js if j != pole]
    if in_s and not in_n:
        if b:
            return MP.mpf(0)
        return math.factorial(-a - 1) * _zprod(rest, a, m)
    sign = MP.mpf((-1) ** a) / math.factorial(a)
    if b == 1:
        return sign * _zprod(rest, a, m)
    harmonic = sum(MP.mpf(1) / i for i in range(1, a + 1))
    c = harmonic * _zprod(rest, a, m)
    for j in rest:
        c += zeta_deriv(-a - m + j) * _zprod([r for r in rest if r != j], a, m)
    return sign * c


def staircase_expansion(ell: int, m: int, N) -> AsymptoticExpansion:
    """Complete expansion of Z_m^{[ell]} up to t**N (exponents in N u S_{ell,m})."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    N = _frac(N)
    exps = sorted(set(range(-m, -m + ell)) | set(range(0, math.floor(N) + 1)))
    terms = []
    for a in exps:
        if a > N:
            continue
        b_values = (1, 0) if (a >= 0 and -m <= a <= -m + ell - 1) else (0,)
        for b in b_values:
            c = staircase_coeff(ell, m, a, b)
            if c != 0:
                terms.append((Fraction(a), b, c))
    return AsymptoticExpansion(terms)


# ---------------------------------------------------------------------------
# h_ell and its inverse
# ---------------------------------------------------------------------------

def _z_triplet(ell: int, t: float):
    return tuple(z_staircase(ell, m, t) for m in (ell - 1, ell, ell + 1))


def h(ell: int, t: float) -> float:
    """(ell-1) Z_{ell-1}^{[ell]}(t) / Z_ell^{[ell]}(t), by direct summation."""
    if ell < 2:
        raise ValueError("ell must be >= 2")
    if t <= 0:
        raise ValueError("t must be > 0")
    return (ell - 1) * z_staircase(ell, ell - 1, t) / z_staircase(ell, ell, t)


def h_prime(ell: int, t: float) -> float:
    """dh/dt = (ell-1)(Z_{ell+1} Z_{ell-1} - Z_ell**2) / Z_ell**2, using dZ_m/dt = -Z_{m+1}."""
    zm, z0, zp = _z_triplet(ell, t)
    return (ell - 1) * (zp * zm - z0 * z0) / (z0 * z0)


def h_inverse(ell: int, v: float, rtol: float = 1e-13) -> float:
    """The t > 0 with h_ell(t) = v, for 0 < v < ell - 1.

    Brackets the root using monotonicity, runs Brent's method, then polishes
    with Newton steps on the exact derivative.
    """
    if ell < 2:
        raise ValueError("ell must be >= 2")
    if not 0 < v < ell - 1:
        raise ValueError(f"v must lie in (0, {ell - 1}), got {v}")

    def f(t):
        return h(ell, t) - v

    lo, hi = 0.5 * v, 2.0 * v
    while f(lo) > 0:
        lo *= 0.5
    while f(hi) < 0:
        lo, hi = hi, 2 * hi
    t = brentq(f, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
    for _ in range(3):
        zm, z0, zp = _z_triplet(ell, t)
        hv = (ell - 1) * zm / z0
        if abs(hv - v) <= rtol * v * 1e-2:
            break
        hp = (ell - 1) * (zp * zm - z0 * z0) / (z0 * z0)
        step = (hv - v) / hp
        if not lo <= t - step <= hi:
            break
        t -= step
    return t


def mixed_log_convexity_probe(spec: ZSpec, i: int, j: int, t: float) -> float:
    """Z_a Z_{a+e_i+e_j} - Z_{a+e_i} Z_{a+e_j} at t (sign not known in general)."""
    def shifted(*idx):
        al = list(spec.alphas)
        for r in idx:
            al[r] += 1
        return z_direct(ZSpec(spec.ell, al), t, 1e-17 * z_direct(ZSpec(spec.ell, al), t, 1e-3))

    return shifted() * shifted(i, j) - shifted(i) * shifted(j)
