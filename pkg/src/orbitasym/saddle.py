"""Saddle point of the double Cauchy integral and the resulting estimates.

With ``z = exp(-t + i theta)`` and ``x = rho exp(i omega)``,

    A(ell, n, k) / n! = M(t, rho) * I(t, rho),
    ln M = n t - k ln rho + rho Z_{ell-1}(t),
    I = (2 pi)**-2 * integral over the torus of
        exp(-i n theta - i k omega + rho (e^{i omega} L(z) - L(e^{-t}))),

for any t, rho > 0; the saddle point fixes ``rho Z_ell(t) = n`` and
``rho Z_{ell-1}(t) = k``.  All Z values are staircase sums Z_m^[ell].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import eval_correction
from .enumeration import CountTable, bryan_fulman_exponents, count_table
from .special import MP, k_ell
from .zfunctions import h_inverse, z_staircase


class QuadratureError(ArithmeticError):
    """Grid doubling did not reach the requested agreement."""

    def __init__(self, message: str, last_values: tuple):
        super().__init__(message)
        self.last_values = last_values


@dataclass(frozen=True)
class SaddleSolution:
    ell: int
    n: int
    k: int
    t: float
    rho: float
    lam: float
    mu: float
    z_ell: float  # Z_ell^[ell](t)
    z_below: float  # Z_{ell-1}^[ell](t)

    @property
    def residuals(self) -> tuple[float, float]:
        """Relative errors in rho Z_ell = n and rho Z_{ell-1} = k."""
        return (
            abs(self.rho * self.z_ell - self.n) / self.n,
            abs(self.rho * self.z_below - self.k) / self.k,
        )


def _check_nk(ell: int, n: int, k: int) -> None:
    if ell < 2:
        raise ValueError("ell must be >= 2")
    if not 0 < k < n:
        raise ValueError(f"need 0 < k < n, got n={n}, k={k}")


def solve(ell: int, n: int, k: int) -> SaddleSolution:
    """t = h^{-1}((ell-1) k / n), rho = n / Z_ell(t), and the two Gaussian widths."""
    _check_nk(ell, n, k)
    t = h_inverse(ell, (ell - 1) * k / n)
    z_ell = z_staircase(ell, ell, t)
    z_below = z_staircase(ell, ell - 1, t)
    z_above = z_staircase(ell, ell + 1, t)
    return SaddleSolution(
        ell, n, k, t, n / z_ell, z_above**-0.5, z_below**-0.5, z_ell, z_below
    )


def starr(ell: int, n: int, k: int) -> float:
    """-ell k ln k + k ((ell-1) ln n - ell ln(ell-1) + ell + ln K_ell)."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return -ell * k * math.log(k) + k * (
        (ell - 1) * math.log(n) - ell * math.log(ell - 1) + ell + math.log(float(k_ell(ell)))
    )


def log_prefactor(sol: SaddleSolution) -> float:
    """ln M at the saddle: n t - k ln rho + k."""
    return sol.n * sol.t - sol.k * math.log(sol.rho) + sol.k


def log_prefactor_at(ell: int, n: int, k: int, t: float, rho: float) -> float:
    """ln M(t, rho) = n t - k ln rho + rho Z_{ell-1}(t) for arbitrary radii."""
    return n * t - k * math.log(rho) + rho * z_staircase(ell, ell - 1, t)


@dataclass(frozen=True)
class DeltaTerms:
    eps: float
    eta: float
    delta: float


def delta_terms(sol: SaddleSolution) -> DeltaTerms:
    """Relative deviations of t and rho from their leading forms, and
    ``Delta = (ell-1) eps - ln(1 + eta)`` so that ln M = Starr + k Delta."""
    ell, n, k = sol.ell, sol.n, sol.k
    eps = n * sol.t / ((ell - 1) * k) - 1
    log_ratio = math.log(sol.rho) + math.log(float(k_ell(ell))) + (ell - 1) * math.log(n) \
        - ell * math.log(ell - 1) - ell * math.log(k)
    eta = math.expm1(log_ratio)
    return DeltaTerms(eps, eta, (ell - 1) * eps - log_ratio)


def leading_prefactor(ell: int) -> float:
    """sqrt(ell - 1) / (2 pi)."""
    return math.sqrt(ell - 1) / (2 * math.pi)


def exact_log(table: CountTable, n: int, k: int) -> float:
    """ln(A(ell, n, k) / (n-1)!) from an exact count."""
    a = table[n, k]
    if a <= 0:
        raise ValueError(f"A({table.ell},{n},{k}) = {a} has no logarithm")
    with MP.workdps(30):
        return float(MP.log(MP.mpf(a)) - MP.loggamma(n))


@dataclass(frozen=True)
class EstimateReport:
    ell: int
    n: int
    k: int
    starr: float
    correction: float
    prefactor_log: float
    estimate_log: float
    saddle_log: float  # ln M + ln(sqrt(ell-1)/(2 pi)): the same estimate without truncating Delta
    exact_log: float | None = None

    @property
    def log_error(self) -> float | None:
        if self.exact_log is None:
            return None
        return self.exact_log - self.estimate_log


def estimate(ell: int, n: int, k: int, table: CountTable | None = None,
             exact: bool = False) -> EstimateReport:
    """Log of the asymptotic formula for A(ell, n, k) / (n-1)!.

    ``exact=True`` builds a count table when none is supplied.
    """
    _check_nk(ell, n, k)
    s = starr(ell, n, k)
    corr = k * eval_correction(ell, k / n)
    pre = math.log(leading_prefactor(ell))
    sol = solve(ell, n, k)
    lm = log_prefactor(sol)
    ex = None
    if table is None and exact:
        table = count_table(ell, n)
    if table is not None:
        if table.ell != ell:
            raise ValueError("table is for a different ell")
        ex = exact_log(table, n, k)
    return EstimateReport(ell, n, k, s, corr, lm, pre + s + corr, pre + lm, ex)


# ---------------------------------------------------------------------------
# torus quadrature of I
# ---------------------------------------------------------------------------

def _log_gf_terms(ell: int, t: float, tol: float = 1e-18) -> np.ndarray:
    """b_ell(m) for m up to the first m with e^{-m t} < tol."""
    m_max = max(1, math.ceil(-math.log(tol) / t))
    b = bryan_fulman_exponents(ell, m_max)
    return np.array([float(x) for x in b])


def _log_gf_complex(b: np.ndarray, z: np.ndarray) -> np.ndarray:
    """L(z) = sum_m b(m) (-Log(1 - z**m)) for an array of z."""
    out = np.zeros(z.shape, dtype=complex)
    zm = np.ones(z.shape, dtype=complex)
    for m in range(1, len(b)):
        zm = zm * z
        if b[m]:
            out -= b[m] * np.log1p(-zm)
    return out


@dataclass(frozen=True)
class CauchyResult:
    value: float
    grid: int
    previous: float
    max_modulus: float
    argmax: tuple


def _torus_mean(ell, n, k, t, rho, b, grid):
    ang = -math.pi + 2 * math.pi * np.arange(grid) / grid
    lz = _log_gf_complex(b, np.exp(-t + 1j * ang))
    l0 = _log_gf_complex(b, np.array([math.exp(-t)], dtype=complex))[0].real
    # rows: theta, columns: omega
    expo = (
        -1j * n * ang[:, None]
        - 1j * k * ang[None, :]
        + rho * (np.exp(1j * ang)[None, :] * lz[:, None] - l0)
    )
    vals = np.exp(expo)
    mod = np.abs(vals)
    idx = np.unravel_index(int(np.argmax(mod)), mod.shape)
    return vals.mean().real, float(mod[idx]), (float(ang[idx[0]]), float(ang[idx[1]]))


def cauchy_integral(ell: int, n: int, k: int, grid: int = 64, rtol: float = 1e-8,
                    max_grid: int = 4096, sol: SaddleSolution | None = None) -> CauchyResult:
    """I at the saddle by the periodic trapezoid rule, doubling the grid until
    two successive values agree to ``rtol``."""
    if grid < 16:
        raise ValueError("grid must be >= 16")
    if sol is None:
        sol = solve(ell, n, k)
    b = _log_gf_terms(ell, sol.t)
    prev, _, _ = _torus_mean(ell, n, k, sol.t, sol.rho, b, grid)
    cur, g = prev, grid
    while True:
        g *= 2
        if g > max_grid:
            raise QuadratureError(
                f"torus quadrature not converged by grid {g // 2}", (prev, cur)
            )
        cur, mx, arg = _torus_mean(ell, n, k, sol.t, sol.rho, b, g)
        if abs(cur - prev) <= rtol * abs(cur):
            return CauchyResult(cur, g, prev, mx, arg)
        prev = cur


@dataclass(frozen=True)
class IdentityCheck:
    integral: float
    grid: int
    log_lhs: float  # ln M + ln I
    log_rhs: float  # ln(A / n!)

    @property
    def residual(self) -> float:
        """Relative error of M I against A / n!."""
        return abs(math.expm1(self.log_lhs - self.log_rhs))


def validate_saddle(ell: int, n: int, k: int, grid: int = 64,
                    table: CountTable | None = None) -> IdentityCheck:
    """Compare M(t, rho) I(t, rho) at the saddle with the exact A / n!."""
    sol = solve(ell, n, k)
    res = cauchy_integral(ell, n, k, grid, sol=sol)
    if table is None:
        table = count_table(ell, n)
    if res.value <= 0:
        raise QuadratureError("quadrature gave a nonpositive integral", (res.previous, res.value))
    lhs = log_prefactor_at(ell, n, k, sol.t, sol.rho) + math.log(res.value)
    rhs = exact_log(table, n, k) - math.log(n)
    return IdentityCheck(res.value, res.grid, lhs, rhs)
