"""Log-concavity of A(ell, n, k) in k.

``upsilon(k) = 2 ln A(k) - ln A(k-1) - ln A(k+1)`` is positive exactly when
``A(k)**2 > A(k-1) A(k+1)``; the sign is always decided on the integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .enumeration import CountTable
from .special import MP


@dataclass(frozen=True)
class SecondDifference:
    k: int
    positive: bool  # A(k)^2 > A(k-1) A(k+1), decided exactly
    value: float  # upsilon, from 40-digit logarithms


def _log_int(a: int):
    return MP.log(MP.mpf(a))


def upsilon(table: CountTable, n: int, k: int) -> SecondDifference:
    if not 2 <= k <= n - 1:
        raise ValueError(f"need 2 <= k <= n - 1, got n={n}, k={k}")
    lo, mid, hi = table[n, k - 1], table[n, k], table[n, k + 1]
    if min(lo, mid, hi) <= 0:
        raise ValueError(f"zero count near k={k} in row n={n}")
    value = 2 * _log_int(mid) - _log_int(lo) - _log_int(hi)
    return SecondDifference(k, mid * mid > lo * hi, float(value))


@dataclass(frozen=True)
class ConcavityReport:
    ell: int
    n: int
    checked_k: list
    violations: list
    upsilon: dict = field(default_factory=dict)

    @property
    def log_concave(self) -> bool:
        return not self.violations


def scan(table: CountTable, n: int, ks=None) -> ConcavityReport:
    """Check every 2 <= k <= n-1 (or just ``ks``)."""
    if ks is None:
        ks = range(2, n)
    checked, bad, values = [], [], {}
    for k in ks:
        d = upsilon(table, n, k)
        checked.append(k)
        values[k] = d.value
        if not d.positive:
            bad.append(k)
    return ConcavityReport(table.ell, n, checked, bad, values)


def typical_k(ell: int, n: int, s: float) -> int:
    """ceil(s * n**((ell-1)/ell)), with the exponent kept exact for perfect powers."""
    return math.ceil(s * n ** ((ell - 1) / ell) - 1e-9)


def predicted_upsilon(ell: int, n: int, s: float) -> float:
    """Leading term ell / (s * n**((ell-1)/ell))."""
    if s <= 0:
        raise ValueError("s must be > 0")
    return ell / (s * n ** ((ell - 1) / ell))
