"""Exact counts A(ell, n, k) of commuting ell-tuples with k joint orbits.

Two independent routes:

* :func:`count_table` expands the generating function
  ``exp(x * L_ell(z))`` where ``L_ell(z) = sum_n c_ell(n) z**n`` and
  ``c_ell(n)`` is a Dirichlet convolution of power laws;
* :func:`brute_force_table` enumerates pairwise commuting tuples of
  permutations and counts orbits with union-find.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations


class IntegralityError(ArithmeticError):
    """An exact computation produced a non-integral count."""


# ---------------------------------------------------------------------------
# Dirichlet convolutions
# ---------------------------------------------------------------------------

def dirichlet_convolve(f: list, g: list) -> list:
    """Dirichlet convolution of two sequences indexed 1..N (index 0 unused)."""
    n = min(len(f), len(g)) - 1
    out = [0] * (n + 1)
    for d in range(1, n + 1):
        fd = f[d]
        if not fd:
            continue
        for q in range(1, n // d + 1):
            out[d * q] += fd * g[q]
    return out


def power_sequence(exponent: int, n: int) -> list:
    """``[0, 1**e, 2**e, ..., n**e]`` with exact entries (Fractions for e < 0)."""
    if exponent >= 0:
        return [0] + [i**exponent for i in range(1, n + 1)]
    return [0] + [Fraction(1, i**-exponent) for i in range(1, n + 1)]


def bryan_fulman_exponents(ell: int, n: int) -> list:
    """b_ell(m) for m <= n: the exponent of ``(1 - z**m)**(-x)`` in the product.

    ``b_ell(m) = sum over d_1 ... d_{ell-1} = m of d_1**(ell-2) ... d_{ell-2}**1``.
    For ell = 1 the product has the single factor m = 1.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if ell == 1:
        return [0] + [1 if m == 1 else 0 for m in range(1, n + 1)]
    out = power_sequence(ell - 2, n)
    for e in range(ell - 3, -1, -1):
        out = dirichlet_convolve(out, power_sequence(e, n))
    return out


@dataclass(frozen=True)
class LogGFSeries:
    """Coefficients c_ell(1..N) of ``L_ell(z) = sum c_ell(n) z**n``."""

    ell: int
    coeffs: tuple  # coeffs[n] for n = 0..N, coeffs[0] = 0

    @property
    def max_n(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]


def log_gf(ell: int, max_n: int) -> LogGFSeries:
    # n * c(n) = sum_{m | n} m * b(m)
    b = bryan_fulman_exponents(ell, max_n)
    mb = [m * b[m] for m in range(max_n + 1)]
    ones = [0] + [1] * max_n
    nc = dirichlet_convolve(mb, ones) if max_n else [0]
    coeffs = [Fraction(0)] + [Fraction(nc[n], n) for n in range(1, max_n + 1)]
    return LogGFSeries(ell, tuple(coeffs))


def dirichlet_coeff(ell: int, n: int) -> Fraction:
    """c_ell(n): sum over ordered factorisations d_1 ... d_ell = n of
    ``d_1**(ell-2) d_2**(ell-3) ... d_{ell-1}**0 d_ell**(-1)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return log_gf(ell, n)[n]


# ---------------------------------------------------------------------------
# Count tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CountTable:
    """Exact A(ell, n, k); ``rows[n][k]`` for 0 <= k <= n <= max_n.

    Tables from :func:`brute_force_table` hold a single row; ``min_n`` marks
    the first stored row.
    """

    ell: int
    max_n: int
    rows: tuple
    min_n: int = 0

    def __getitem__(self, nk: tuple[int, int]) -> int:
        n, k = nk
        if not self.min_n <= n <= self.max_n:
            raise KeyError(f"n={n} outside table range {self.min_n}..{self.max_n}")
        if not 0 <= k <= n:
            return 0
        return self.rows[n - self.min_n][k]

    def row(self, n: int) -> tuple:
        if not self.min_n <= n <= self.max_n:
            raise KeyError(f"n={n} outside table range {self.min_n}..{self.max_n}")
        return self.rows[n - self.min_n]

    @property
    def values(self) -> dict:
        return {
            (n, k): v
            for n, row in enumerate(self.rows, start=self.min_n)
            for k, v in enumerate(row)
        }

    def records(self):
        for n, row in enumerate(self.rows, start=self.min_n):
            for k, v in enumerate(row):
                yield {"ell": self.ell, "n": n, "k": k, "count": v}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["ell", "n", "k", "count"])
        for r in self.records():
            w.writerow([r["ell"], r["n"], r["k"], str(r["count"])])
        return buf.getvalue()

    def to_json(self) -> str:
        recs = [{**r, "count": str(r["count"])} for r in self.records()]
        return json.dumps(recs, indent=1)


def count_table(ell: int, max_n: int) -> CountTable:
    """A(ell, n, k) = n! [z**n] L_ell(z)**k / k! for all 0 <= k <= n <= max_n.

    Works with the integers ``a(j) = j! c_ell(j)`` (the tuples with a single
    joint orbit) and builds ``L**k / k!`` one power at a time via the
    exponential formula, marking the block that contains the largest point:
    ``A(n, k) = sum_j C(n-1, j-1) a(j) A(n-j, k-1)``.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    c = log_gf(ell, max_n)
    conn = [0]
    for j in range(1, max_n + 1):
        v = c[j] * math.factorial(j)
        if v.denominator != 1:
            raise IntegralityError(f"j! c_{ell}({j}) = {v} is not an integer")
        conn.append(v.numerator)

    # power[k][n] = n! [z^n] L^k / k!
    prev = [1] + [0] * max_n
    table = [[0] * (n + 1) for n in range(max_n + 1)]
    table[0][0] = 1
    for k in range(1, max_n + 1):
        cur = [0] * (max_n + 1)
        for n in range(k, max_n + 1):
            s = 0
            for j in range(1, n - k + 2):
                pj = prev[n - j]
                if pj:
                    s += math.comb(n - 1, j - 1) * conn[j] * pj
            cur[n] = s
            table[n][k] = s
        prev = cur
    return CountTable(ell, max_n, tuple(tuple(r) for r in table))


def commuting_tuple_count(ell: int, n: int, table: CountTable | None = None) -> int:
    """Number of pairwise commuting ell-tuples in S_n (row sum of the table)."""
    if table is None:
        table = count_table(ell, n)
    if table.ell != ell:
        raise ValueError("table is for a different ell")
    return sum(table.row(n))


# ---------------------------------------------------------------------------
# Brute force oracle
# ---------------------------------------------------------------------------

BRUTE_FORCE_LIMITS = {1: 8, 2: 6, 3: 5}


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.count = n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx
            self.count -= 1


def joint_orbit_count(perms, n: int) -> int:
    """Orbits on {0..n-1} of the group generated by ``perms``."""
    uf = UnionFind(n)
    for p in perms:
        for i in range(n):
            uf.union(i, p[i])
    return uf.count


def _commute(p: tuple, q: tuple) -> bool:
    return all(p[q[i]] == q[p[i]] for i in range(len(p)))


def _check_brute_force_size(ell: int, n: int) -> None:
    if ell < 1:
        raise ValueError("ell must be >= 1")
    limit = BRUTE_FORCE_LIMITS.get(ell, 4)
    if n > limit:
        raise ValueError(
            f"brute force over S_{n}^{ell} is too large: need n <= {limit} for ell={ell}"
        )


def _count_from(ell, chosen, candidates, perms, commutes, n, counts):
    if len(chosen) == ell:
        counts[joint_orbit_count([perms[i] for i in chosen], n)] += 1
        return
    for j in candidates:
        nxt = [c for c in candidates if c in commutes[j]]
        chosen.append(j)
        _count_from(ell, chosen, nxt, perms, commutes, n, counts)
        chosen.pop()


def _brute_force_counts(ell: int, n: int, first: range | None = None) -> list:
    perms = list(permutations(range(n)))
    m = len(perms)
    commutes = [set() for _ in range(m)] if ell > 1 else [set()] * m
    if ell > 1:
        for i in range(m):
            commutes[i].add(i)
            for j in range(i + 1, m):
                if _commute(perms[i], perms[j]):
                    commutes[i].add(j)
                    commutes[j].add(i)
    counts = [0] * (n + 1)
    everyone = list(range(m))
    for i in first if first is not None else range(m):
        nxt = [c for c in everyone if c in commutes[i]] if ell > 1 else []
        _count_from(ell, [i], nxt, perms, commutes, n, counts)
    return counts


def brute_force_table(ell: int, n: int, threads: int = 1) -> CountTable:
    """Single-row table for S_n by direct enumeration of commuting tuples.

    Guarded to n <= 8 (ell=1), 6 (ell=2), 5 (ell=3), 4 otherwise.  With
    ``threads > 1`` the choices of the first permutation are split across
    worker processes and the partial counts are added in submission order.
    """
    _check_brute_force_size(ell, n)
    if n == 0:
        return CountTable(ell, 0, ((1,),), min_n=0)
    m = math.factorial(n)
    if threads > 1 and m >= 2 * threads:
        from concurrent.futures import ProcessPoolExecutor

        step = -(-m // threads)
        chunks = [range(s, min(s + step, m)) for s in range(0, m, step)]
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(_brute_force_counts, [ell] * len(chunks), [n] * len(chunks), chunks))
        counts = [sum(col) for col in zip(*parts)]
    else:
        counts = _brute_force_counts(ell, n)
    return CountTable(ell, n, (tuple(counts),), min_n=n)
