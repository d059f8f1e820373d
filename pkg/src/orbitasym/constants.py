"""Constants in the correction term of the orbit-count asymptotics.

For ell >= 4 the correction is a polynomial ``H_1 u + ... + H_{ell-1} u**(ell-1)``
built through the chain A, B -> C -> D -> E -> F -> G -> H.  Each link is a
finite multi-index sum; every sum also has an independent derivation through
power-series arithmetic on the expansions of the staircase Z functions, which
the ``*_by_series`` functions implement.

For ell = 2 and ell = 3 logarithms appear and the correction has the shapes
``I_log u ln u + I_1 u`` and ``J_1 u + J_log u**2 ln u + J_2 u**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .series import RationalSeries, ps_compose, ps_inv, ps_log, ps_mul, ps_revert
from .special import MP, k_ell, zeta, zeta_deriv
from .zfunctions import staircase_expansion


def _z(s):
    return zeta(s)


def _check_ell(ell: int, lo: int = 4) -> None:
    if ell < lo:
        raise ValueError(f"ell must be >= {lo}, got {ell}")


# ---------------------------------------------------------------------------
# weighted compositions
# ---------------------------------------------------------------------------

def composition_sums(seq: list, total: int, max_parts: int | None = None) -> list:
    """``out[k][j] = sum over j_1..j_k >= 1 with sum j_i = j of seq[j_1]...seq[j_k]``.

    ``seq`` is indexed from 0 (``seq[0]`` unused); rows k = 0..max_parts and
    columns j = 0..total.
    """
    if max_parts is None:
        max_parts = total
    zero = MP.mpf(0)
    rows = [[MP.mpf(1)] + [zero] * total]
    for _ in range(max_parts):
        prev = rows[-1]
        cur = [zero] * (total + 1)
        for j in range(1, total + 1):
            s = zero
            for first in range(1, j + 1):
                if first < len(seq) and prev[j - first]:
                    s += seq[first] * prev[j - first]
            cur[j] = s
        rows.append(cur)
    return rows


def _integer_partitions(n: int, max_part: int | None = None):
    """Partitions of n as dicts {part: multiplicity}."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield {}
        return
    for part in range(min(n, max_part), 0, -1):
        for rest in _integer_partitions(n - part, part):
            out = dict(rest)
            out[part] = out.get(part, 0) + 1
            yield out


# ---------------------------------------------------------------------------
# ell >= 4: the A..H chain
# ---------------------------------------------------------------------------

def ab_sequences(ell: int, J: int) -> tuple[list, list]:
    """A_0..A_J and B_0..B_J (coefficients of U(t) and V(t))."""
    _check_ell(ell)
    zero = MP.mpf(0)
    A = [zero] * (J + 1)
    B = [zero] * (J + 1)
    A[0] = B[0] = MP.mpf(1)
    z0, zm1 = _z(0), _z(-1)
    if J >= 1:
        A[1] = z0 / ((ell - 1) * _z(ell))
        B[1] = z0 / ((ell - 2) * _z(ell))
    if J >= 2:
        A[2] = zm1 * z0 / ((ell - 1) * (ell - 2) * _z(ell - 1) * _z(ell))
        B[2] = zm1 * z0 / ((ell - 2) * (ell - 3) * _z(ell - 1) * _z(ell))
    if ell - 1 <= J:
        if ell == 4:
            B[3] = zeta_deriv(-2) * zm1 * z0 / (2 * _z(2) * _z(3) * _z(4))
        elif ell == 5:
            B[4] = _z(-3) * zeta_deriv(-2) * zm1 * z0 / (6 * _z(2) * _z(3) * _z(4) * _z(5))
    return A, B


def c_sequence(ell: int, J: int) -> list:
    """C_0..C_J (C_0 = 0 unused), the coefficients of h_ell(t) = sum C_j t**j."""
    A, B = ab_sequences(ell, J)
    comp = composition_sums(A, J)
    C = [MP.mpf(0)] * (J + 1)
    for j in range(1, J + 1):
        s = MP.mpf(0)
        for m in range(0, j):
            if not B[m]:
                continue
            rest = j - 1 - m
            s += B[m] * sum((-1) ** k * comp[k][rest] for k in range(0, rest + 1))
        C[j] = s
    return C


def d_sequence(ell: int, J: int) -> list:
    """D_0..D_J (D_0 = 0 unused): coefficients of h_ell^{-1}(v) = sum D_p v**p.

    Sums over the internal vertex profiles (m_j)_{j>=2} of reversion trees,
    i.e. partitions of p - 1 with part j - 1 occurring m_j times.
    """
    C = c_sequence(ell, J)
    D = [MP.mpf(0)] * (J + 1)
    for p in range(1, J + 1):
        s = MP.mpf(0)
        for parts in _integer_partitions(p - 1):
            ms = {q + 1: mult for q, mult in parts.items()}
            edges = sum(j * mj for j, mj in ms.items())
            weight = MP.mpf(math.factorial(edges))
            for j, mj in ms.items():
                weight = weight / math.factorial(mj) * C[j] ** mj
            s += (-1) ** sum(ms.values()) * weight
        D[p] = s / math.factorial(p)
    return D


def efgh_sequences(ell: int, J: int) -> dict:
    """E_1..E_J, F_1..F_J, G_1..G_J, H_1..H_J (index 0 unused in each)."""
    A, _ = ab_sequences(ell, J)
    C = c_sequence(ell, J + 1)
    D = d_sequence(ell, J + 1)
    zero = MP.mpf(0)

    # (sum_i C_{i+1} t^i)^ell, i.e. j_1..j_ell >= 0
    shifted = [C[i + 1] for i in range(J + 1)]
    power = [MP.mpf(1)] + [zero] * J
    for _ in range(ell):
        power = [sum(power[a] * shifted[j - a] for a in range(j + 1)) for j in range(J + 1)]
    E = [zero] + [sum(A[k] * power[j - k] for k in range(j + 1)) for j in range(1, J + 1)]

    dcomp = composition_sums(D, J)
    F = [zero] + [
        (ell - 1) ** j * sum(E[k] * dcomp[k][j] for k in range(1, j + 1)) for j in range(1, J + 1)
    ]

    fcomp = composition_sums(F, J)
    G = [zero] + [
        sum(MP.mpf((-1) ** (k - 1)) / k * fcomp[k][j] for k in range(1, j + 1))
        for j in range(1, J + 1)
    ]
    H = [zero] + [(ell - 1) ** (j + 1) * D[j + 1] + G[j] for j in range(1, J + 1)]
    return {"E": E, "F": F, "G": G, "H": H}


# ---------------------------------------------------------------------------
# second derivation through series arithmetic
# ---------------------------------------------------------------------------

def uv_series(ell: int, J: int) -> tuple[RationalSeries, RationalSeries]:
    """U(t) = t**ell Z_ell / K_ell and V(t) = (ell-1) t**(ell-1) Z_{ell-1} / K_ell.

    Read off the staircase expansions; for ell >= 4 both are free of logarithms
    up to any fixed order.
    """
    _check_ell(ell)
    K = k_ell(ell)
    out = []
    for m, scale in ((ell, 1), (ell - 1, ell - 1)):
        coeffs = [MP.mpf(0)] * (J + 1)
        for a, b, c in staircase_expansion(ell, m, J - m):
            if b and abs(c) > MP.mpf(10) ** (-MP.dps + 5):
                raise ArithmeticError(f"unexpected logarithm in Z_{m}^[{ell}] at t^{a}")
            if b:
                continue
            i = int(a) + m
            if 0 <= i <= J:
                coeffs[i] += scale * c / K
        # leading term is K_ell / K_ell; pin it so log and inverse see exactly 1
        if abs(coeffs[0] - 1) > MP.mpf(10) ** (-MP.dps + 8):
            raise ArithmeticError("leading coefficient of U or V is not 1")
        coeffs[0] = MP.mpf(1)
        out.append(RationalSeries(coeffs, J))
    return out[0], out[1]


def c_sequence_by_series(ell: int, J: int) -> list:
    """C_1..C_J as coefficients of t V(t) / U(t) by series division."""
    U, V = uv_series(ell, J)
    q = ps_mul(V, ps_inv(U))
    return [MP.mpf(0)] + [q[j - 1] for j in range(1, J + 1)]


def d_sequence_by_reversion(ell: int, J: int) -> list:
    C = c_sequence(ell, J)
    rev = ps_revert(RationalSeries(C, J))
    return list(rev.coeffs)


def h_series_by_composition(ell: int, J: int) -> list:
    """H_1..H_J by composing the series for Delta directly.

    With u = k/n and t(u) = h^{-1}((ell-1) u):
    ``Delta = t(u)/u - (ell-1) + ln[U(t) (h(t)/t)**ell]``.
    """
    U, V = uv_series(ell, J + 1)
    hs = ps_mul(V, ps_inv(U))  # h(t)/t
    h_full = RationalSeries([MP.mpf(0)] + list(hs.coeffs[:J + 1]), J + 1)
    t_of_v = ps_revert(h_full)
    scaled = RationalSeries([t_of_v[i] * (ell - 1) ** i for i in range(J + 2)], J + 1)
    eps_part = [scaled[j + 1] for j in range(J + 1)]
    eps_part[0] -= ell - 1
    inner = ps_mul(U, hs ** ell)
    log_part = ps_compose(ps_log(inner), scaled)
    return [MP.mpf(0)] + [eps_part[j] + log_part[j] for j in range(1, J + 1)]


# ---------------------------------------------------------------------------
# ell = 2 and ell = 3
# ---------------------------------------------------------------------------

def i_constants() -> dict:
    """I_log and I_1, checked against 3/pi**2 and -3 ln(2 pi)/pi**2."""
    i_log = -_z(0) / _z(2)
    i_1 = zeta_deriv(0) / _z(2)
    pi2 = MP.pi**2
    closed = {"I_1log": 3 / pi2, "I_1": -3 * MP.log(2 * MP.pi) / pi2}
    for name, val in (("I_1log", i_log), ("I_1", i_1)):
        if abs(val - closed[name]) > 1e-13:
            raise ArithmeticError(f"{name} disagrees with its closed form")
    return {"I_1log": i_log, "I_1": i_1}


def h3_coefficients() -> dict:
    """h_3(t) = t + c_2 t**2 + L t**3 ln t + C t**3 + o(t**3), with U's A_1, A_2.

    Read from the staircase expansions of Z_2^[3] and Z_3^[3].
    """
    K = k_ell(3)
    u = {int(a): c for a, b, c in staircase_expansion(3, 3, 0) if b == 0}
    v_coef = {}
    for a, b, c in staircase_expansion(3, 2, 0):
        v_coef[(int(a) + 2, b)] = 2 * c / K
    a1, a2 = u.get(-2, 0) / K, u.get(-1, 0) / K
    b1, b2 = v_coef.get((1, 0), 0), v_coef.get((2, 0), 0)
    # (-ln t)**1 term of V turns into ln t with the opposite sign
    log_coef = -v_coef.get((2, 1), 0)
    return {
        "A_1": a1,
        "A_2": a2,
        "c_2": b1 - a1,
        "L": log_coef,
        "C": b2 - b1 * a1 + a1 * a1 - a2,
    }


def j_constants() -> dict:
    """J_1, J_log and J_2 for ell = 3.

    J_2 is assembled from zeta values, and independently from the expansion
    coefficients of h_3 by asymptotic iteration (the two must agree).
    """
    z0, zm1, z2, z3 = _z(0), _z(-1), _z(2), _z(3)
    dz0, dzm1 = zeta_deriv(0), zeta_deriv(-1)
    j1 = 2 * z0 / z3
    j_log = -4 * zm1 * z0 / (z2 * z3)
    j2 = (
        -3 * z0**2 * z2
        - 4 * MP.log(2) * zm1 * z0 * z3
        + 4 * dzm1 * z0 * z3
        + 4 * zm1 * dz0 * z3
    ) / (z2 * z3**2)
    if abs(j1 + 1 / z3) > 1e-13 or abs(j_log + 1 / (MP.pi**2 * z3)) > 1e-13:
        raise ArithmeticError("J_1 or J_log disagrees with its closed form")
    return {"J_1": j1, "J_2log": j_log, "J_2": j2}


def j_constants_by_iteration() -> dict:
    """J constants from h_3's expansion, inverting v = h_3(t) with v = 2u."""
    c = h3_coefficients()
    a1, a2, c2, L, C = c["A_1"], c["A_2"], c["c_2"], c["L"], c["C"]
    # Delta = (c2 + A1) v + L v^2 ln v + (C - c2^2/2 + A2 - A1^2/2 - c2 A1) v^2
    quad = C - c2**2 / 2 + a2 - a1**2 / 2 - c2 * a1
    return {
        "J_1": 2 * (c2 + a1),
        "J_2log": 4 * L,
        "J_2": 4 * quad + 4 * L * MP.log(2),
    }


def h3_constant_closed_form():
    """The t**3 coefficient of h_3 in zeta values."""
    z0, zm1, z2, z3 = _z(0), _z(-1), _z(2), _z(3)
    return (
        -z0**2 * z2 - 2 * zm1 * z0 * z3 + 4 * zeta_deriv(-1) * z0 * z3 + 4 * zm1 * zeta_deriv(0) * z3
    ) / (4 * z2 * z3**2)


# ---------------------------------------------------------------------------
# bundles and the correction polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantsBundle:
    ell: int
    kind: str  # "H-series", "I-pair" or "J-triple"
    values: dict
    intermediates: dict = field(default_factory=dict)


@lru_cache(maxsize=None)
def constants_bundle(ell: int, order: int | None = None) -> ConstantsBundle:
    if ell < 2:
        raise ValueError("ell must be >= 2")
    if ell == 2:
        return ConstantsBundle(2, "I-pair", i_constants())
    if ell == 3:
        return ConstantsBundle(3, "J-triple", j_constants())
    J = ell - 1 if order is None else order
    if J < 1:
        raise ValueError("order must be >= 1")
    A, B = ab_sequences(ell, J)
    C = c_sequence(ell, J)
    D = d_sequence(ell, J)
    efgh = efgh_sequences(ell, J)
    values = {f"H_{j}": efgh["H"][j] for j in range(1, J + 1)}
    inter = {"A": A, "B": B, "C": C[1:], "D": D[1:]}
    inter.update({k: v[1:] for k, v in efgh.items() if k != "H"})
    return ConstantsBundle(ell, "H-series", values, inter)


@dataclass(frozen=True)
class CorrectionPolynomial:
    """Terms ``coeff * u**power * (ln u)**log_power``."""

    ell: int
    terms: tuple  # of (power, log_power, coeff)

    def __call__(self, u):
        if not 0 < u < 1:
            raise ValueError(f"u must lie in (0, 1), got {u}")
        u = MP.mpf(u)
        lu = MP.log(u)
        return sum((c * u**p * lu**b for p, b, c in self.terms), MP.mpf(0))


def correction_poly(ell: int) -> CorrectionPolynomial:
    vals = constants_bundle(ell).values
    if ell == 2:
        terms = ((1, 1, vals["I_1log"]), (1, 0, vals["I_1"]))
    elif ell == 3:
        terms = ((1, 0, vals["J_1"]), (2, 1, vals["J_2log"]), (2, 0, vals["J_2"]))
    else:
        terms = tuple((j, 0, vals[f"H_{j}"]) for j in range(1, ell))
    return CorrectionPolynomial(ell, terms)


def eval_correction(ell: int, u) -> float:
    """The correction E_ell(u) for 0 < u < 1."""
    return float(correction_poly(ell)(u))
