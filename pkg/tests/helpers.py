"""Shared numerical helpers for the test-suite."""

import math

from orbitasym.special import MP
from orbitasym.zfunctions import ZSpec, eval_expansion, staircase_expansion, z_direct


def staircase_remainders(ell, m, N, ts, dps):
    """|Z_m^[ell](t) - expansion up to t**N| at each t, all carried at ``dps`` digits.

    Also returns the rounding floor of each direct sum (10**-(dps-10) * Z).
    """
    out, floors = [], []
    with MP.workdps(dps):
        e = staircase_expansion(ell, m, N)
        spec = ZSpec.staircase(ell, m)
        for t in ts:
            tt = MP.mpf(t)
            z = z_direct(spec, tt, eps=10.0 ** (-dps + 12), dps=dps)
            out.append(abs(z - eval_expansion(e, tt)))
            floors.append(abs(z) * MP.mpf(10) ** (-dps + 10))
    return out, floors


def loglog_slope(ts, values):
    """Least-squares slope of ln|value| against ln t."""
    xs = [math.log(t) for t in ts]
    ys = [float(MP.log(v)) for v in values]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def pairwise_slopes(ts, values):
    return [
        float(MP.log(values[i] / values[i + 1])) / math.log(ts[i] / ts[i + 1])
        for i in range(len(ts) - 1)
    ]
