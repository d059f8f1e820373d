# Staircase Z functions: direct sums against their small-t expansions.

from orbitasym import MP, ZSpec, eval_expansion, staircase_expansion, z_direct, z_staircase
from orbitasym.zfunctions import h, h_inverse

# Z_1^[2](t) is a sum over pairs (d1, d2) weighted by exp(-d1 d2 t) / d2.
# Its expansion has a pole, a logarithm and a constant, then only t^1.
e = staircase_expansion(2, 1, 1)
for a, b, c in e:
    print(f"  t^{a} (-ln t)^{b}: {float(c):+.12f}")
for t in (0.5, 0.2, 0.1):
    print(f"t={t}: direct={z_staircase(2, 1, t):.15f}  expansion={float(eval_expansion(e, t)):.15f}")

# For ell = 4 the difference is exponentially small but visible at 60 digits.
with MP.workdps(60):
    spec = ZSpec.staircase(4, 4)
    e4 = staircase_expansion(4, 4, 3)
    for t in ("0.2", "0.1", "0.05"):
        tt = MP.mpf(t)
        r = z_direct(spec, tt, eps=1e-50, dps=60) - eval_expansion(e4, tt)
        print(f"Z_4^[4]({t}) - expansion = {MP.nstr(r, 5)}")

# h(t) = (ell-1) Z_(ell-1) / Z_ell rises from 0 to ell-1 and is inverted numerically.
for ell in (2, 3, 5):
    t = h_inverse(ell, 0.5)
    print(f"ell={ell}: h^-1(0.5) = {t:.10f}, h(that) = {h(ell, t):.12f}")
print("h_3(t)/t near 0:", h(3, 1e-3) / 1e-3, "vs 1")
