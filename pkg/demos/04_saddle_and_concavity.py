# The saddle point, the exact Cauchy identity, estimates and log-concavity.
import math

from orbitasym import count_table
from orbitasym.logconcavity import predicted_upsilon, scan, typical_k, upsilon
from orbitasym.saddle import cauchy_integral, estimate, solve, validate_saddle

sol = solve(3, 1000, 100)
print(f"saddle for (3, 1000, 100): t={sol.t:.10f} rho={sol.rho:.6f} residuals={sol.residuals}")

# At the saddle, A / n! factors exactly as M times a torus integral.
for ell, n, k in ((2, 20, 4), (3, 15, 6)):
    chk = validate_saddle(ell, n, k)
    print(f"({ell},{n},{k}): integral={chk.integral:.6e} grid={chk.grid} residual={chk.residual:.1e}")

# n times the integral tends to sqrt(ell-1) / (2 pi).
for n in (100, 400):
    c = cauchy_integral(2, n, math.ceil(math.sqrt(n)))
    print(f"n={n}: 2 pi n I = {2 * math.pi * n * c.value:.4f}")

# The asymptotic formula against exact counts along k = n^((ell-1)/ell).
for ell, ns in ((2, (25, 100)), (3, (27, 64))):
    table = count_table(ell, ns[-1])
    for n in ns:
        r = estimate(ell, n, typical_k(ell, n, 1.0), table=table)
        print(f"ell={ell} n={n}: exact/estimate = {math.exp(r.log_error):.4f}")

# Second differences of ln A in k are positive, close to ell / k.
table = count_table(2, 100)
d = upsilon(table, 100, 10)
print(f"upsilon(2,100,10) = {d.value:.5f}, leading term {predicted_upsilon(2, 100, 1):.5f}")
print("full row n=60 log-concave:", scan(table, 60).log_concave)
