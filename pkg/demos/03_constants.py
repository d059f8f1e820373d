# Correction constants: one closed-form chain, one series computation, same numbers.
from orbitasym import constants_bundle, correction_poly
from orbitasym.constants import efgh_sequences, h_series_by_composition, j_constants, j_constants_by_iteration

for ell in (4, 5, 6):
    chain = efgh_sequences(ell, ell - 1)["H"][1:]
    series = h_series_by_composition(ell, ell - 1)[1:]
    print(f"ell={ell}")
    for j, (x, y) in enumerate(zip(chain, series), 1):
        print(f"  H_{j} = {float(x):+.12f}   (series route differs by {float(abs(x - y)):.1e})")

# ell = 3 carries a u^2 ln u term; its constant is checked by iterating h_3.
j, it = j_constants(), j_constants_by_iteration()
for name in j:
    print(f"{name}: {float(j[name]):+.14f}  iteration: {float(it[name]):+.14f}")

print("ell=2 pair:", {k: float(v) for k, v in constants_bundle(2).values.items()})
poly = correction_poly(4)
print("correction for ell=4 at u=0.1:", float(poly(0.1)))
