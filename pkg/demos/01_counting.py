# Counting commuting tuples of permutations by the number of joint orbits.
import math

from orbitasym import brute_force_table, count_table

# A(ell, n, k) counts ell-tuples of pairwise commuting permutations of n points
# whose joint action has exactly k orbits.  ell = 1 gives Stirling numbers.
t1 = count_table(1, 6)
print("ell=1, n=6:", list(t1.row(6)))

# For ell = 2 the row sums are p(n) n!, since commuting pairs are counted by
# the number of conjugacy classes of S_n.
t2 = count_table(2, 12)
for n in (5, 8, 12):
    print(f"ell=2, n={n}: row sum / n! = {sum(t2.row(n)) // math.factorial(n)}")

# The fast table agrees with direct enumeration on small n.
print("brute force ell=2, n=5:", list(brute_force_table(2, 5).row(5)))
print("table       ell=2, n=5:", list(t2.row(5)))

# Rows for larger ell grow quickly; the second-to-last entry is (2^ell - 1) C(n, 2).
t4 = count_table(4, 10)
print("ell=4, n=10, k=9:", t4[10, 9], "=", 15 * 45)
