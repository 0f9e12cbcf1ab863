"""Small exact values of forb(m, r, F) and the closed forms they check.

    python walkthroughs/exact_values.py
"""
from forbconf.combinatorics import sauer_formula
from forbconf.matrix import make_const, make_F_abcd, make_K, make_T, sym_family, to_text
from forbconf.solver import block_formula, exact_forb, induction_inequality_check

print("forb(m, K_k) against the Sauer bound")
for k in (1, 2, 3):
    got = [exact_forb(m, 2, [make_K(k)]).value for m in range(1, 6)]
    want = [sauer_formula(m, k) for m in range(1, 6)]
    print(f"  k={k}: search {got}  formula {want}")

F = make_F_abcd(1, 1, 1, 1)
print("\nF_(1,1,1,1): one [1 1] row, one [1 0], one [0 1], one [0 0]")
for m in (2, 3, 4, 5):
    res = exact_forb(m, 2, [F])
    print(f"  m={m}: {res.value} ({res.status}), 4m-4 = {4 * m - 4}")
res = exact_forb(4, 2, [F])
print("  a largest avoider at m=4:")
print("   " + to_text(res.witness).replace("\n", "\n   "))

print("\nthe induction inequality forb(m, F) <= forb(m-1, ch F) + forb(m-1, F)")
for name, G, m in (("K_2", make_K(2), 3), ("T_2", make_T(2), 3), ("F_(1,1,1,1)", F, 5)):
    holds, lhs, a, b = induction_inequality_check(m, G)
    print(f"  {name}, m={m}: {lhs} <= {a} + {b}  {holds}")

print("\nconstant blocks 0_(2x2) over three symbols, every relabeling forbidden")
fam = sym_family(make_const(2, 2, 0), 3)
for m in (2, 3):
    print(f"  m={m}: search {exact_forb(m, 3, fam).value}, formula {block_formula(m, 3, 2, 2)}")
