"""Lower and upper exponents of forb(m, r, Sym(F)) with the steps behind them.

    python walkthroughs/classification_tour.py

Every upper step carries a basis: "derived" steps are proved inside the
package (closed forms or the induction certificate), "cited" steps are
published theorems taken as given, and a cited step that undercuts a proven
lower bound is marked "contradicted" and ignored.
"""
from forbconf.exponents import classify
from forbconf.matrix import RMatrix, make_F_abcd, make_I, make_K, make_T

shapes = {
    "T_2": make_T(2),
    "I_2": make_I(2),
    "K_2": make_K(2),
    "[11;10;10]": RMatrix.from_rows([[1, 1], [1, 0], [1, 0]], 2),
    "F_(1,1,1,1)": make_F_abcd(1, 1, 1, 1),
    "F_(2,1,1,0)": make_F_abcd(2, 1, 1, 0),
}

for r in (3, 4, 5):
    print(f"r = {r}")
    for name, F in shapes.items():
        b = classify(F, r)
        state = "tight" if b.tight else "open"
        print(f"  {name:<12} lower {b.lower:>2} ({b.lower_witness.rule})  upper {b.upper:>2}  "
              f"certificate {b.derived_upper:>2}  {state}")
        best = b.upper_chain[0]
        print(f"  {'':<12} best upper step: {best.rule} [{best.basis}] {best.detail}")
    print()
