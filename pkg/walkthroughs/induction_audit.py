"""Which forbidden induction graphs can actually be certified?

    python walkthroughs/induction_audit.py

The rule-based family of forbidden graphs adds paths, triangles, cycles and
stars whenever ch^n(F) holds a configuration of [0 1].  The certifier checks
each member directly: inducting along the graph in any order must leave a
matrix that avoids every I_l(a, b) and T_l(a, b) for large l.  Members that
fail the check are not safe to forbid, and forbidding them can push the upper
exponent below a proven lower exponent.
"""
from forbconf.certify import audit_h_family, certified_upper
from forbconf.exponents import lower_exponent
from forbconf.induction import generic_upper
from forbconf.matrix import RMatrix, make_K, make_T

cases = [
    ("K_2", make_K(2), 4),
    ("[01;01]", RMatrix.from_rows([[0, 1], [0, 1]], 2), 3),
    ("T_2", make_T(2), 4),
]

for name, F, r in cases:
    print(f"{name} at r = {r}")
    for member, rule, ok in audit_h_family(F, r):
        mark = {True: "certified", False: "NOT certified", None: "predicate"}[ok]
        print(f"  {member:<36} {mark:<14} {rule}")
    low = lower_exponent(F, r)
    rule_based = generic_upper(F, r)[0]
    cert, G = certified_upper(F, r)
    print(f"  lower exponent {low.exponent} ({low.rule})")
    print(f"  upper from the rule-based family {rule_based}"
          + ("  <- below the lower exponent" if rule_based < low.exponent else ""))
    print(f"  upper from the certificate {cert}, largest uncertified graph: {G}")
    print()
