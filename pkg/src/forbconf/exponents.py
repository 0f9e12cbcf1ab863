"""Asymptotic exponents of forb(m, r, Sym(F)) for (0,1)-matrices F.

Every rule returns a :class:`Step` (exponent, rule name, detail).  The lower
exponent is the best construction found; the upper exponent is the best
derivation found.  Neither side guesses: when they differ the case is open.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

from .certify import Certifier, certified_upper
from .induction import F2110, bounded_by_identity_triangle, ch, ch_n, has_01_config, klog2p_cap
from .matrix import (
    RMatrix,
    complement,
    config_key,
    contains_config,
    is_simple,
    make_I,
    make_T,
    max_multiplicity,
    support,
)
from .multigraph import EnumerationBudget, Multigraph

ZERO_ONE = RMatrix.from_rows([[0, 1]], 2)
ZERO_OVER_ONE = RMatrix.from_rows([[0], [1]], 2)

# 4-row matrices whose presence forces forb(m, F) = Omega(m^2)
F3 = RMatrix.from_rows([[1], [1], [1], [0]], 2)
F4 = RMatrix.from_rows([[1, 0], [1, 0], [0, 1], [0, 1]], 2)
F5 = RMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], 2)
QUADRATIC_4ROW = (F3, complement(F3), F4, F5, complement(F5))


@dataclass(frozen=True)
class Step:
    exponent: int
    rule: str
    detail: str = ""
    basis: str = "derived"  # derived, cited or contradicted

    def to_json(self) -> dict:
        return {"exponent": self.exponent, "rule": self.rule, "detail": self.detail,
                "basis": self.basis}


@dataclass
class ExponentBound:
    lower: int
    lower_witness: Step
    upper: int
    upper_chain: list[Step] = field(default_factory=list)
    constant_value: int | None = None
    derived_upper: int | None = None

    @property
    def tight(self) -> bool:
        return self.lower == self.upper

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "lower_witness": self.lower_witness.to_json(),
            "upper": self.upper,
            "upper_chain": [s.to_json() for s in self.upper_chain],
            "tight": self.tight,
            "constant_value": self.constant_value,
            "derived_upper": self.derived_upper,
        }


def _check(F: RMatrix) -> None:
    if F.alphabet != 2:
        raise ValueError("exponents are computed for (0,1)-matrices")
    if F.rows == 0 or F.ncols == 0:
        raise ValueError("F must have at least one row and one column")


def _key(F: RMatrix) -> tuple:
    return config_key(F)


# ---------------------------------------------------------------------------
# predicates


def constant_rows(F: RMatrix) -> list[int]:
    return [i for i in range(F.rows) if len(set(F.row(i))) == 1]


def pair_test_condition(F: RMatrix) -> bool:
    """Some row pair misses [1;1], some misses [0;0], some misses I_2.

    For simple F this is exactly forb(m, F) = O(m^{k-2}); otherwise
    forb(m, F) = Theta(m^{k-1}).
    """
    if F.rows < 2:
        return False
    no11 = no00 = noI = False
    for a, b in combinations(range(F.rows), 2):
        pairs = {(c[a], c[b]) for c in F.columns}
        no11 |= (1, 1) not in pairs
        no00 |= (0, 0) not in pairs
        noI |= not ((1, 0) in pairs and (0, 1) in pairs)
    return no11 and no00 and noI


def _ell(F: RMatrix) -> int:
    return F.rows + F.ncols


def avoided_by_identity_type(F: RMatrix, with_tc: bool = True) -> str | None:
    """Name of an m-column matrix among I_m, I_m^c, T_m (, T_m^c) that F is not a configuration of."""
    ell = _ell(F)
    I, T = make_I(ell), make_T(ell)
    named = [("I", I), ("I^c", complement(I)), ("T", T)]
    if with_tc:
        named.append(("T^c", complement(T)))
    for name, X in named:
        if not contains_config(F, X):
            return name
    return None


def constant_value(F: RMatrix, r: int) -> int | None:
    """forb(m, r, Sym(F)) when it does not depend on m."""
    if F.rows == 1 and contains_config(F, ZERO_ONE):
        return 1
    if F.rows == 2 and F.ncols == 1 and F.columns[0][0] != F.columns[0][1]:
        return r
    return None


def block_shape(F: RMatrix):
    """('const', p, q), ('stack', p1, p0, q) or ('side', p, q0, q1) for block matrices."""
    cols = set(F.columns)
    if len(cols) == 1:
        col = next(iter(cols))
        if len(set(col)) == 1:
            return ("const", F.rows, F.ncols)
        return ("stack", col.count(1), col.count(0), F.ncols)
    if len(cols) == 2 and cols == {(0,) * F.rows, (1,) * F.rows}:
        mult = F.multiplicities()
        return ("side", F.rows, mult[(0,) * F.rows], mult[(1,) * F.rows])
    return None


# ---------------------------------------------------------------------------
# 2-symbol lower exponents for sub-configurations


def two_symbol_lower(Fp: RMatrix) -> Step:
    """A lower bound e with forb(m, F') = Omega(m^e) for simple F'."""
    k = Fp.rows
    best = Step(0, "none")
    if k >= 2 and not pair_test_condition(Fp):
        best = Step(k - 1, "every row pair fails the 4-row test: forb(m, F') = Theta(m^{k-1})")
    if k == 4 and best.exponent < 2 and any(contains_config(X, Fp) for X in QUADRATIC_4ROW):
        best = Step(2, "contains F3, F3^c, F4, F5 or F5^c: forb(m, F') = Omega(m^2)")
    if best.exponent < 1:
        name = avoided_by_identity_type(Fp, with_tc=False)
        if name is not None:
            best = Step(1, f"{name}_m avoids F': forb(m, F') >= m")
    return best


def _sub_configurations(F: RMatrix):
    """Simple, constant-row-free configurations of F, largest row sets first.

    Row subsets come in decreasing size and, within one, the full column set
    comes first, so callers can stop early.
    """
    S = support(F)
    seen = set()
    for k in range(S.rows, 0, -1):
        for rows in combinations(range(S.rows), k):
            R = S.restrict_rows(rows)
            distinct = sorted(set(R.columns))
            for size in range(len(distinct), 0, -1):
                for sub in combinations(distinct, size):
                    G = RMatrix(k, 2, tuple(sub))
                    if constant_rows(G):
                        continue
                    key = _key(G)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield G


def _best_sub_configuration(F: RMatrix):
    best_sub, best_e = None, None
    for G in _sub_configurations(F):
        if best_e is not None and best_e.exponent >= max(G.rows - 1, 1):
            break  # no configuration on this many rows can do better
        e = two_symbol_lower(G)
        if best_e is None or e.exponent > best_e.exponent:
            best_sub, best_e = G, e
    return best_sub, best_e


# ---------------------------------------------------------------------------
# lower exponent


def lower_steps(F: RMatrix, r: int) -> list[Step]:
    _check(F)
    steps = []
    n0 = max(c.count(0) for c in F.columns)
    n1 = max(c.count(1) for c in F.columns)
    n = max(n0, n1)
    if n >= 2:
        steps.append(Step((n - 1) * (r - 1), "multinomial construction",
                          f"a column holds {n} equal symbols"))
    if F.rows >= 3:
        h = -(-F.rows // 2)
        steps.append(Step((h - 1) * (r - 1), "column majority",
                          f"every column has {h} equal symbols"))
    best_sub, best_e = _best_sub_configuration(F)
    if best_e is not None and best_e.exponent > 0:
        steps.append(Step(best_e.exponent * comb(r, 2), "product construction",
                          f"F' = {best_sub.row_list()}; {best_e.rule}"))
    name = avoided_by_identity_type(F)
    if name is not None:
        steps.append(Step(1, "identity-type construction", f"{name}_m(i,j) avoids Sym(F)"))
    steps.append(Step(0, "one column", "a single constant column avoids Sym(F)"))
    return steps


@lru_cache(maxsize=1024)
def lower_exponent(F: RMatrix, r: int) -> Step:
    return max(lower_steps(F, r), key=lambda s: s.exponent)


# ---------------------------------------------------------------------------
# upper exponent


def _fallback(F: RMatrix, r: int) -> Step:
    k = F.rows
    e = (k - 1) * comb(r, 2)
    if max_multiplicity(F) >= 2:
        e = max(e, k)
    return Step(e, "complete-matrix bound", f"F < s.K_{k}")


def _block_steps(F: RMatrix, r: int) -> list[Step]:
    shape = block_shape(F)
    if shape is None:
        return []
    if shape[0] == "const":
        _, p, q = shape
        if p >= 2:
            return [Step((p - 1) * (r - 1), "constant block count", f"0_({p}x{q})")]
        if q >= 2:
            return [Step(1, "constant block count", f"0_(1x{q}) allows (q-1)(r-1)m + O(1) columns")]
        return []
    if shape[0] == "stack":
        _, p1, p0, q = shape
        p = max(p1, p0)
        if p > 1:
            return [Step((p - 1) * (r - 1), "stacked constant blocks", f"1_({p1}x{q}) over 0_({p0}x{q})")]
        return []
    _, p, q0, q1 = shape
    if p == 1:
        return [Step(1, "side-by-side constant blocks", f"[0_(1x{q0}) 1_(1x{q1})] allows Theta(m) columns")]
    return [Step((p - 1) * comb(r, 2), "side-by-side constant blocks", f"0_({p}x{q0}) 1_({p}x{q1})")]


def _support_steps(F: RMatrix, r: int, depth: int) -> list[Step]:
    mu = max_multiplicity(F)
    if mu < 2:
        return []
    S = support(F)
    if contains_config(S, ZERO_ONE) or contains_config(S, ZERO_OVER_ONE):
        return [Step(1, "repeated tiny support", "supp(F) < [0 1] or [0;1] and mu >= 2")]
    inner = _upper_core(S, r, depth + 1)
    return [Step(max(inner.exponent, F.rows), "support theorem",
                 f"max(upper(supp F) = {inner.exponent}, k = {F.rows})")]


def _certified_steps(F: RMatrix, r: int) -> list[Step]:
    if r < 3:
        return []
    try:
        e, G = certified_upper(F, r)
    except (EnumerationBudget, ValueError):
        return []
    edges = ", ".join(f"{i}{j}x{c}" for i, j, c in G.items()) or "none"
    return [Step(e, "induction certificate",
                 f"every labeled graph with {e} edges is bounded; largest open graph: {edges}")]


def _kr_multiple(F: RMatrix, r: int) -> int | None:
    """Least n with n.K_r certified bounded, if below the multiplicity cap."""
    cert = Certifier(F, r)
    pairs = comb(r, 2)
    for n in range(1, klog2p_cap(F)):
        if cert.bounded(Multigraph(r, (n,) * pairs)):
            return n
    return None


def _cited_steps(F: RMatrix, r: int) -> list[Step]:
    """Closed forms whose proofs choose induction rows per branch (see README)."""
    steps = []
    k = F.rows
    if is_simple(F) and pair_test_condition(F):
        steps.append(Step((k - 2) * comb(r, 2), "pair-test theorem",
                          "simple F with forb(m, F) = O(m^{k-2})", basis="cited"))
    if r >= 3 and F.ncols <= 8:
        n = _kr_multiple(F, r)
        if n is not None and has_01_config(ch_n(F, n + 1)):
            if n == 1 and r == 3:
                e = 3 if bounded_by_identity_triangle(ch(F), two_symbol=True) else 4
            else:
                e = n * comb(r, 2)
            steps.append(Step(e, "repeated complete graph",
                              f"{n}.K_{r} bounded and [0 1] < ch^{n + 1}(F)", basis="cited"))
    if r == 3 and (contains_config(F, F2110) or contains_config(F, complement(F2110))):
        steps.append(Step(4, "F(2,1,1,0) at three symbols",
                          "degree analysis of the induction graph", basis="cited"))
    return steps


def upper_steps(F: RMatrix, r: int, depth: int = 0) -> list[Step]:
    """Every upper rule that applies; cited steps are marked by ``basis``."""
    _check(F)
    if constant_value(F, r) is not None:
        return [Step(0, "constant", f"forb does not grow: value {constant_value(F, r)}")]
    steps = [_fallback(F, r)]
    steps += _block_steps(F, r)
    if depth < 2:
        steps += _support_steps(F, r, depth)
    if F.rows <= 5 and F.ncols <= 8:
        steps += _certified_steps(F, r)
    if depth == 0:
        steps += _cited_steps(F, r)
    return steps


def _upper_core(F: RMatrix, r: int, depth: int = 0) -> Step:
    return min((s for s in upper_steps(F, r, depth) if s.basis == "derived"),
               key=lambda s: s.exponent)


def upper_exponent(F: RMatrix, r: int) -> tuple[int, list[Step]]:
    """Best upper exponent and the steps behind it (best first).

    Cited steps count toward the best value unless they fall below the
    lower exponent, in which case they are kept in the chain as contradicted.
    """
    low = lower_exponent(F, r).exponent if constant_value(F, r) is None else 0
    steps = []
    for s in upper_steps(F, r):
        if s.basis == "cited" and s.exponent < low:
            s = Step(s.exponent, s.rule, s.detail + f" (contradicts lower exponent {low})",
                     basis="contradicted")
        steps.append(s)
    steps.sort(key=lambda s: (s.exponent, s.basis != "derived"))
    best = min(s.exponent for s in steps if s.basis != "contradicted")
    return best, steps


def classify(F: RMatrix, r: int) -> ExponentBound:
    if r < 2:
        raise ValueError("r must be at least 2")
    _check(F)
    cv = constant_value(F, r)
    if cv is not None:
        w = Step(0, "constant", f"forb(m, r, Sym(F)) = {cv}")
        return ExponentBound(0, w, 0, [w], constant_value=cv, derived_upper=0)
    low = lower_exponent(F, r)
    up, chain = upper_exponent(F, r)
    derived = min(s.exponent for s in chain if s.basis == "derived")
    if low.exponent > derived:
        raise AssertionError(f"lower exponent {low.exponent} exceeds upper {derived} for {F}")
    return ExponentBound(low.exponent, low, up, chain, derived_upper=derived)


__all__ = [
    "Step", "ExponentBound", "pair_test_condition", "avoided_by_identity_type", "block_shape",
    "constant_rows", "constant_value", "two_symbol_lower", "lower_steps", "lower_exponent",
    "upper_steps", "upper_exponent", "classify", "QUADRATIC_4ROW",
]
