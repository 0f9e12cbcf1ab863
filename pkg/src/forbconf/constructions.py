"""Lower-bound constructions and their machine verification."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb, prod
from typing import Any

from .combinatorics import multinomial_sum
from .matrix import (
    ConfigFamily,
    RMatrix,
    direct_product,
    family_avoided,
    is_simple,
    make_block_side,
    make_const,
    make_I,
    make_Ks,
    relabel,
    s_family,
    sym_family,
)

DEFAULT_COLUMN_BUDGET = 10**6


class ConstructionError(ValueError):
    pass


def _check_budget(count: int, budget: int) -> None:
    if count > budget:
        raise ConstructionError(f"construction would have {count} columns, budget is {budget}")


def product_construction(A2: RMatrix, r: int, budget: int = DEFAULT_COLUMN_BUDGET) -> RMatrix:
    """Direct product of A2(i, j) over all symbol pairs i < j."""
    if A2.alphabet != 2:
        raise ConstructionError("product construction takes a (0,1)-matrix")
    if not is_simple(A2):
        raise ConstructionError("product construction needs a simple matrix")
    pairs = list(combinations(range(r), 2))
    _check_budget(A2.ncols ** len(pairs), budget)
    out = RMatrix.empty(1, alphabet=r)
    for i, j in pairs:
        out = direct_product(out, relabel(A2, i, j, r))
    return out


def multinomial_construction(m: int, r: int, n: int, free: int = 0,
                             budget: int = DEFAULT_COLUMN_BUDGET) -> RMatrix:
    """All length-m columns in which every symbol other than ``free`` occurs at most n-1 times.

    ``free=0`` is the construction against a column with n ones; ``free=r-1`` the
    symmetric one against n zeros.
    """
    if n < 2 or r < 2:
        raise ConstructionError("multinomial construction needs n >= 2 and r >= 2")
    if not 0 <= free < r:
        raise ConstructionError("free symbol outside the alphabet")
    _check_budget(multinomial_sum(m, r, n), budget)
    cols = []
    for c in product(range(r), repeat=m):
        counts = [0] * r
        for x in c:
            counts[x] += 1
        if all(counts[s] < n for s in range(r) if s != free):
            cols.append(c)
    return RMatrix(m, r, tuple(cols))


def block_exact_construction(m: int, r: int, p: int, q: int,
                             budget: int = DEFAULT_COLUMN_BUDGET) -> RMatrix:
    """Extremal matrix for Sym(0_{p x q}); symbol r-1 plays the unrestricted role."""
    if r < 3 or p < 1 or q < 1:
        raise ConstructionError("block construction needs r >= 3, p >= 1, q >= 1")
    if m < (p - 1) * (r - 1) or m < p:
        raise ConstructionError("block construction needs m >= max(p, (p-1)(r-1))")
    # with p = 1 and q >= 3 the marks collide and repeat symbols; built as
    # described anyway so verification can report it
    free = r - 1
    if p == 1:
        base = RMatrix(m, r, ((free,) * m,))
    else:
        base = multinomial_construction(m, r, p, free=free, budget=budget)
    extra_count = (q - 1) * (r - 1) * comb(m, p)
    _check_budget(base.ncols + extra_count, budget)
    extra = []
    for R in combinations(range(m), p):
        others = [x for x in range(m) if x not in R]
        for i in range(r - 1):
            marks = [(x, d) for x in others for d in range(r - 1) if d != i]
            if q - 2 > len(marks):
                raise ConstructionError("not enough rows to make the block columns distinct")
            for j in range(q - 1):
                col = [free] * m
                for x in R:
                    col[x] = i
                if j:
                    x, d = marks[j - 1]
                    col[x] = d
                extra.append(tuple(col))
    return RMatrix(m, r, base.columns + tuple(extra))


def s_block_construction(m: int, r: int, q: int) -> RMatrix:
    """q-1 near-constant columns for every symbol."""
    if m < 2 or r < 2 or q < 1:
        raise ConstructionError("s-block construction needs m >= 2, r >= 2, q >= 1")
    if q - 1 > m:
        raise ConstructionError("s-block construction needs q - 1 <= m")
    cols = []
    for i in range(r):
        for j in range(q - 1):
            col = [i] * m
            col[j] = (i + 1) % r
            cols.append(tuple(col))
    return RMatrix(m, r, tuple(cols))


def ks_chain_construction(m: int, p: int) -> RMatrix:
    if p < 1:
        raise ConstructionError("p must be at least 1")
    if p - 1 > m:
        raise ConstructionError("column sum p-1 exceeds the row count")
    return make_Ks(m, p - 1)


def identity_construction(m: int, r: int, diag: int = 1, off: int = 0) -> RMatrix:
    return relabel(make_I(m), off, diag, r)


# ---------------------------------------------------------------------------
# descriptors

KINDS = ("product", "multinomial", "block-exact", "identity", "chain-of-Ks", "s-block", "custom")


@dataclass
class ConstructionDescriptor:
    kind: str
    params: dict[str, Any]
    claimed_family: ConfigFamily
    claimed_count: int
    matrix: RMatrix | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConstructionError(f"unknown construction kind {self.kind!r}")

    def build(self) -> RMatrix:
        if self.matrix is not None:
            return self.matrix
        p = self.params
        if self.kind == "product":
            return product_construction(p["avoider"], p["r"])
        if self.kind == "multinomial":
            return multinomial_construction(p["m"], p["r"], p["n"], p.get("free", 0))
        if self.kind == "block-exact":
            return block_exact_construction(p["m"], p["r"], p["p"], p["q"])
        if self.kind == "s-block":
            return s_block_construction(p["m"], p["r"], p["q"])
        if self.kind == "chain-of-Ks":
            return ks_chain_construction(p["m"], p["p"])
        if self.kind == "identity":
            return identity_construction(p["m"], p["r"], p.get("diag", 1), p.get("off", 0))
        raise ConstructionError("custom descriptors must carry their matrix")

    def to_json(self) -> dict:
        from .matrix import to_text
        params = {k: (to_text(v) if isinstance(v, RMatrix) else v) for k, v in self.params.items()}
        return {
            "kind": self.kind,
            "params": params,
            "claimed_count": self.claimed_count,
            "claimed_family": [to_text(F) for F in self.claimed_family],
        }


@dataclass
class VerificationReport:
    kind: str
    params: dict
    rows: int
    columns: int
    claimed_count: int
    simple: bool
    count_matches: bool
    avoids: bool
    seconds: float
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "rows": self.rows,
            "columns": self.columns,
            "claimed_count": self.claimed_count,
            "simple": self.simple,
            "count_matches": self.count_matches,
            "avoids": self.avoids,
            "passed": self.passed,
            "failures": self.failures,
            "seconds": round(self.seconds, 6),
        }


def verify_construction(d: ConstructionDescriptor) -> VerificationReport:
    t0 = time.perf_counter()
    try:
        A = d.build()
    except ConstructionError as exc:
        params = {k: v for k, v in d.params.items() if not isinstance(v, RMatrix)}
        return VerificationReport(d.kind, params, 0, 0, d.claimed_count, False, False, False,
                                  time.perf_counter() - t0, [f"cannot build: {exc}"])
    simple = is_simple(A)
    count_ok = A.ncols == d.claimed_count
    avoids = family_avoided(A, d.claimed_family)
    failures = []
    if not simple:
        failures.append("generated matrix has repeated columns")
    if not count_ok:
        failures.append(f"count mismatch: built {A.ncols}, claimed {d.claimed_count}")
    if not avoids:
        failures.append("generated matrix contains a member of the claimed family")
    params = {k: v for k, v in d.params.items() if not isinstance(v, RMatrix)}
    return VerificationReport(d.kind, params, A.rows, A.ncols, d.claimed_count, simple,
                              count_ok, avoids, time.perf_counter() - t0, failures)


# descriptor factories -------------------------------------------------------

def product_descriptor(avoider: RMatrix, F: RMatrix, r: int) -> ConstructionDescriptor:
    k = comb(r, 2)
    return ConstructionDescriptor("product", {"avoider": avoider, "r": r, "m": avoider.rows * k},
                                  sym_family(F, r), avoider.ncols ** k)


def column_extremes(F: RMatrix) -> tuple[int, int]:
    """(most 0's in a column, most 1's in a column) of a (0,1)-matrix."""
    n0 = max((c.count(0) for c in F.columns), default=0)
    n1 = max((c.count(1) for c in F.columns), default=0)
    return n0, n1


def multinomial_descriptor(m: int, r: int, F: RMatrix) -> ConstructionDescriptor:
    n0, n1 = column_extremes(F)
    n = max(n0, n1)
    if n < 2:
        raise ConstructionError("multinomial construction needs a column with two equal entries")
    free = 0 if n1 >= n0 else r - 1
    return ConstructionDescriptor("multinomial", {"m": m, "r": r, "n": n, "free": free},
                                  sym_family(F, r), multinomial_sum(m, r, n))


def block_descriptor(m: int, r: int, p: int, q: int) -> ConstructionDescriptor:
    from .combinatorics import block_formula
    return ConstructionDescriptor("block-exact", {"m": m, "r": r, "p": p, "q": q},
                                  sym_family(make_const(p, q, 0), r), block_formula(m, r, p, q))


def s_block_descriptor(m: int, r: int, p: int, q: int) -> ConstructionDescriptor:
    return ConstructionDescriptor("s-block", {"m": m, "r": r, "p": p, "q": q},
                                  s_family(make_const(p, q, 0), r), r * (q - 1))


def ks_chain_descriptor(m: int, p: int) -> ConstructionDescriptor:
    return ConstructionDescriptor("chain-of-Ks", {"m": m, "p": p},
                                  ConfigFamily.of(make_block_side(p, 1, 1)), comb(m, p - 1))


def identity_descriptor(m: int, r: int, F: RMatrix, diag: int = 1, off: int = 0) -> ConstructionDescriptor:
    return ConstructionDescriptor("identity", {"m": m, "r": r, "diag": diag, "off": off},
                                  sym_family(F, r), m)


def custom_descriptor(A: RMatrix, fam: ConfigFamily, claimed: int | None = None) -> ConstructionDescriptor:
    return ConstructionDescriptor("custom", {"m": A.rows, "r": A.alphabet}, fam,
                                  A.ncols if claimed is None else claimed, matrix=A)


PRODUCT_CORPUS = (
    ("I_2", ((0, 1), (1, 0))),
    ("[01;01]", ((0, 1), (0, 1))),
    ("K_2", ((0, 0, 1, 1), (0, 1, 0, 1))),
    ("[01]", ((0, 1),)),
    ("I_3", ((1, 0, 0), (0, 1, 0), (0, 0, 1))),
)


def construction_grid(max_m: int = 8, max_r: int = 4, max_param: int = 3):
    """Every generator over m <= max_m, r <= max_r and n, p, q <= max_param.

    Yields (label, descriptor).  Points outside a generator's stated domain
    are skipped; everything inside is yielded, including cases the closed
    forms get wrong.
    """
    from .solver import exact_forb
    params = range(1, max_param + 1)
    for r in range(2, max_r + 1):
        for m in range(1, max_m + 1):
            for n in params:
                if n >= 2:
                    yield f"multinomial m={m} r={r} n={n}", multinomial_descriptor(m, r, make_const(n, 1, 1))
                    yield f"multinomial-zeros m={m} r={r} n={n}", multinomial_descriptor(m, r, make_const(n, 1, 0))
            for p in params:
                for q in params:
                    if r >= 3 and m >= max(p, (p - 1) * (r - 1)):
                        yield f"block-exact m={m} r={r} p={p} q={q}", block_descriptor(m, r, p, q)
                    if r >= 3 and p >= 2 and m >= 2 and q - 1 <= m:
                        yield f"s-block m={m} r={r} p={p} q={q}", s_block_descriptor(m, r, p, q)
                if p - 1 <= m:
                    yield f"chain-of-Ks m={m} p={p}", ks_chain_descriptor(m, p)
            for name, rows in (("[011]", ((0, 1, 1),)), ("[1;1]", ((1,), (1,)))):
                F = RMatrix.from_rows(rows, 2)
                if F.rows <= m:
                    yield f"identity m={m} r={r} F={name}", identity_descriptor(m, r, F)
        pairs = comb(r, 2)
        for name, rows in PRODUCT_CORPUS:
            F = RMatrix.from_rows(rows, 2)
            for k in params:
                if k * pairs <= max_m and k >= F.rows:
                    A2 = exact_forb(k, 2, [F]).witness
                    yield f"product rows={k} r={r} F={name}", product_descriptor(A2, F, r)


def claimed_product_count(avoider_cols: int, r: int) -> int:
    return prod([avoider_cols] * comb(r, 2))
