"""Order-independent certification of bounded induction nodes.

Inducting along the edges of a labeled multigraph G (in any order, on any
rows) leaves a matrix that avoids every H with F(i,j) < H x P_G for some
i < j, where P_G is the direct product of [a b] over the edges (a, b) of G.
Going back up from a column of the node rebuilds that product, so this
holds no matter which rows were chosen.

The node is bounded by a constant exactly when every I_l(a, b) and
T_l(a, b) over ordered symbol pairs a != b contains such an H, because any
r-matrix with enough columns contains one of them.  Containment in
X x P_G is decided structurally: rows of F go either to rows of X or to
edges of G, X's columns restricted to a few rows come in a handful of
patterns, and P_G holds every combination of its rows.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .matrix import RMatrix, relabel
from .multigraph import EnumerationBudget, Multigraph, pair_index


def _pairs(r: int) -> list[tuple[int, int]]:
    return list(combinations(range(r), 2))


def _assignments(rowsets, slots, x_symbols):
    """Map each row to 'X' or to an edge slot whose symbols cover it.

    ``slots`` maps (u, v) to its remaining multiplicity.  Yields
    (x_rows, used_edge_count) for every feasible assignment.
    """
    k = len(rowsets)
    x_rows: list[int] = []
    cap = dict(slots)

    def rec(t: int, used: int):
        if t == k:
            yield tuple(x_rows), used
            return
        s = rowsets[t]
        if x_symbols is not None and s <= x_symbols:
            x_rows.append(t)
            yield from rec(t + 1, used)
            x_rows.pop()
        for e, c in cap.items():
            if c and s <= set(e):
                cap[e] = c - 1
                yield from rec(t + 1, used + 1)
                cap[e] = c

    yield from rec(0, 0)


def _x_fits(cols, x_rows, kind: str, b: int, free: int) -> bool:
    """Do the columns fit in I(a,b) or T(a,b) on ``x_rows`` times the edge product?"""
    if kind is None:
        # a single node column times P_G: repeated columns need free edge rows
        counts: dict[tuple, int] = {}
        for c in cols:
            counts[c] = counts.get(c, 0) + 1
        return all(n <= 2 ** free for n in counts.values())
    if not x_rows:
        return True
    bsets = [frozenset(t for t in x_rows if c[t] == b) for c in cols]
    if kind == "T":
        chain = sorted(set(bsets), key=len)
        return all(x <= y for x, y in zip(chain, chain[1:]))
    # identity: at most one b among the X rows; each single-b pattern is one X column
    if any(len(s) > 1 for s in bsets):
        return False
    counts = {}
    for c, s in zip(cols, bsets):
        if s:
            counts[c] = counts.get(c, 0) + 1
    return all(n <= 2 ** free for n in counts.values())


def product_contains(Fij: RMatrix, edges: dict, kind: str | None, a: int = 0, b: int = 1) -> bool:
    """Fij < X x P_G with X one of None (many copies of P_G), 'I' or 'T' on symbols (a, b).

    ``edges`` maps (u, v) with u < v to its multiplicity.
    """
    rowsets = [set(Fij.row(t)) for t in range(Fij.rows)]
    total = sum(edges.values())
    xs = None if kind is None else {a, b}
    for x_rows, used in _assignments(rowsets, {e: c for e, c in edges.items() if c}, xs):
        if kind is None and x_rows:
            continue
        if _x_fits(Fij.columns, x_rows, kind, b, total - used):
            return True
    return False


@dataclass
class Certifier:
    """Decides, for labeled multigraphs on r symbols, whether F bounds the induction node."""
    F: RMatrix
    r: int

    def __post_init__(self):
        if self.F.alphabet != 2:
            raise ValueError("F must be a (0,1)-matrix")
        self._rel = [relabel(self.F, i, j, self.r) for i, j in _pairs(self.r)]
        self._memo: dict[tuple, bool] = {}

    def _edges(self, G: Multigraph) -> dict:
        return {(i, j): c for i, j, c in G.items()}

    def empty_by_product(self, G: Multigraph) -> bool:
        """Some F(i,j) sits in copies of P_G, so the node has O(1) columns outright."""
        edges = self._edges(G)
        return any(product_contains(Fij, edges, None) for Fij in self._rel)

    def bounded(self, G: Multigraph) -> bool:
        key = G.mult
        if key in self._memo:
            return self._memo[key]
        edges = self._edges(G)
        ok = self.empty_by_product(G) or all(
            any(product_contains(Fij, edges, kind, a, b) for Fij in self._rel)
            for a, b in product(range(self.r), repeat=2) if a != b
            for kind in ("I", "T")
        )
        self._memo[key] = ok
        return ok


def certified_ex(F: RMatrix, r: int, q: int, max_states: int = 200_000) -> tuple[int, Multigraph]:
    """Most edges of a labeled multigraph (multiplicity <= q) whose node is not certified bounded."""
    cert = Certifier(F, r)
    pairs = r * (r - 1) // 2
    start = Multigraph(r, (0,) * pairs)
    if cert.bounded(start):
        raise ValueError("F is avoided only by boundedly many columns")
    level = {start.mult: start}
    best = start
    seen = 0
    while level:
        nxt: dict[tuple, Multigraph] = {}
        for G in level.values():
            for k in range(pairs):
                if G.mult[k] >= q:
                    continue
                vec = list(G.mult)
                vec[k] += 1
                key = tuple(vec)
                if key in nxt:
                    continue
                seen += 1
                if seen > max_states:
                    raise EnumerationBudget(f"more than {max_states} graphs examined")
                H = Multigraph(r, key)
                if not cert.bounded(H):
                    nxt[key] = H
        if nxt:
            best = next(iter(nxt.values()))
        level = nxt
    return best.edges, best


def certified_upper(F: RMatrix, r: int, q: int | None = None, **kw) -> tuple[int, Multigraph]:
    """Exponent 1 + (most edges of an uncertified induction graph)."""
    from .induction import klog2p_cap
    if q is None:
        q = klog2p_cap(F) - 1
    ex, G = certified_ex(F, r, q, **kw)
    return 1 + ex, G


def member_certified(F: RMatrix, r: int, H: Multigraph) -> bool:
    """An unlabeled pattern H is safe to forbid when every placement on the r symbols is bounded."""
    from itertools import permutations
    if H.n > r:
        return False
    cert = Certifier(F, r)
    idx = pair_index(r)
    for img in permutations(range(r), H.n):
        vec = [0] * len(idx)
        for i, j, c in H.items():
            u, v = sorted((img[i], img[j]))
            vec[idx[(u, v)]] += c
        if not cert.bounded(Multigraph(r, tuple(vec))):
            return False
    return True


def audit_h_family(F: RMatrix, r: int) -> list[tuple[str, str, bool | None]]:
    """(member, rule, certified) for each member of the rule-based family.

    Predicate members have no fixed graph and report None.
    """
    from .induction import h_family
    H = h_family(F, r)
    rules = dict(H.log)
    out = []
    for mem in H.family:
        ok = None if mem.graph is None else member_certified(F, r, mem.graph)
        out.append((mem.name, rules.get(mem.name, ""), ok))
    return out


__all__ = ["Certifier", "product_contains", "certified_ex", "certified_upper", "member_certified",
           "audit_h_family"]
