"""Exact forb(m, r, F) by branch and bound, plus the closed-form evaluators.

The search keeps, for every family member F and every injection of F's rows
into the m rows, the number of columns still missing before F would appear.
Adding a column decrements the states it feeds; a state reaching one missing
column kills every column that could complete it (forward checking).  States
two columns short give pairwise conflicts used by a clique-cover bound.

Optimality is usually proved by an induction upper bound: deleting a row
splits a simple avoider A into its projection A' and, for each symbol pair
i < j, the set C_ij of projections x with both (i;x) and (j;x) in A.  Then
|A| <= forb(m-1, F) + sum_{i<j} forb(m-1, D_ij), where D_ij collects every G
with F < G x [i j].
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import comb, factorial

from .combinatorics import block_formula as _block_formula
from .combinatorics import sauer_formula
from .matrix import (
    ConfigFamily,
    RMatrix,
    config_key,
    contains_config,
    contains_config_naive,
    make_K,
    make_Ks,
    max_multiplicity,
    support,
)

DEFAULT_MAX_UNIVERSE = 2**20


class BudgetError(RuntimeError):
    pass


@dataclass
class ForbResult:
    value: int
    witness: RMatrix
    status: str  # "exact" or "lower-bound-only"
    upper: int
    nodes: int = 0
    seconds: float = 0.0

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    def to_json(self) -> dict:
        return {"value": self.value, "status": self.status, "upper": self.upper,
                "nodes": self.nodes, "seconds": round(self.seconds, 6)}


def family_key(m: int, r: int, members) -> tuple:
    keys = sorted({config_key(F.with_alphabet(r)) for F in members if F.rows <= m})
    return (m, r, tuple(keys))


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# ---------------------------------------------------------------------------
# containment states


class _States:
    """Incremental avoidance bookkeeping over the column universe."""

    def __init__(self, m: int, r: int, members):
        self.universe = list(product(range(r), repeat=m))
        n = len(self.universe)
        reqs = {}
        for F in members:
            if F.rows > m:
                continue
            mult = F.multiplicities()
            for rho in permutations(range(m), F.rows):
                key = frozenset((frozenset(zip(rho, x)), c) for x, c in mult.items())
                if key not in reqs:
                    reqs[key] = (rho, dict(mult))
        self.need: list[list[int]] = []
        self.deficit: list[int] = []
        self.fillers: list[list[int]] = []
        self.incidence: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for rho, mult in reqs.values():
            s = len(self.need)
            pats = list(mult)
            slot_of = {x: k for k, x in enumerate(pats)}
            self.need.append([mult[x] for x in pats])
            self.deficit.append(sum(mult.values()))
            masks = [0] * len(pats)
            for c, col in enumerate(self.universe):
                k = slot_of.get(tuple(col[i] for i in rho))
                if k is not None:
                    masks[k] |= 1 << c
                    self.incidence[c].append((s, k))
            self.fillers.append(masks)
        self.tight = {s for s, d in enumerate(self.deficit) if d == 2}
        self.initial_dead = 0
        for s, d in enumerate(self.deficit):
            if d == 1:
                for k, need in enumerate(self.need[s]):
                    if need:
                        self.initial_dead |= self.fillers[s][k]

    def add(self, c: int):
        """Record column c; returns (killed mask, undo log)."""
        log = []
        dead = 0
        need, deficit, tight = self.need, self.deficit, self.tight
        for s, k in self.incidence[c]:
            if need[s][k] == 0:
                continue
            need[s][k] -= 1
            deficit[s] -= 1
            log.append((s, k))
            d = deficit[s]
            if d == 2:
                tight.add(s)
            elif d == 1:
                tight.discard(s)
                for kk, nn in enumerate(need[s]):
                    if nn:
                        dead |= self.fillers[s][kk]
            elif d == 0:
                raise AssertionError("added a column that completes a forbidden configuration")
        return dead, log

    def undo(self, log) -> None:
        need, deficit, tight = self.need, self.deficit, self.tight
        for s, k in reversed(log):
            need[s][k] += 1
            deficit[s] += 1
            d = deficit[s]
            if d == 2:
                tight.add(s)
            elif d == 3:
                tight.discard(s)

    def clique_cover(self, cand: int) -> int:
        """Upper bound on how many columns of ``cand`` can still be added."""
        if not self.tight:
            return _popcount(cand)
        adj: dict[int, int] = {}
        for s in self.tight:
            slots = [(k, self.fillers[s][k] & cand) for k, nn in enumerate(self.need[s]) if nn]
            if len(slots) == 1:
                X = slots[0][1]
                for v in _bits(X):
                    adj[v] = adj.get(v, 0) | (X & ~(1 << v))
            else:
                (_, X), (_, Y) = slots
                for v in _bits(X):
                    adj[v] = adj.get(v, 0) | Y
                for v in _bits(Y):
                    adj[v] = adj.get(v, 0) | X
        cliques: list[int] = []
        loose = 0
        for v in _bits(cand):
            a = adj.get(v)
            if not a:
                loose += 1
                continue
            bit = 1 << v
            for idx, common in enumerate(cliques):
                if common & bit:
                    cliques[idx] = common & a
                    break
            else:
                cliques.append(a)
        return loose + len(cliques)


# ---------------------------------------------------------------------------
# induction upper bound


def pair_reductions(F: RMatrix, i: int, j: int) -> list[RMatrix]:
    """Minimal-candidate G with F < G x [i j] obtained by deleting one row of F.

    Rows whose entries all lie in {i, j} are deleted; each remaining column
    pattern x keeps multiplicity max(#(i;x), #(j;x)).  The matrix with every
    multiplicity halved (rounded up) covers the case where the new row is unused.
    """
    out = []
    for t in range(F.rows):
        if not all(c[t] in (i, j) for c in F.columns):
            continue
        counts: dict[tuple, list[int]] = {}
        for c in F.columns:
            x = c[:t] + c[t + 1:]
            counts.setdefault(x, [0, 0])[0 if c[t] == i else 1] += 1
        cols = []
        for x, (a, b) in counts.items():
            cols.extend([x] * max(a, b))
        out.append(RMatrix(F.rows - 1, F.alphabet, tuple(cols)))
    mult = F.multiplicities()
    half = []
    for x, c in mult.items():
        half.extend([x] * ((c + 1) // 2))
    out.append(RMatrix(F.rows, F.alphabet, tuple(half)))
    return out


def minimal_members(members) -> list[RMatrix]:
    fam = ConfigFamily(max(F.alphabet for F in members), tuple(members))
    return list(fam.normalize())


def induction_upper_bound(m: int, r: int, members, **kw) -> int:
    """forb(m-1, F) + sum over i<j of forb(m-1, D_ij), each term solved exactly."""
    if m == 0:
        return 1
    members = [F.with_alphabet(r) for F in members]
    total = exact_forb(m - 1, r, members, **kw).upper
    for i, j in combinations(range(r), 2):
        D = [G for F in members for G in pair_reductions(F, i, j)]
        if any(G.ncols == 0 for G in D):
            continue
        D = minimal_members(D)
        total += exact_forb(m - 1, r, D, **kw).upper
    return total


# ---------------------------------------------------------------------------
# exact search

_MEMO: dict[tuple, ForbResult] = {}


def clear_memo() -> None:
    _MEMO.clear()


def _greedy(states: _States, orders) -> list[int]:
    best: list[int] = []
    for order in orders:
        chosen, logs = [], []
        dead = states.initial_dead
        for c in order:
            if dead >> c & 1:
                continue
            killed, log = states.add(c)
            chosen.append(c)
            logs.append(log)
            dead |= killed
        for log in reversed(logs):
            states.undo(log)
        if len(chosen) > len(best):
            best = chosen
    return best


def exact_forb(m: int, r: int, fam, budget_nodes: int | None = None,
               time_limit: float | None = None, max_universe: int = DEFAULT_MAX_UNIVERSE,
               use_induction: bool = True, cache=None, threads: int = 1) -> ForbResult:
    """Maximum number of distinct columns of an m-row r-matrix avoiding every member of fam.

    ``threads`` is accepted for interface compatibility; the search is sequential.
    """
    if r < 2 or m < 0:
        raise ValueError("need r >= 2 and m >= 0")
    members = list(fam)
    for F in members:
        if F.symbols() and max(F.symbols()) >= r:
            raise ValueError("family member uses a symbol outside the alphabet")
    if r**m > max_universe:
        raise BudgetError(f"column universe r^m = {r**m} exceeds {max_universe}")
    key = family_key(m, r, members)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    if cache is not None:
        entry = cache.lookup(m, r, members)
        if entry is not None and entry.get("method") == "exact" and "witness" in entry:
            W = RMatrix(m, r, tuple(tuple(c) for c in entry["witness"]))
            res = ForbResult(entry["value"], W, "exact", entry["value"])
            _MEMO[key] = res
            return res

    t0 = time.perf_counter()
    live = [F.with_alphabet(r) for F in members if F.rows <= m]
    states = _States(m, r, live)
    n = len(states.universe)
    upper = n - _popcount(states.initial_dead)
    zero_row = [F.ncols for F in live if F.rows == 0]
    if zero_row:
        upper = min(upper, min(zero_row) - 1)
    upper = max(upper, 0)

    weight = [sum(1 for x in col if x) for col in states.universe]
    lex = list(range(n))
    orders = [sorted(lex, key=lambda c: (weight[c], c)),
              sorted(lex, key=lambda c: (-weight[c], c)),
              lex, lex[::-1]]
    best = _greedy(states, orders)
    if len(best) < upper and use_induction and m > 0:
        upper = min(upper, induction_upper_bound(m, r, live, budget_nodes=budget_nodes,
                                                  time_limit=time_limit,
                                                  max_universe=max_universe))

    nodes = 0
    exhausted = False
    best_set = list(best)
    deadline = None if time_limit is None else t0 + time_limit

    def dfs(chosen: list[int], cand: int) -> bool:
        # returns True to abort the whole search
        nonlocal nodes, best_set, exhausted
        nodes += 1
        if budget_nodes is not None and nodes > budget_nodes:
            exhausted = True
            return True
        if deadline is not None and nodes % 256 == 0 and time.perf_counter() > deadline:
            exhausted = True
            return True
        if cand == 0:
            if len(chosen) > len(best_set):
                best_set = list(chosen)
            return len(best_set) >= upper
        if len(chosen) + _popcount(cand) <= len(best_set):
            return False
        if len(chosen) + states.clique_cover(cand) <= len(best_set):
            return False
        low = cand & -cand
        v = low.bit_length() - 1
        killed, log = states.add(v)
        chosen.append(v)
        stop = dfs(chosen, cand & ~low & ~killed)
        chosen.pop()
        states.undo(log)
        if stop:
            return True
        return dfs(chosen, cand & ~low)

    if len(best_set) < upper:
        full = (1 << n) - 1
        dfs([], full & ~states.initial_dead)
    value = len(best_set)
    if not exhausted:
        upper = value
    status = "exact" if value == upper else "lower-bound-only"
    W = RMatrix(m, r, tuple(states.universe[c] for c in sorted(best_set)))
    res = ForbResult(value, W, status, upper, nodes, time.perf_counter() - t0)
    if res.exact:
        _MEMO[key] = res
        if cache is not None:
            cache.record(m, r, members, value, "exact", witness=W)
    return res


def forb_value(m: int, r: int, fam, **kw) -> int:
    res = exact_forb(m, r, fam, **kw)
    if not res.exact:
        raise BudgetError(f"search budget exhausted (best {res.value}, upper {res.upper})")
    return res.value


def naive_forb(m: int, r: int, fam, limit: int = 2_000_000) -> int:
    """Reference value: walk avoiding column sets (closed under subsets), skipping branches too short to win."""
    members = list(fam)
    universe = list(product(range(r), repeat=m))
    best = 0
    visited = 0

    def avoids(cols) -> bool:
        A = RMatrix(m, r, tuple(cols))
        return not any(contains_config_naive(F.with_alphabet(r), A) for F in members)

    stack = [((), 0)]
    while stack:
        cols, start = stack.pop()
        visited += 1
        if visited > limit:
            raise BudgetError("naive enumeration limit reached")
        best = max(best, len(cols))
        if len(cols) + len(universe) - start <= best:
            continue
        for idx in range(start, len(universe)):
            nxt = cols + (universe[idx],)
            if avoids(nxt):
                stack.append((nxt, idx + 1))
    return best


def copy_sets_forb(m: int, r: int, fam) -> int:
    """Second reference built from the list of column sets that carry a copy of a member.

    A member with c columns sits in a simple matrix only through c distinct
    columns, so every such c-set is found once with the naive containment
    check.  The avoiders are then the column sets containing none of them; the
    largest is found by include/exclude branching with a remaining-candidates bound.
    """
    members = [F.with_alphabet(r) for F in fam if F.rows <= m]
    universe = list(product(range(r), repeat=m))
    n = len(universe)
    if any(F.ncols == 0 for F in members):
        return 0
    edges = set()
    for F in members:
        for S in combinations(range(n), F.ncols):
            A = RMatrix(m, r, tuple(universe[i] for i in S))
            if contains_config_naive(F, A):
                edges.add(sum(1 << i for i in S))
    through = [[e for e in edges if e >> v & 1] for v in range(n)]
    best = [0]

    def rec(chosen: int, cand: int, size: int):
        if size > best[0]:
            best[0] = size
        if size + _popcount(cand) <= best[0]:
            return
        v = (cand & -cand).bit_length() - 1
        bit = 1 << v
        rest = cand & ~bit
        # take v: drop every candidate that would finish a copy
        if not any(e & ~(chosen | bit) == 0 for e in through[v]):
            now = chosen | bit
            keep = rest
            for e in through[v]:
                left = e & ~now
                if left and left & (left - 1) == 0:
                    keep &= ~left
            rec(now, keep, size + 1)
        rec(chosen, rest, size)

    rec(0, (1 << n) - 1, 0)
    return best[0]


# ---------------------------------------------------------------------------
# closed forms and checks


def ks_equality_check(m: int, k: int, s: int, **kw) -> bool:
    if not 0 <= s <= k:
        raise ValueError("need 0 <= s <= k")
    return forb_value(m, 2, [make_Ks(k, s)], **kw) == sauer_formula(m, k)


def sauer_check(m: int, k: int, **kw) -> bool:
    return forb_value(m, 2, [make_K(k)], **kw) == sauer_formula(m, k)


def support_bound(m: int, r: int, F: RMatrix, forb_supp: int) -> int:
    """forb(Sym(supp F)) + C(m,k) C(r,2) (mu-1) k! s for a k-row F."""
    k = F.rows
    mu = max_multiplicity(F)
    s = support(F).ncols
    return forb_supp + comb(m, k) * comb(r, 2) * (mu - 1) * factorial(k) * s


def block_formula(m: int, r: int, p: int, q: int) -> int:
    return _block_formula(m, r, p, q)


def s_block_threshold(r: int, p: int, q: int) -> int:
    return r ** (r * (q - 1)) * (p - 1) + 1


@dataclass
class SBlockValue:
    value: int
    suspicious: bool
    note: str


def s_block_value(m: int, r: int, p: int, q: int) -> SBlockValue:
    """r(q-1) for the all-constant-block family, valid only above the size threshold."""
    if p < 2 or r < 3 or q < 1:
        raise ValueError("s-block value needs p >= 2, r >= 3, q >= 1")
    need = s_block_threshold(r, p, q)
    if m < need:
        raise ValueError(f"m = {m} is below the threshold {need}; the value may differ there")
    if q == 1:
        return SBlockValue(0, True, "q = 1 forbids every column with p equal entries; "
                                    "columns with p-1 copies of each symbol survive for small m")
    return SBlockValue(r * (q - 1), False, "")


def induction_inequality_check(m: int, F: RMatrix, **kw) -> tuple[bool, int, int, int]:
    """forb(m, F) <= forb(m-1, ch F) + forb(m-1, F), all over two symbols.

    Returns (holds, lhs, ch term, F term).
    """
    from .induction import ch
    lhs = forb_value(m, 2, [F], **kw)
    chs = ch(F)
    a = forb_value(m - 1, 2, chs, **kw) if chs else 2 ** (m - 1)
    b = forb_value(m - 1, 2, [F], **kw)
    return lhs <= a + b, lhs, a, b
