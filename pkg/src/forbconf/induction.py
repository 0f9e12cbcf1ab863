"""Standard induction on (0,1)-configurations and the forbidden induction graphs.

ch(F) is the set of minimal G < F with F < G x [0 1].  Deleting a row t of F
whose remaining column pattern x appears n0 times over a 0 and n1 times over a
1 forces G to hold x at least max(n0, n1) times; if the new row is not used,
G must hold every column at least ceil(mu/2) times.  Every valid G contains one
of these candidates, so ch(F) is the set of minimal candidates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from .combinatorics import ceil_log2
from .matrix import (
    RMatrix,
    complement,
    config_canonical,
    config_key,
    contains_config,
    make_F_abcd,
    make_I,
    make_K,
    make_T,
    max_multiplicity,
    stack_constant_row,
)
from .multigraph import (
    GraphFamily,
    Member,
    Multigraph,
    complete,
    cycle,
    frak_c,
    frak_d,
    gamma,
    multi_edge,
    path,
    star,
)

ZERO_ONE = RMatrix.from_rows([[0, 1]], 2)


def ch_candidates(F: RMatrix) -> list[RMatrix]:
    out = []
    for t in range(F.rows):
        counts: dict[tuple, list[int]] = {}
        for c in F.columns:
            counts.setdefault(c[:t] + c[t + 1:], [0, 0])[c[t]] += 1
        cols = []
        for x, (a, b) in counts.items():
            cols.extend([x] * max(a, b))
        out.append(RMatrix(F.rows - 1, 2, tuple(cols)))
    half = []
    for x, c in F.multiplicities().items():
        half.extend([x] * ((c + 1) // 2))
    out.append(RMatrix(F.rows, 2, tuple(half)))
    return out


def _dedupe(mats) -> list[RMatrix]:
    seen = {}
    for G in mats:
        seen.setdefault(config_key(G), config_canonical(G))
    return [seen[k] for k in sorted(seen, key=repr)]


def _minimal(mats) -> list[RMatrix]:
    mats = _dedupe(mats)
    keep = []
    for G in mats:
        kg = config_key(G)
        if not any(config_key(H) != kg and contains_config(H, G) for H in mats):
            keep.append(G)
    return keep


def ch(F: RMatrix) -> list[RMatrix]:
    if F.alphabet != 2:
        raise ValueError("ch is defined for (0,1)-matrices")
    if F.rows == 0:
        return []
    return _minimal(ch_candidates(F))


def ch_n(F: RMatrix, n: int) -> list[RMatrix]:
    if n < 1:
        raise ValueError("n must be at least 1")
    level = ch(F)
    for _ in range(n - 1):
        level = _dedupe([H for G in level for H in ch(G)])
    return level


def ch_chain(F: RMatrix, depth: int) -> list[list[RMatrix]]:
    """[ch^1(F), ..., ch^depth(F)]"""
    out = []
    level = [F]
    for _ in range(depth):
        level = _dedupe([H for G in level for H in ch(G)])
        out.append(level)
    return out


def has_01_config(members) -> bool:
    """Some member with at least one row is a configuration of [0 1]."""
    return any(G.rows >= 1 and contains_config(G, ZERO_ONE) for G in members)


def has_symbol(members, sym: int) -> bool:
    """Some member is a configuration of the 1x1 matrix [sym]."""
    single = RMatrix(1, 2, ((sym,),))
    return any(G.rows >= 1 and contains_config(G, single) for G in members)


def _ell(members) -> int:
    return max((G.rows + G.ncols for G in members), default=2) + 1


def bounded_by_identity_triangle(members, two_symbol: bool = False) -> bool:
    """Certify forb(m, r, Sym(members)) = O(1) via the I_l / T_l criterion.

    Every member of S(I_l, T_l) must contain a member of Sym(members), which
    holds when some member lies in each of I_l, I_l^c, T_l, T_l^c.  With
    ``two_symbol`` the plain 2-symbol criterion (I_l, I_l^c, T_l) is used.
    """
    members = [G for G in members if G.rows >= 1]
    if not members:
        return False
    ell = _ell(members)
    I, T = make_I(ell), make_T(ell)
    targets = [I, complement(I), T] + ([] if two_symbol else [complement(T)])
    return all(any(contains_config(G, X) for G in members) for X in targets)


def klog2p_cap(F: RMatrix) -> int:
    return F.rows + ceil_log2(max(1, max_multiplicity(F)))


# ---------------------------------------------------------------------------
# curated configurations and their hand-derived graph exclusions

L7 = RMatrix.from_rows([[1, 1], [0, 1], [0, 0]], 2)
P_MATRIX = RMatrix.from_rows([[1, 1], [1, 1], [0, 1]], 2)
F1111 = make_F_abcd(1, 1, 1, 1)
F2110 = make_F_abcd(2, 1, 1, 0)
T2 = make_T(2)


def one_over_K(k: int) -> RMatrix:
    """A row of 1's on top of K_{k-1}."""
    return stack_constant_row(make_K(k - 1), 1)


def _no_isolated(G: Multigraph) -> bool:
    return all(G.degree(v) > 0 for v in range(G.n))


def _ordered_star(G: Multigraph) -> bool:
    # a vertex j of degree >= 3 with an edge to some smaller vertex
    return any(G.degree(j) >= 3 and any(G.edge(i, j) for i in range(j)) for j in range(G.n))


def _vertex_degree_at_least(v: int, d: int):
    return lambda G: v < G.n and G.degree(v) >= d


def _covering(n: int, r: int):
    def pred(G: Multigraph) -> bool:
        touched = set()
        for i, j, c in G.items():
            if c >= n:
                touched.update((i, j))
        return len(touched) >= r - 1
    return pred


@dataclass
class CuratedEntry:
    matrix: RMatrix
    name: str
    members: callable  # r -> list[Member]
    k_r_multiple: int | None = None  # n with n.K_r in the family
    citation: str = ""


def _t2_members(r):
    cite = "T_2: paths on four vertices and triangles force an empty matrix"
    return [Member("P_4", graph=path(4), citation=cite), Member("K_3", graph=complete(3), citation=cite)]


def _f1111_members(r):
    cite = "F_(1,1,1,1): built from an I_2 on the double edge plus two further edges"
    out = [Member("C_2", graph=frak_c(2), citation=cite), Member("D_2", graph=frak_d(2), citation=cite),
           Member("Gamma_3", graph=gamma(3), citation=cite)]
    if r == 4:
        out.append(Member("2.S_3", graph=star(3, 2), citation="F_(1,1,1,1): pigeonhole on three leaf symbols at r = 4"))
    return out


def _l7_members(r):
    cite = "L7: F(i,j) < [i j] x [i *] x [j *]"
    return [Member("C_1", graph=frak_c(1), citation=cite), Member("D_1", graph=frak_d(1), citation=cite),
            Member("Gamma_2", graph=gamma(2), citation=cite),
            Member(f"S_{r-1}", graph=star(r - 1), citation="L7: any star forces a constant matrix"),
            Member("no isolated vertex", predicate=_no_isolated,
                   citation="L7: with every degree positive two columns rebuild F")]


def _p_members(r):
    return [Member("ordered S_3", predicate=_ordered_star, labeled=True,
                   citation="P: a vertex with three incident edges, one to a smaller symbol")]


def _f2110_members(r):
    if r != 3:
        return []
    cite = "F_{2,1,1,0} at r = 3: four levels always close"
    return [Member("D_2", graph=frak_d(2), citation=cite + " (triangle plus an edge)"),
            Member("deg(2) >= 4", predicate=_vertex_degree_at_least(2, 4), labeled=True, citation=cite),
            Member("deg(1) >= 4", predicate=_vertex_degree_at_least(1, 4), labeled=True, citation=cite),
            Member("deg(0) >= 4", predicate=_vertex_degree_at_least(0, 4), labeled=True,
                   citation=cite + "; (01)(02)^3 by exchanging symbols 1 and 2")]


def _one_over_k_members(k):
    def members(r):
        return [Member(f"{k-2}.K_{r}", graph=complete(r, k - 2),
                       citation="[1..1 over K]: two columns give [i j] and rebuild F(i,j)")]
    return members


CURATED = [
    CuratedEntry(T2, "T_2", _t2_members),
    CuratedEntry(F1111, "F_{1,1,1,1}", _f1111_members),
    CuratedEntry(L7, "L7", _l7_members),
    CuratedEntry(P_MATRIX, "P", _p_members),
    CuratedEntry(F2110, "F_{2,1,1,0}", _f2110_members),
    CuratedEntry(one_over_K(3), "[1;K_2]", _one_over_k_members(3), k_r_multiple=1),
    CuratedEntry(one_over_K(4), "[1;K_3]", _one_over_k_members(4), k_r_multiple=2),
]


def curated_entry(F: RMatrix) -> CuratedEntry | None:
    key = config_key(F)
    for e in CURATED:
        if config_key(e.matrix) == key:
            return e
    return None


# ---------------------------------------------------------------------------
# the forbidden-graph family


@dataclass
class HFamily:
    family: GraphFamily
    cap: int
    k_r_multiples: set[int] = field(default_factory=set)
    log: list[tuple[str, str]] = field(default_factory=list)

    @property
    def q(self) -> int:
        return self.cap - 1


def h_family(F: RMatrix, r: int) -> HFamily:
    if r < 3:
        raise ValueError("the induction graph needs r >= 3")
    fam = GraphFamily()
    cap = klog2p_cap(F)
    out = HFamily(fam, cap)

    def add(member: Member, rule: str):
        before = len(fam)
        fam.add(member)
        if len(fam) > before:
            out.log.append((member.name, rule))

    add(Member(f"{cap}.(ij)", graph=multi_edge(cap)), "one pair inducted k + ceil(log2 p) times leaves nothing")
    level = [F]
    for n in range(1, cap):
        level = _dedupe([H for G in level for H in ch(G)])
        if not level:
            break
        if has_01_config(level):
            rule = f"ch^{n} holds a configuration of [0 1]"
            add(Member(f"C_{n}", graph=frak_c(n)), rule + " (path rule)")
            add(Member(f"D_{n}", graph=frak_d(n)), rule + " (path rule)")
            for k in range(3, r + 1):
                add(Member(f"{n}.C_{k}", graph=cycle(k, n)), rule + " (cycle rule)")
            add(Member(f"{n}.S_{r-1}", graph=star(r - 1, n)), rule + " (star rule)")
        if has_symbol(level, 0) and has_symbol(level, 1):
            rule = f"ch^{n} holds [0] and [1]: an {n}-fold edge removes both its symbols"
            add(Member(f"Gamma_{n}", graph=gamma(n)), rule)
            add(Member(f"{n}-fold edges covering {r-1} vertices", predicate=_covering(n, r)), rule)
        if bounded_by_identity_triangle(level):
            out.k_r_multiples.add(n)
            add(Member(f"{n}.K_{r}", graph=complete(r, n)),
                f"Sym(ch^{n}) is O(1) by the I/T criterion")
    entry = curated_entry(F)
    if entry is not None:
        for mem in entry.members(r):
            add(mem, mem.citation or entry.name)
        if entry.k_r_multiple is not None:
            out.k_r_multiples.add(entry.k_r_multiple)
    return out


def generic_upper(F: RMatrix, r: int, max_states: int = 2_000_000) -> tuple[int, HFamily]:
    """1 + ex_q(r, H_F) with q = cap - 1."""
    from .multigraph import ex_q
    H = h_family(F, r)
    ex, _ = ex_q(r, H.q, H.family, max_states=max_states)
    return 1 + ex, H


def kr_multiple_upper(F: RMatrix, r: int, H: HFamily | None = None) -> list[tuple[int, str]]:
    """Bounds from n.K_r in H_F together with a [0 1] configuration in ch^{n+1}(F)."""
    if H is None:
        H = h_family(F, r)
    out = []
    for n in sorted(H.k_r_multiples):
        if not has_01_config(ch_n(F, n + 1)):
            continue
        if n == 1 and r == 3:
            if bounded_by_identity_triangle(ch(F), two_symbol=True):
                out.append((3, "K_r multiple: n = 1, r = 3 with forb(m, ch F) = O(1)"))
            else:
                out.append((4, "K_r multiple: n = 1, r = 3 without a constant bound on ch F"))
        else:
            out.append((n * r * (r - 1) // 2, f"K_r multiple: {n}.K_{r} excluded and [0 1] < ch^{n + 1}"))
    return out


__all__ = [
    "ch", "ch_n", "ch_chain", "ch_candidates", "has_01_config", "has_symbol", "klog2p_cap",
    "bounded_by_identity_triangle", "h_family", "HFamily", "generic_upper", "kr_multiple_upper",
    "curated_entry", "CURATED", "L7", "P_MATRIX", "F1111", "F2110", "T2", "one_over_K",
]

