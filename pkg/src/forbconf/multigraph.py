"""Loopless multigraphs with bounded edge multiplicity, and exact ex_q by enumeration."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable


def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(combinations(range(n), 2))}


@dataclass(frozen=True)
class Multigraph:
    n: int
    mult: tuple[int, ...]  # row-major over pairs i < j

    def __post_init__(self):
        if len(self.mult) != self.n * (self.n - 1) // 2:
            raise ValueError("multiplicity vector has the wrong length")
        if any(c < 0 for c in self.mult):
            raise ValueError("negative multiplicity")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Multigraph":
        """``edges`` is an iterable of (i, j) or (i, j, multiplicity)."""
        idx = pair_index(n)
        vec = [0] * len(idx)
        for e in edges:
            i, j = e[0], e[1]
            c = e[2] if len(e) > 2 else 1
            if i == j:
                raise ValueError("loops are not allowed")
            vec[idx[(min(i, j), max(i, j))]] += c
        return cls(n, tuple(vec))

    def edge(self, i: int, j: int) -> int:
        if i == j:
            return 0
        if i > j:
            i, j = j, i
        # position of (i, j) in row-major order
        return self.mult[i * self.n - i * (i + 1) // 2 + (j - i - 1)]

    @property
    def edges(self) -> int:
        return sum(self.mult)

    @property
    def max_mult(self) -> int:
        return max(self.mult, default=0)

    def degree(self, v: int) -> int:
        return sum(self.edge(v, u) for u in range(self.n))

    def items(self):
        for (i, j), c in zip(combinations(range(self.n), 2), self.mult):
            if c:
                yield i, j, c

    def relabel(self, perm) -> "Multigraph":
        """Vertex v of the result is vertex perm[v] of self."""
        return Multigraph(self.n, tuple(self.edge(perm[i], perm[j])
                                        for i, j in combinations(range(self.n), 2)))

    def __str__(self) -> str:
        parts = [f"{c}*({i}{j})" if c > 1 else f"({i}{j})" for i, j, c in self.items()]
        return " ".join(parts) or "(no edges)"


def canonical(G: Multigraph) -> tuple[int, ...]:
    return min(G.relabel(p).mult for p in permutations(range(G.n)))


def contains_submultigraph(H: Multigraph, G: Multigraph) -> bool:
    """Some injection of H's vertices into G's dominates every multiplicity."""
    if H.n > G.n or H.edges > G.edges:
        return False
    hdeg = [H.degree(v) for v in range(H.n)]
    gdeg = [G.degree(v) for v in range(G.n)]
    order = sorted(range(H.n), key=lambda v: -hdeg[v])
    image: dict[int, int] = {}
    used = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        h = order[k]
        for g in range(G.n):
            if g in used or gdeg[g] < hdeg[h]:
                continue
            if all(G.edge(g, image[u]) >= H.edge(h, u) for u in image):
                image[h] = g
                used.add(g)
                if extend(k + 1):
                    return True
                del image[h]
                used.discard(g)
        return False

    return extend(0)


def contains_submultigraph_naive(H: Multigraph, G: Multigraph) -> bool:
    if H.n > G.n:
        return False
    for img in permutations(range(G.n), H.n):
        if all(G.edge(img[i], img[j]) >= c for i, j, c in H.items()):
            return True
    return False


# ---------------------------------------------------------------------------
# named graphs

def multi_edge(c: int) -> Multigraph:
    return Multigraph.from_edges(2, [(0, 1, c)])


def path(vertices: int, n: int = 1) -> Multigraph:
    return Multigraph.from_edges(vertices, [(v, v + 1, n) for v in range(vertices - 1)])


def cycle(k: int, n: int = 1) -> Multigraph:
    return Multigraph.from_edges(k, [(v, (v + 1) % k, n) for v in range(k)])


def star(leaves: int, n: int = 1) -> Multigraph:
    return Multigraph.from_edges(leaves + 1, [(0, v, n) for v in range(1, leaves + 1)])


def complete(r: int, n: int = 1) -> Multigraph:
    return Multigraph.from_edges(r, [(i, j, n) for i, j in combinations(range(r), 2)])


def frak_c(n: int) -> Multigraph:
    """Path on four vertices whose middle edge has multiplicity n."""
    return Multigraph.from_edges(4, [(2, 0), (0, 1, n), (1, 3)])


def frak_d(n: int) -> Multigraph:
    """Triangle with one edge of multiplicity n."""
    return Multigraph.from_edges(3, [(0, 1, n), (0, 2), (1, 2)])


def gamma(n: int) -> Multigraph:
    """An n-fold edge with one pendant edge."""
    return Multigraph.from_edges(3, [(0, 1, n), (0, 2)])


# ---------------------------------------------------------------------------
# families


@dataclass
class Member:
    """One forbidden pattern: an unlabeled subgraph or a monotone predicate.

    ``labeled`` members depend on vertex names (symbols are ordered), so the
    enumeration must not identify isomorphic graphs when one is present.
    """
    name: str
    graph: Multigraph | None = None
    predicate: Callable[[Multigraph], bool] | None = None
    labeled: bool = False
    citation: str = ""

    def found_in(self, G: Multigraph) -> bool:
        if self.graph is not None:
            return contains_submultigraph(self.graph, G)
        return bool(self.predicate(G))


@dataclass
class GraphFamily:
    members: list[Member] = field(default_factory=list)

    def add(self, member: Member) -> None:
        if member.graph is not None:
            key = (member.graph.n, canonical(member.graph))
            for old in self.members:
                if old.graph is not None and (old.graph.n, canonical(old.graph)) == key:
                    return
        elif any(old.name == member.name for old in self.members):
            return
        self.members.append(member)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def labeled(self) -> bool:
        return any(m.labeled for m in self.members)

    def found_in(self, G: Multigraph) -> bool:
        return any(m.found_in(G) for m in self.members)

    def names(self) -> list[str]:
        return [m.name for m in self.members]


def family_of(*graphs: Multigraph) -> GraphFamily:
    fam = GraphFamily()
    for k, g in enumerate(graphs):
        fam.add(Member(f"H{k}", graph=g))
    return fam


class EnumerationBudget(RuntimeError):
    pass


def ex_q(n: int, q: int, fam: GraphFamily, max_states: int = 2_000_000,
         isomorph_rejection: bool = True) -> tuple[int, Multigraph]:
    """Most edges in an n-vertex multigraph with multiplicities <= q avoiding fam.

    Grows graphs one edge at a time; avoiding graphs form a down-set, so each
    level only extends survivors of the previous one.  Returns (ex, witness).
    """
    pairs = n * (n - 1) // 2
    start = Multigraph(n, (0,) * pairs)
    if fam.found_in(start):
        raise ValueError("the empty graph already contains a family member")
    reject = isomorph_rejection and not fam.labeled
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
                H = Multigraph(n, tuple(vec))
                key = canonical(H) if reject else H.mult
                if key in nxt:
                    continue
                seen += 1
                if seen > max_states:
                    raise EnumerationBudget(f"more than {max_states} graphs examined")
                if not fam.found_in(H):
                    nxt[key] = H
        if nxt:
            best = next(iter(nxt.values()))
        level = nxt
    return best.edges, best


def ex_q_oracle(n: int, q: int, fam: GraphFamily) -> int:
    """Every multiplicity vector, no pruning, no isomorph rejection."""
    from itertools import product
    pairs = n * (n - 1) // 2
    best = 0
    for vec in product(range(q + 1), repeat=pairs):
        G = Multigraph(n, vec)
        if sum(vec) > best and not fam.found_in(G):
            best = sum(vec)
    return best
