import pytest
from hypothesis import given, settings, strategies as st

from forbconf.multigraph import (
    GraphFamily,
    Member,
    Multigraph,
    canonical,
    complete,
    contains_submultigraph,
    contains_submultigraph_naive,
    ex_q,
    ex_q_oracle,
    family_of,
    frak_c,
    frak_d,
    gamma,
    multi_edge,
    path,
    star,
)


@st.composite
def multigraphs(draw, max_n=5, max_q=2):
    n = draw(st.integers(1, max_n))
    vec = draw(st.lists(st.integers(0, max_q), min_size=n * (n - 1) // 2,
                        max_size=n * (n - 1) // 2))
    return Multigraph(n, tuple(vec))


def test_invariants():
    G = Multigraph.from_edges(3, [(0, 1, 2), (1, 2)])
    assert G.edges == 3 and G.max_mult == 2 and G.edge(1, 0) == 2 and G.degree(1) == 3
    with pytest.raises(ValueError):
        Multigraph.from_edges(2, [(1, 1)])
    with pytest.raises(ValueError):
        Multigraph(3, (1, 1))


def test_containment_examples():
    assert contains_submultigraph(complete(3), complete(4))
    assert not contains_submultigraph(star(2, 2), frak_c(2))
    assert contains_submultigraph(frak_c(2), path(4, 2))
    assert not contains_submultigraph(complete(4), complete(3))


@settings(max_examples=150)
@given(multigraphs(max_n=4), multigraphs(max_n=5))
def test_containment_matches_naive(H, G):
    assert contains_submultigraph(H, G) == contains_submultigraph_naive(H, G)


@settings(max_examples=60)
@given(multigraphs(max_n=5), st.permutations(range(5)))
def test_canonical_is_relabel_invariant(G, perm):
    p = [v for v in perm if v < G.n]
    assert canonical(G.relabel(p)) == canonical(G)


def test_ex_examples():
    assert ex_q(3, 1, family_of(path(4), complete(3), star(2)))[0] == 1
    assert ex_q(4, 1, family_of(path(4), complete(3), star(3)))[0] == 2
    assert ex_q(5, 3, family_of(multi_edge(1)))[0] == 0


def test_ex_witness_avoids():
    fam = family_of(path(4), complete(3), star(3))
    ex, W = ex_q(4, 1, fam)
    assert W.edges == ex and not fam.found_in(W)


def test_empty_graph_forbidden():
    with pytest.raises(ValueError):
        ex_q(3, 1, family_of(Multigraph(1, ())))


FAMILIES = [
    family_of(path(4), complete(3), star(2)),
    family_of(frak_c(2), frak_d(2), gamma(2)),
    family_of(multi_edge(2), complete(3)),
    family_of(star(2, 2)),
    family_of(path(3)),
]


@pytest.mark.parametrize("fam", FAMILIES)
@pytest.mark.parametrize("n,q", [(3, 1), (3, 2), (4, 1), (4, 2)])
def test_ex_matches_oracle(fam, n, q):
    assert ex_q(n, q, fam)[0] == ex_q_oracle(n, q, fam)
    assert ex_q(n, q, fam, isomorph_rejection=False)[0] == ex_q_oracle(n, q, fam)


@pytest.mark.parametrize("n", [3, 4])
def test_ex_monotone(n):
    base = family_of(frak_c(2), gamma(2))
    bigger = family_of(frak_c(2), gamma(2), complete(3))
    for q in (1, 2, 3):
        assert ex_q(n, q, bigger)[0] <= ex_q(n, q, base)[0]
        assert ex_q(n, q, base)[0] <= ex_q(n, q + 1, base)[0]


def test_predicate_member():
    fam = GraphFamily()
    fam.add(Member("two edges", predicate=lambda G: G.edges >= 2))
    assert ex_q(4, 2, fam)[0] == 1 == ex_q_oracle(4, 2, fam)


def test_family_dedupes_isomorphs():
    fam = family_of(path(3), Multigraph.from_edges(3, [(0, 2), (2, 1)]))
    assert len(fam) == 1
