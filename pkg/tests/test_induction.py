import pytest
from hypothesis import given, settings

from forbconf.induction import ch, ch_candidates, ch_n, h_family, klog2p_cap
from forbconf.matrix import (
    RMatrix,
    config_equivalent,
    contains_config,
    direct_product,
    make_F_abcd,
    make_K,
    make_T,
    stack_constant_row,
)
from forbconf.multigraph import canonical, complete, frak_c, frak_d, gamma, multi_edge, path, star, cycle

from conftest import matrices

ZERO_ONE = RMatrix.from_rows([[0, 1]], 2)
F1111 = make_F_abcd(1, 1, 1, 1)


def same_set(got, want):
    return len(got) == len(want) and all(any(config_equivalent(g, w) for g in got) for w in want)


def test_ch_k2():
    assert same_set(ch(make_K(2)), [ZERO_ONE])


def test_ch_single_column():
    col = RMatrix.from_rows([[0], [1]], 2)
    assert same_set(ch(col), [RMatrix.from_rows([[0]], 2), RMatrix.from_rows([[1]], 2)])


def test_ch_f1111():
    want = [
        RMatrix.from_rows([[1, 1], [1, 0], [0, 1]], 2),
        RMatrix.from_rows([[1, 1], [1, 0], [0, 0]], 2),
        RMatrix.from_rows([[1, 0], [0, 1], [0, 0]], 2),
    ]
    assert same_set(ch(F1111), want)


def test_second_level():
    F = stack_constant_row(make_K(2), 1)
    assert same_set(ch_n(F, 2), [RMatrix.from_rows([[1]], 2)])
    assert same_set(ch_n(make_K(3), 2), [ZERO_ONE])
    assert same_set(ch_n(F1111, 1), ch(F1111))
    assert any(contains_config(ZERO_ONE, G) for G in ch_n(F1111, 2))


def test_ch_of_nothing():
    assert ch_n(RMatrix.from_rows([[1]], 2), 3) == []


@settings(max_examples=40)
@given(matrices(max_rows=3, max_cols=3, alphabet=2, min_rows=1))
def test_ch_sound_and_minimal(F):
    for G in ch(F):
        assert contains_config(G, F)
        assert contains_config(F, direct_product(G, ZERO_ONE))
        # one-step removals of rows or columns break the product containment
        for j in range(G.ncols):
            H = RMatrix(G.rows, 2, G.columns[:j] + G.columns[j + 1:])
            assert not contains_config(F, direct_product(H, ZERO_ONE))
        if G.rows > 1:
            for t in range(G.rows):
                H = RMatrix(G.rows - 1, 2, tuple(c[:t] + c[t + 1:] for c in G.columns))
                assert not contains_config(F, direct_product(H, ZERO_ONE))


@settings(max_examples=30)
@given(matrices(max_rows=3, max_cols=3, alphabet=2, min_rows=2))
def test_ch_covers_candidates(F):
    # every candidate lies above some minimal member
    got = ch(F)
    for G in ch_candidates(F):
        assert any(contains_config(H, G) for H in got)


def test_klog2p_cap():
    assert klog2p_cap(make_T(2)) == 2
    assert klog2p_cap(F1111) == 4
    doubled = RMatrix(2, 2, make_K(2).columns * 2)
    assert klog2p_cap(doubled) == 3


def _has(H, G):
    key = (G.n, canonical(G))
    return any(m.graph is not None and (m.graph.n, canonical(m.graph)) == key for m in H.family)


def _has_iso_or_sub(H, G):
    from forbconf.multigraph import contains_submultigraph
    return any(m.graph is not None and m.graph.n <= G.n and contains_submultigraph(m.graph, G)
               for m in H.family)


@pytest.mark.parametrize("r", [3, 4, 5])
def test_h_family_t2(r):
    H = h_family(make_T(2), r)
    assert _has(H, multi_edge(2))
    assert _has_iso_or_sub(H, path(4))
    assert _has_iso_or_sub(H, complete(3))
    assert _has_iso_or_sub(H, star(r - 1))


def test_h_family_f1111():
    r = 4
    H = h_family(F1111, r)
    for G in (frak_c(2), frak_d(2), gamma(3), complete(r), multi_edge(4)):
        assert _has_iso_or_sub(H, G)
    names = dict(H.log)
    assert all(names[m.name] for m in H.family)


def test_h_family_only_cap_rule():
    H = h_family(RMatrix.from_rows([[1]], 2), 3)
    assert [m.name for m in H.family] == ["1.(ij)"]


def test_h_family_needs_three_symbols():
    with pytest.raises(ValueError):
        h_family(make_T(2), 2)


def test_cycle_generator():
    assert cycle(3, 2).edges == 6 and cycle(3, 2).max_mult == 2
