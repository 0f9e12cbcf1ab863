import pytest
from hypothesis import given, settings, strategies as st

from forbconf.cache import ForbCache
from forbconf.combinatorics import sauer_formula
from forbconf.matrix import (
    RMatrix,
    contains_config,
    family_avoided,
    family_dominates,
    is_simple,
    make_const,
    make_F_abcd,
    make_I,
    make_K,
    make_T,
    s_family,
    sym_family,
)
from forbconf.solver import (
    BudgetError,
    block_formula,
    exact_forb,
    forb_value,
    induction_inequality_check,
    ks_equality_check,
    copy_sets_forb,
    naive_forb,
    s_block_value,
    support_bound,
)

from conftest import matrices

ZERO_ONE = RMatrix.from_rows([[0, 1]], 2)
ZERO_OVER_ONE = RMatrix.from_rows([[0], [1]], 2)
F1111 = make_F_abcd(1, 1, 1, 1)


def test_sauer_formula_examples():
    assert sauer_formula(5, 1) == 1
    assert sauer_formula(3, 2) == 4
    assert sauer_formula(4, 3) == 11


def test_exact_small_examples():
    assert forb_value(3, 2, [make_K(2)]) == 4
    assert forb_value(4, 2, [make_K(3)]) == 11
    assert forb_value(4, 2, [F1111]) == 12


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_one_column_families(m):
    assert forb_value(m, 3, sym_family(ZERO_ONE, 3)) == 1
    assert forb_value(m, 3, sym_family(ZERO_OVER_ONE, 3)) == 3


@pytest.mark.parametrize("m,k,s", [(3, 2, 1), (4, 2, 0), (4, 3, 2)])
def test_ks_equality(m, k, s):
    assert ks_equality_check(m, k, s)


def test_ks_bad_slice():
    with pytest.raises(ValueError):
        ks_equality_check(3, 2, 3)


def test_witness_is_maximum_avoider():
    fam = sym_family(make_const(2, 2, 0), 3)
    res = exact_forb(3, 3, fam)
    assert res.exact and res.value == 19
    W = res.witness
    assert is_simple(W) and W.ncols == res.value and family_avoided(W, fam)


def test_universe_budget():
    with pytest.raises(BudgetError):
        exact_forb(21, 2, [make_K(2)])


def test_node_budget_gives_lower_bound():
    from forbconf.solver import clear_memo
    clear_memo()
    res = exact_forb(5, 2, [make_K(3)], budget_nodes=1, use_induction=False)
    assert res.value <= 16
    assert family_avoided(res.witness, [make_K(3)])
    assert res.status in ("exact", "lower-bound-only")
    clear_memo()


def test_symbol_outside_alphabet_rejected():
    with pytest.raises(ValueError):
        exact_forb(2, 2, [RMatrix.from_rows([[2]], 3)])


def test_block_formula_examples():
    assert block_formula(2, 3, 2, 2) == 9
    assert block_formula(3, 3, 2, 2) == 19
    assert forb_value(2, 3, sym_family(make_const(2, 2, 0), 3)) == 9


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_block_formula_single_row(m):
    # one-row blocks: at most q-1 copies of each non-background symbol
    assert block_formula(m, 3, 1, 2) == 1 + 2 * m
    assert forb_value(m, 3, sym_family(make_const(1, 2, 0), 3)) == 1 + 2 * m


def test_support_bound_examples():
    F = make_I(2)
    assert support_bound(4, 2, F, 5) == 5
    zero_pair = make_const(1, 2, 0)
    base = forb_value(3, 3, sym_family(make_const(1, 1, 0), 3))
    bound = support_bound(3, 3, zero_pair, base)
    assert bound == base + 9
    assert forb_value(3, 3, sym_family(zero_pair, 3)) <= bound


@pytest.mark.parametrize("F,m,r", [
    (make_const(1, 2, 0), 2, 3),
    (make_const(2, 2, 1), 2, 3),
    (RMatrix.from_rows([[0, 0, 1]], 2), 2, 3),
    (RMatrix.from_rows([[1, 1], [0, 0]], 2), 3, 2),
])
def test_support_bound_dominates(F, m, r):
    from forbconf.matrix import support
    base = forb_value(m, r, sym_family(support(F), r))
    assert forb_value(m, r, sym_family(F, r)) <= support_bound(m, r, F, base)


def test_s_block_value():
    assert s_block_value(28, 3, 2, 2).value == 3
    with pytest.raises(ValueError):
        s_block_value(27, 3, 2, 2)
    flagged = s_block_value(10, 3, 2, 1)
    assert flagged.value == 0 and flagged.suspicious
    assert forb_value(2, 3, s_family(make_const(2, 1, 0), 3)) == 6


@pytest.mark.parametrize("F,m", [(make_K(2), 3), (make_T(2), 3), (F1111, 5)])
def test_induction_inequality(F, m):
    holds, lhs, a, b = induction_inequality_check(m, F)
    assert holds and lhs <= a + b


def test_induction_inequality_k2_terms():
    assert induction_inequality_check(3, make_K(2)) == (True, 4, 1, 3)


def test_f1111_five_rows():
    assert forb_value(5, 2, [F1111]) == 16


# --- property suites -------------------------------------------------------

def _small(m, r):
    return r ** m <= 27


@st.composite
def small_instances(draw):
    r = draw(st.integers(2, 3))
    m = draw(st.integers(1, 3 if r == 3 else 4))
    F = draw(matrices(max_rows=2, max_cols=3, alphabet=r))
    return m, r, F


@settings(max_examples=40)
@given(small_instances())
def test_solver_matches_reference(inst):
    m, r, F = inst
    if not _small(m, r):
        return
    assert forb_value(m, r, [F]) == copy_sets_forb(m, r, [F])


@pytest.mark.parametrize("F,m,r", [
    (make_K(2), 3, 2),
    (make_I(2), 4, 2),
    (make_T(2), 3, 2),
    (RMatrix.from_rows([[0, 1]], 2), 3, 3),
    (RMatrix.from_rows([[0], [1]], 2), 2, 3),
    (make_const(2, 2, 0), 2, 3),
])
def test_references_agree(F, m, r):
    fam = sym_family(F, r)
    assert naive_forb(m, r, fam) == copy_sets_forb(m, r, fam) == forb_value(m, r, fam)


@settings(max_examples=40)
@given(small_instances(), st.data())
def test_monotone_in_sub_configuration(inst, data):
    m, r, F = inst
    rows = data.draw(st.lists(st.integers(0, F.rows - 1), min_size=1, unique=True))
    keep = data.draw(st.lists(st.integers(0, F.ncols - 1), min_size=1, unique=True))
    cols = [tuple(F.columns[j][i] for i in sorted(rows)) for j in sorted(keep)]
    G = RMatrix(len(rows), r, tuple(cols))
    assert contains_config(G, F)
    assert forb_value(m, r, [G]) <= forb_value(m, r, [F])


@settings(max_examples=30)
@given(small_instances())
def test_monotone_in_rows(inst):
    m, r, F = inst
    if r ** (m + 1) > 32:
        return
    assert forb_value(m, r, [F]) <= forb_value(m + 1, r, [F])


CURATED_PAIRS = [
    ([make_K(2)], [make_K(3)]),
    ([make_I(2)], [make_I(3), make_K(2)]),
    ([ZERO_ONE], [F1111, make_T(2)]),
    ([make_const(1, 2, 1)], [make_const(2, 2, 1), make_K(2)]),
]


@pytest.mark.parametrize("small,large", CURATED_PAIRS)
@pytest.mark.parametrize("m", [2, 3, 4])
def test_family_domination(small, large, m):
    assert family_dominates(small, large)
    assert forb_value(m, 2, small) <= forb_value(m, 2, large)


def test_cache_round_trip(tmp_path):
    from forbconf.solver import clear_memo
    path = tmp_path / "forb.jsonl"
    cache = ForbCache(path)
    clear_memo()
    res = exact_forb(4, 2, [make_K(3)], cache=cache)
    cache.record(4, 2, [make_K(3)], res.value, "exact", res.witness)
    cache.save()
    clear_memo()
    again = exact_forb(4, 2, [make_K(3)], cache=ForbCache(path))
    assert again.value == 11 and again.nodes == 0
    clear_memo()


def test_all_columns_allowed_when_family_too_tall():
    # a 3-row member cannot occur in 2 rows
    assert forb_value(2, 3, [RMatrix(3, 3, ((0, 1, 2),))]) == 9


@pytest.mark.parametrize("m,F,want", [(5, F1111, 16), (5, make_K(2), 6), (4, make_K(3), 11)])
def test_values_without_induction_bound(m, F, want):
    from forbconf.solver import clear_memo
    clear_memo()
    res = exact_forb(m, 2, [F], use_induction=False)
    clear_memo()
    assert res.exact and res.value == want == forb_value(m, 2, [F])
