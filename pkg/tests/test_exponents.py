from math import comb

import pytest

from forbconf.exponents import (
    pair_test_condition,
    classify,
    constant_value,
    lower_exponent,
    upper_exponent,
)
from forbconf.matrix import RMatrix, make_F_abcd, make_I, make_K, make_T, stack_constant_row, sym_family
from forbconf.solver import exact_forb
from forbconf.tables import load_expectations, row_matrix

GAMMA = RMatrix.from_rows([[1, 1], [1, 0], [1, 0]], 2)
F1111 = make_F_abcd(1, 1, 1, 1)
CORPUS = [(row["name"], row_matrix(row)) for row in load_expectations()["rows"]]


def test_upper_examples():
    assert upper_exponent(make_T(2), 4)[0] == 3
    assert upper_exponent(F1111, 5)[0] == 10
    assert upper_exponent(make_K(3), 3)[0] == 6


def test_lower_examples():
    assert lower_exponent(GAMMA, 4).exponent == 6
    assert lower_exponent(make_T(2), 3).exponent == 2
    assert lower_exponent(stack_constant_row(make_K(2), 1), 3).exponent == 4


def test_classify_examples():
    col = RMatrix.from_rows([[0], [1]], 2)
    b = classify(col, 5)
    assert b.constant_value == 5 and b.lower == b.upper == 0
    ones = RMatrix.from_rows([[1], [1]], 2)
    b = classify(ones, 3)
    assert b.tight and b.lower == 2
    P = RMatrix.from_rows([[1, 1], [1, 1], [0, 1]], 2)
    b = classify(P, 4)
    assert b.tight and b.lower == 6


def test_gamma_is_tight():
    for r in (3, 4, 5):
        b = classify(GAMMA, r)
        assert b.tight and b.lower == max(2 * (r - 1), comb(r, 2))


def test_constant_value_only_for_single_column():
    assert constant_value(RMatrix.from_rows([[0, 1]], 2), 4) == 1
    assert constant_value(make_T(2), 4) is None


def test_af10_examples():
    assert not pair_test_condition(make_K(4))
    assert not pair_test_condition(make_I(3))
    F2 = RMatrix.from_rows([[0, 0, 1, 1], [1, 1, 0, 1], [0, 1, 0, 0]], 2)
    assert pair_test_condition(F2)


@pytest.mark.parametrize("name,F", CORPUS, ids=[n for n, _ in CORPUS])
@pytest.mark.parametrize("r", [3, 4])
def test_lower_never_exceeds_derived_upper(name, F, r):
    b = classify(F, r)
    assert b.lower <= b.derived_upper
    assert b.upper <= b.derived_upper
    for s in b.upper_chain:
        assert s.basis in ("derived", "cited", "contradicted")
    assert any(s.basis == "derived" and s.exponent == b.derived_upper for s in b.upper_chain)


def test_json_shape():
    d = classify(make_T(2), 4).to_json()
    assert d["tight"] and d["lower"] == d["upper"] == 3
    assert all({"exponent", "rule", "detail", "basis"} <= set(s) for s in d["upper_chain"])


def test_rejects_non_binary():
    with pytest.raises(ValueError):
        classify(RMatrix.from_rows([[2]], 3), 3)


def _small_values(F, r, max_m=4):
    vals = []
    for m in range(1, max_m + 1):
        res = exact_forb(m, r, sym_family(F, r), time_limit=3)
        if not res.exact:
            break
        vals.append(res.value)
    return vals


@pytest.mark.parametrize("name,F", CORPUS, ids=[n for n, _ in CORPUS])
def test_slope_consistency(name, F):
    r = 3
    b = classify(F, r)
    if not b.tight:
        pytest.skip("exponent not settled")
    vals = _small_values(F, r)
    # below the first constrained m every column is allowed; start there
    start = next((i for i, v in enumerate(vals) if v < r ** (i + 1)), None)
    if start is None:
        pytest.skip("no constrained size within reach")
    seq = vals[start:]
    diffs = [y - x for x, y in zip(seq, seq[1:])]
    assert all(x <= y for x, y in zip(diffs, diffs[1:]))
    if b.lower == 0:
        assert all(d == 0 for d in diffs)
    else:
        assert all(d > 0 for d in diffs)
