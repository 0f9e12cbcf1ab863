import json

import pytest

from forbconf.tables import (
    CSV_FIELDS,
    eval_expected,
    load_expectations,
    report_rows_csv,
    row_matrix,
    table_report,
)


def test_expectations_file_shape():
    data = load_expectations()
    assert data["schema_version"] == 1
    for row in data["rows"]:
        assert row["table"] in (1, 2, 3, 4)
        assert row["citation"]
        assert row["status"] in ("theta", "constant", "open")
        row_matrix(row)


def test_eval_expected():
    assert eval_expected("max(2*(r-1), comb(r,2))", 5) == 10
    assert eval_expected("r", 3) == 3
    with pytest.raises(Exception):
        eval_expected("__import__('os')", 3)


@pytest.mark.parametrize("table_id", [1, 2, 3, 4])
def test_no_mismatches(table_id):
    rep = table_report(table_id)
    assert rep.rows
    assert rep.mismatches == []
    for row in rep.rows:
        if row.status == "match" and row.expected is not None and row.form != "constant":
            assert row.tight


def test_open_rows():
    rep = table_report(4)
    open_rows = {(row.name, row.r) for row in rep.rows if row.status == "open"}
    assert ("F_(2,1,1,0)", 3) in open_rows and ("F_(2,1,1,0)", 4) in open_rows
    assert ("F_(1,1,1,1)", 3) in open_rows


def test_detects_wrong_expectation():
    data = load_expectations()
    rows = [dict(row) for row in data["rows"] if row["name"] == "T_2"]
    rows[0]["expected"] = "r"
    rep = table_report(2, [3], {"r_values": [3], "rows": rows})
    assert [row.status for row in rep.rows] == ["mismatch"]


def test_csv_and_json():
    rep = table_report(2, [3])
    rows = report_rows_csv([rep])
    assert all(set(CSV_FIELDS) == set(r) for r in rows)
    assert all(r["schema_version"] == 1 for r in rows)
    json.dumps(rep.to_json())
