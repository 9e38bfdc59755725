import pytest

from reference_tables import TABLE_1, TABLE_2, TABLE_3

from pentatile import emit_tables
from pentatile.tables import table_rows, table_theta


@pytest.mark.parametrize("which,table", [(1, TABLE_1), (2, TABLE_2), (3, TABLE_3)])
def test_rows_match_published(which, table):
    rows = {r[0]: r for r in table_rows(which)}
    assert sorted(rows) == [r[0] for r in table]
    for ref in table:
        got = rows[ref[0]]
        assert got[1:6] == pytest.approx(ref[1:6], abs=0.01)
        assert got[6] == pytest.approx(ref[6], abs=0.001)


def test_header_and_formatting():
    rows = emit_tables(1)
    assert rows[0] == ["n", "A", "B", "C", "D", "E", "e"]
    assert rows[3] == ["5", "72.00", "153.00", "108.00", "80.01", "126.99", "1.508"]


def test_trapezoid_table_has_straight_e():
    assert all(r[5] == pytest.approx(180.0) for r in table_rows(2))
    assert table_theta(2, 5) == pytest.approx(18.0)


def test_unknown_table():
    with pytest.raises(ValueError):
        table_rows(4)
