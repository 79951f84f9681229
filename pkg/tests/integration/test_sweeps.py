import pytest

from src.services.sweep_service import sweep_service


@pytest.mark.slow
@pytest.mark.parametrize("sweep_id, m_range", [
    ("kasami-wide", (7, 9)),
    ("niho2", (3, 7)),
    ("dobbertin", (5, 5)),
    ("ternary-root", (3, 5)),
    ("ternary-eighth", (3, 5)),
    ("zha", (3, 7)),
    ("five-half", (1, 2)),
])
def test_rows_are_consistent(sweep_id, m_range):
    rows = sweep_service.run(sweep_id, m_range)
    assert rows
    for row in rows:
        assert row.n == row.q ** row.m - 1
        assert row.k + row.span == row.n
        assert 1 <= row.d_lo <= row.d_hi


@pytest.mark.slow
def test_qh_distance_small_fields():
    rows = sweep_service.run("qh-distance", (2, 3), q_values=[3])
    assert [(row.m, row.n) for row in rows] == [(2, 8), (3, 26)]
    # x^13 is the norm from GF(27) to GF(3), so its trace vanishes
    assert rows[1].k == 26


@pytest.mark.slow
def test_ternary_half_distances():
    rows = sweep_service.run("ternary-half", (3, 4), distance=True)
    assert [(row.n, row.k, row.d_lo, row.d_hi) for row in rows] == [(26, 20, 4, 4), (80, 69, 5, 5)]
