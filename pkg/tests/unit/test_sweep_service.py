import pytest

from src.models.functions import Family
from src.services.sweep_service import SWEEPS, sweep_service
from src.utils.errors import CapExceeded, InvalidArgs


class TestPlan:
    def test_ids(self):
        assert "ternary-half" in sweep_service.ids()
        assert set(sweep_service.ids()) == set(SWEEPS)

    def test_unknown_sweep(self):
        with pytest.raises(InvalidArgs):
            sweep_service.plan("septic")

    def test_base_must_belong_to_the_sweep(self):
        with pytest.raises(InvalidArgs):
            sweep_service.plan("ternary-half", (2, 3), q_values=[5])

    def test_cap_is_checked_before_any_work(self, override_settings):
        override_settings(SWEEP_MAX_FIELD=100)
        with pytest.raises(CapExceeded):
            sweep_service.plan("ternary-half", (2, 5))

    def test_empty_range(self):
        assert sweep_service.plan("ternary-half", (5, 4)).instances == []
        assert sweep_service.run("ternary-half", (5, 4)) == []

    def test_ternary_half_exponents(self):
        plan = sweep_service.plan("ternary-half", (3, 4))
        assert [inst[3]["exponent"] for inst in plan.instances] == [12, 39]
        assert not plan.distance

    def test_distance_default_follows_the_sweep(self):
        assert sweep_service.plan("qh-distance", (2, 2), q_values=[3]).distance
        assert not sweep_service.plan("qh-distance", (2, 2), q_values=[3], distance=False).distance

    def test_kasami_wide_leaves_the_proved_range(self):
        plan = sweep_service.plan("kasami-wide", (7, 7))
        hs = [params["h"] for _, _, _, params in plan.instances]
        assert hs == [2]

    def test_invalid_instances_are_dropped(self):
        plan = sweep_service.plan("niho2", (3, 8))
        assert [m for _, _, m, _ in plan.instances] == [3, 7]
        assert all(family is Family.NIHO2 for family, _, _, _ in plan.instances)

    def test_five_half(self):
        plan = sweep_service.plan("five-half", (1, 1))
        assert [params["exponent"] for _, _, _, params in plan.instances] == [3]


class TestRun:
    def test_ternary_half_rows(self):
        rows = sweep_service.run("ternary-half", (3, 4))
        assert [(r.n, r.k) for r in rows] == [(26, 20), (80, 69)]
        assert rows[0].family == "x^12"
        assert rows[0].span == 6

    def test_ternary_half_distance(self):
        rows = sweep_service.run("ternary-half", (3, 3), distance=True)
        assert (rows[0].d_lo, rows[0].d_hi) == (4, 4)

    def test_rows_carry_parameters(self):
        rows = sweep_service.run("odd-inverse", (2, 2), q_values=[3])
        assert [(r.q, r.m, r.family) for r in rows] == [(3, 2, "inverse")]
        assert rows[0].n == 8
        assert rows[0].h is None
