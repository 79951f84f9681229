import pytest

from src.models.functions import Family
from src.services.field_service import field_service
from src.services.function_service import (
    DifferentialUniformityComputer,
    ExhaustiveMethod,
    catalog,
    differential_uniformity,
    evaluate,
    exponent_of,
    geometric_h_max,
    kasami_h_max,
    make_function,
    trinomial_claim_holds,
    trinomial_flags,
    two_to_h_max,
    validate_params,
)
from src.utils.errors import FieldTooLarge, InvalidParams, NotMonomial


class TestExponents:
    @pytest.mark.parametrize("family, q, m, params, expected", [
        (Family.INVERSE, 2, 5, {}, 30),
        (Family.GOLD, 2, 7, {"h": 2}, 5),
        (Family.KASAMI, 2, 7, {"h": 2}, 13),
        (Family.WELCH, 2, 7, {}, 11),
        (Family.NIHO1, 2, 9, {}, 19),
        (Family.NIHO2, 2, 7, {}, 39),
        (Family.DOBBERTIN, 2, 5, {}, 29),
        (Family.TWO_TO_H_MINUS_ONE, 2, 7, {"h": 3}, 7),
        (Family.DEMBOWSKI_OSTROM, 3, 3, {"kappa": 1}, 4),
        (Family.QH_GEOMETRIC, 5, 6, {"h": 3}, 31),
        (Family.COULTER_MATHEWS, 3, 7, {"h": 3}, 14),
        (Family.CUBE, 5, 2, {}, 3),
    ])
    def test_family_exponents(self, family, q, m, params, expected):
        assert exponent_of(family, q, m, **params) == expected

    def test_trinomial_is_not_a_monomial(self):
        with pytest.raises(NotMonomial):
            exponent_of(Family.DY_TRINOMIAL, 3, 3)

    def test_welch_needs_odd_m(self):
        with pytest.raises(InvalidParams):
            exponent_of(Family.WELCH, 2, 6)

    def test_theorem_ranges(self):
        assert kasami_h_max(7) == 1
        assert kasami_h_max(11) == 2
        assert two_to_h_max(7) == 3
        assert two_to_h_max(8) == 3
        assert geometric_h_max(6) == 3
        assert geometric_h_max(7) == 3


class TestValidation:
    def test_gold_needs_coprime_h(self):
        report = validate_params(Family.GOLD, 2, 6, h=2)
        assert not report.valid
        assert not report.checks["gcd-h-m"]
        with pytest.raises(InvalidParams):
            make_function(Family.GOLD, 2, 6, h=2)

    def test_gold_coverage_needs_odd_m(self):
        assert validate_params(Family.GOLD, 2, 5, h=1).theorem_covered
        report = validate_params(Family.GOLD, 2, 4, h=1)
        assert report.valid and report.exploratory

    def test_inverse_accepts_even_m(self):
        report = validate_params(Family.INVERSE, 2, 4)
        assert report.valid and report.exploratory
        assert report.checks["m-odd"] is False
        assert report.claimed_uniformity == 4
        assert make_function(Family.INVERSE, 2, 4).exponent == 14

    def test_inverse_on_odd_m_is_covered(self):
        report = validate_params(Family.INVERSE, 2, 5)
        assert report.theorem_covered
        assert report.claimed_uniformity == 2

    def test_kasami_outside_range_is_exploratory(self):
        report = validate_params(Family.KASAMI, 2, 5, h=2)
        assert report.valid
        assert not report.theorem_covered
        assert report.checks["h-range"] is False

    def test_geometric_outside_range_is_exploratory(self):
        assert validate_params(Family.QH_GEOMETRIC, 3, 2, h=3).exploratory
        assert validate_params(Family.QH_GEOMETRIC, 3, 6, h=3).theorem_covered

    def test_binary_families_reject_odd_q(self):
        report = validate_params(Family.WELCH, 3, 5)
        assert not report.valid
        assert not report.checks["binary"]

    def test_dembowski_ostrom_validity(self):
        assert not validate_params(Family.DEMBOWSKI_OSTROM, 3, 4, kappa=2).valid
        assert validate_params(Family.DEMBOWSKI_OSTROM, 3, 4, kappa=4).valid
        assert validate_params(Family.DEMBOWSKI_OSTROM, 3, 3, kappa=1).theorem_covered

    def test_square_over_gf3_is_not_covered(self):
        assert not validate_params(Family.SQUARE, 3, 1).theorem_covered

    def test_cube_needs_p_above_three(self):
        assert not validate_params(Family.CUBE, 3, 2).valid
        assert validate_params(Family.CUBE, 7, 2).theorem_covered

    def test_generic_needs_exponent(self):
        assert not validate_params(Family.GENERIC, 3, 3).valid
        f = make_function(Family.GENERIC, 3, 3, exponent=12)
        assert f.exponent == 12

    def test_catalog_lists_every_family(self):
        assert {entry.family for entry in catalog()} == set(Family)


class TestEvaluation:
    def test_inverse_maps_zero_to_zero(self, gf8):
        f = make_function(Family.INVERSE, 2, 3)
        assert evaluate(f, gf8.zero) == gf8.zero
        assert evaluate(f, gf8.alpha(2)) == gf8.alpha(5)

    def test_trinomial_value(self, gf27):
        u = gf27.one
        f = make_function(Family.DY_TRINOMIAL, 3, 3, u=u)
        x = gf27.alpha(4)
        assert evaluate(f, x) == x ** 10 - u * x ** 6 - u * u * x ** 2


class TestDifferentialUniformity:
    @pytest.mark.parametrize("family, q, m, params", [
        (Family.GOLD, 2, 5, {"h": 2}),
        (Family.KASAMI, 2, 7, {"h": 3}),
        (Family.WELCH, 2, 7, {}),
        (Family.INVERSE, 2, 5, {}),
        (Family.CUBE, 5, 3, {}),
        (Family.NIHO2, 2, 7, {}),
    ])
    def test_apn_instances(self, family, q, m, params):
        ctx = field_service.build_field(q, m)
        assert differential_uniformity(make_function(family, q, m, **params), ctx) == 2

    @pytest.mark.parametrize("family, q, m, params", [
        (Family.SQUARE, 3, 3, {}),
        (Family.SQUARE, 5, 2, {}),
        (Family.DEMBOWSKI_OSTROM, 3, 3, {"kappa": 1}),
        (Family.COULTER_MATHEWS, 3, 5, {"h": 3}),
    ])
    def test_planar_instances(self, family, q, m, params):
        ctx = field_service.build_field(q, m)
        assert differential_uniformity(make_function(family, q, m, **params), ctx) == 1

    def test_inverse_on_even_m_is_not_apn(self):
        ctx = field_service.build_field(2, 4)
        assert differential_uniformity(make_function(Family.INVERSE, 2, 4), ctx) == 4

    def test_trinomial_is_planar(self, gf27):
        f = make_function(Family.DY_TRINOMIAL, 3, 3, u=gf27.alpha())
        assert differential_uniformity(f, gf27) == 1

    def test_power_map_shortcut_agrees_with_full_scan(self, gf32):
        f = make_function(Family.TWO_TO_H_MINUS_ONE, 2, 5, h=3)
        full = DifferentialUniformityComputer(methods=[ExhaustiveMethod()])
        assert full.compute(f, gf32) == differential_uniformity(f, gf32)

    def test_cap(self, override_settings, gf32):
        override_settings(UNIFORMITY_MAX_FIELD=16)
        with pytest.raises(FieldTooLarge):
            DifferentialUniformityComputer().compute(make_function(Family.GOLD, 2, 5, h=1), gf32)


class TestTrinomialClaims:
    @pytest.mark.parametrize("m", [1, 3, 5])
    def test_u_squared_plus_u_minus_one_never_vanishes_for_odd_m(self, m):
        assert trinomial_claim_holds(field_service.build_field(3, m))

    def test_it_vanishes_for_even_m(self, gf9):
        assert not trinomial_claim_holds(gf9)

    def test_flags_for_u_one(self, gf27):
        u6u_zero, delta = trinomial_flags(gf27.one)
        # 1 + 1 != 0 and Tr(1 + 1 - 1) = Tr(1) = 0 over GF(27)
        assert not u6u_zero
        assert delta == 0

    def test_flags_for_u_minus_one(self, gf27):
        u6u_zero, delta = trinomial_flags(-gf27.one)
        # (-1)^6 + (-1) = 0 and Tr(1 - 1 - 1) = Tr(-1) = 0
        assert u6u_zero
        assert delta == 0
