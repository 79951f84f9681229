import pytest

from src.models.analysis import Relation
from src.models.functions import Family
from src.models.poly import Poly
from src.models.sequences import CyclicCode
from src.services.analysis_service import (
    analysis_service,
    bch_bound,
    dual_code,
    root_exponents,
    run_length,
    sphere_packing_upper,
    square_root_bound,
    subcode_relation,
    syndrome_columns,
)
from src.services.code_service import code_service
from src.services.sequence_service import code_from_generator
from src.utils.errors import InvalidArgs

# x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1
GOLAY = Poly(2, (1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1))


@pytest.fixture
def hamming(gf8):
    return code_from_generator(Poly(2, (1, 1, 0, 1)), gf8)


@pytest.fixture
def simplex(gf8):
    return code_from_generator(Poly(2, (1, 0, 1, 1, 1)), gf8)


@pytest.fixture
def golay():
    return CyclicCode(q=2, n=23, generator=GOLAY)


class TestBounds:
    def test_square_root_bound(self):
        assert square_root_bound(7) == 4
        assert square_root_bound(1) == 2
        assert square_root_bound(31) == 6

    def test_square_root_bound_needs_positive_length(self):
        with pytest.raises(InvalidArgs):
            square_root_bound(0)

    def test_sphere_packing(self):
        assert sphere_packing_upper(7, 3, 2) == 4
        assert sphere_packing_upper(23, 12, 2) == 8
        # Singleton caps the full space
        assert sphere_packing_upper(7, 7, 2) == 1

    def test_sphere_packing_rejects_bad_dimension(self):
        with pytest.raises(InvalidArgs):
            sphere_packing_upper(7, 8, 2)

    def test_run_length(self):
        assert run_length([1, 2, 4], 7) == 2
        assert run_length([6, 0, 1], 7) == 3

    def test_bch_bound(self):
        assert bch_bound([1, 2, 4], 7) == 3
        assert bch_bound([0, 1, 2, 4], 7, parity_lift=True) == 4
        assert bch_bound([], 7) == 1

    def test_root_exponents(self, simplex):
        assert root_exponents(simplex) == [0, 1, 2, 4]

    def test_syndrome_columns_vanish_on_generator(self, hamming):
        columns = syndrome_columns(hamming.generator, 7)
        support = [i for i, c in enumerate(hamming.generator.coeffs) if c]
        assert not (columns[support].sum(axis=0) % 2).any()


class TestMinimumDistance:
    def test_hamming(self, hamming):
        result = analysis_service.minimum_distance(hamming)
        assert result.exact == 3
        assert result.interval == (3, 3)

    def test_simplex_is_even(self, simplex):
        result = analysis_service.minimum_distance(simplex)
        assert result.exact == 4

    def test_golay_by_enumeration(self, golay):
        result = analysis_service.minimum_distance(golay)
        assert result.strategy == "enumeration"
        assert result.exact == 7
        assert result.all_even is False

    def test_golay_by_syndrome_search(self, override_settings, golay):
        override_settings(ENUMERATION_LIMIT=1)
        result = analysis_service.minimum_distance(golay)
        assert result.strategy == "syndrome-search"
        assert result.exact == 7

    def test_budget_leaves_an_interval(self, override_settings, golay):
        override_settings(ENUMERATION_LIMIT=1)
        result = analysis_service.minimum_distance(golay, max_work=1)
        assert result.exact is None
        assert result.lo < result.hi == 7

    def test_full_space(self, gf8):
        code = code_from_generator(Poly.one(2), gf8)
        assert analysis_service.minimum_distance(code).exact == 1

    def test_bound_report_without_search(self, hamming):
        report = analysis_service.bound_report(hamming, with_distance=False)
        assert report.bch_lower == 3
        assert report.sphere_packing_upper == 4
        assert report.generator_weight == 3
        assert (report.distance_lo, report.distance_hi) == (3, 3)
        assert report.strategy == "bounds"

    def test_bound_report_lifts_even_codes(self, simplex):
        report = analysis_service.bound_report(simplex, square_root=True)
        assert report.even_weight_lift
        assert report.square_root_lower == 4
        assert report.distance_exact == 4


class TestFamilyLowerBounds:
    """Consecutive-root bounds of the codes inside each proved range"""

    @pytest.mark.parametrize("family, q, m, params, bound", [
        (Family.GOLD, 2, 5, {"h": 1}, 4),
        (Family.GOLD, 2, 5, {"h": 2}, 4),
        (Family.GOLD, 2, 7, {"h": 2}, 4),
        (Family.WELCH, 2, 7, {}, 6),
        (Family.WELCH, 2, 9, {}, 6),
        (Family.TWO_TO_H_MINUS_ONE, 2, 7, {"h": 3}, 4),
        (Family.TWO_TO_H_MINUS_ONE, 2, 8, {"h": 3}, 3),
        (Family.TWO_TO_H_MINUS_ONE, 2, 9, {"h": 4}, 6),
        (Family.NIHO1, 2, 9, {}, 6),
        (Family.KASAMI, 2, 9, {"h": 2}, 6),
        (Family.QH_GEOMETRIC, 3, 6, {"h": 3}, 3),
        pytest.param(Family.QH_GEOMETRIC, 3, 7, {"h": 3}, 3, marks=pytest.mark.slow),
        pytest.param(Family.COULTER_MATHEWS, 3, 7, {"h": 3}, 5, marks=pytest.mark.slow),
    ])
    def test_bound_reaches_the_family_claim(self, family, q, m, params, bound):
        built = code_service.build(family, q, m, bounds=False, **params)
        assert built.validity.theorem_covered
        assert analysis_service.lower_bound(built.code) >= bound


class TestCodeRelations:
    def test_dual_of_hamming_is_simplex(self, hamming, simplex):
        dual = dual_code(hamming)
        assert dual.k == 3
        assert dual.generator == simplex.generator

    def test_even_weight_subcode(self, simplex, hamming):
        report = subcode_relation(simplex, hamming)
        assert report.relation is Relation.A_IN_B
        assert report.extra_factor == Poly(2, (1, 1))
        assert report.extra_leaders == (0,)
        assert report.dimension_gap == 1
        assert report.even_weight_subcode

    def test_reverse_order(self, simplex, hamming):
        assert subcode_relation(hamming, simplex).relation is Relation.B_IN_A

    def test_reciprocal_codes_are_incomparable(self, hamming, gf8):
        other = code_from_generator(Poly(2, (1, 0, 1, 1)), gf8)
        assert subcode_relation(hamming, other).relation is Relation.INCOMPARABLE

    def test_equal(self, hamming):
        assert subcode_relation(hamming, hamming).relation is Relation.EQUAL

    def test_lengths_must_match(self, hamming, gf9):
        other = code_from_generator(Poly(3, (2, 2, 1)), gf9)
        with pytest.raises(InvalidArgs):
            subcode_relation(hamming, other)
