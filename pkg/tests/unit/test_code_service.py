import pytest

from src.models.functions import Family
from src.services.code_service import code_service, exploratory_notes
from src.utils.errors import InvalidParams


class TestBuild:
    def test_inverse_m3_end_to_end(self):
        built = code_service.build(Family.INVERSE, 2, 3)
        assert (built.code.n, built.code.k) == (7, 3)
        assert built.span == 4
        assert built.predicted_match is True
        assert built.bounds.distance_exact == 4
        assert built.bounds.square_root_lower == 4

    def test_record(self):
        record = code_service.record(code_service.build(Family.INVERSE, 2, 3))
        assert record.generator == "x^4+x^3+x^2+1"
        assert record.generator_coeffs == [1, 0, 1, 1, 1]
        assert record.zero_set_leaders == [0, 1]
        assert record.modulus == [1, 1, 0, 1]
        assert record.theorem_covered
        assert record.sequence == "defining"

    def test_dual(self):
        built = code_service.build(Family.INVERSE, 2, 3, dual=True)
        assert built.dual.k == 4
        assert code_service.record(built).dual == {"n": 7, "k": 4, "d_lo": 3, "d_hi": 3}

    def test_inverse_for_even_m(self):
        built = code_service.build(Family.INVERSE, 2, 4)
        assert (built.code.n, built.code.k) == (15, 7)
        assert built.code.generator.to_text() == "x^8+x^7+x^5+x^4+x^3+x+1"
        assert built.validity.exploratory
        assert built.predicted is None
        assert built.bounds.distance_exact == 3
        assert built.bounds.square_root_lower is None

    def test_bounds_only(self):
        built = code_service.build(Family.GOLD, 2, 5, h=1, distance=False)
        assert built.bounds.strategy == "bounds"
        assert built.bounds.distance_exact is None

    def test_exploratory_instance_has_no_prediction(self):
        built = code_service.build(Family.GOLD, 2, 4, h=1, bounds=False)
        assert built.validity.exploratory
        assert built.predicted is None
        assert built.predicted_match is None
        assert built.bounds is None
        notes = exploratory_notes(built.validity)
        assert notes[0] == "theorem not applicable"

    def test_differential_without_prediction(self):
        built = code_service.build(Family.GOLD, 2, 5, h=1, differential=True, bounds=False)
        assert built.predicted is None
        assert code_service.record(built).sequence == "differential"

    def test_field_element_from_text(self, gf27):
        f = code_service.make(Family.DY_TRINOMIAL, 3, 3, u="alpha")
        assert f.u == gf27.alpha()

    def test_invalid_parameters(self):
        with pytest.raises(InvalidParams):
            code_service.build(Family.GOLD, 2, 6, h=2)

    def test_covered_notes_are_empty(self):
        built = code_service.build(Family.GOLD, 2, 5, h=1, bounds=False)
        assert exploratory_notes(built.validity) == []
