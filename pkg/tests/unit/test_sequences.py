import numpy as np
import pytest

from src.models.functions import Family
from src.models.poly import Poly
from src.models.sequences import PeriodicSequence
from src.services.function_service import make_function
from src.services.sequence_service import code_from_generator, sequence_service, zero_set_of
from src.utils.errors import CapExceeded, PeriodMismatch


@pytest.fixture
def trace_sequence(gf8):
    """s_t = Tr(alpha^t) over GF(8): 1, 0, 0, 1, 0, 1, 1"""
    return PeriodicSequence(q=2, terms=gf8.trace(gf8.exp), ctx=gf8)


class TestMinimalPolynomial:
    def test_trace_sequence_terms(self, trace_sequence):
        assert trace_sequence.terms.tolist() == [1, 0, 0, 1, 0, 1, 1]

    def test_gcd_method(self, trace_sequence):
        minimal, span = sequence_service.minimal_poly_gcd(trace_sequence)
        assert span == 3
        assert minimal == Poly(2, (1, 0, 1, 1))

    def test_berlekamp_massey_connection(self, trace_sequence):
        span, connection = sequence_service.berlekamp_massey(trace_sequence)
        assert span == 3
        assert connection == Poly(2, (1, 0, 1, 1))
        assert connection.coeffs[0] == 1

    def test_berlekamp_massey_on_raw_terms(self):
        # Fibonacci numbers mod 3: s_t = s_{t-1} + s_{t-2}
        span, connection = sequence_service.berlekamp_massey([0, 1, 1, 2, 0, 2, 2, 1], q=3)
        assert span == 2
        assert connection == Poly(3, (1, 2, 2))

    def test_raw_terms_need_q(self):
        with pytest.raises(ValueError):
            sequence_service.berlekamp_massey([1, 0, 1])

    def test_spectral_method(self, trace_sequence):
        form, minimal, span = sequence_service.minimal_poly_spectral(trace_sequence)
        assert form.support == (1, 2, 4)
        assert span == 3
        assert minimal == Poly(2, (1, 0, 1, 1))

    def test_spectral_needs_full_period(self, gf8):
        with pytest.raises(PeriodMismatch):
            sequence_service.minimal_poly_spectral(PeriodicSequence(q=2, terms=[1, 0, 1], ctx=gf8))

    def test_spectral_cap(self, override_settings, trace_sequence):
        override_settings(SPECTRAL_MAX_PERIOD=4)
        with pytest.raises(CapExceeded):
            sequence_service.minimal_poly_spectral(trace_sequence)

    @pytest.mark.parametrize("method", ["gcd", "spectral", "bm"])
    def test_span_methods_agree(self, method, gf27):
        f = make_function(Family.SQUARE, 3, 3)
        s = sequence_service.defining_sequence(f, gf27)
        assert sequence_service.linear_span(s, method) == 6

    def test_unknown_method(self, trace_sequence):
        with pytest.raises(ValueError):
            sequence_service.linear_span(trace_sequence, "fourier")


class TestSequencesFromFunctions:
    def test_zero_function_gives_the_full_space(self, gf8):
        s = sequence_service.defining_sequence(lambda codes: np.zeros_like(codes), gf8)
        assert s.is_zero
        code = sequence_service.code_from_sequence(s)
        assert code.generator == Poly.one(2)
        assert code.k == 7

    def test_gold_differential_sequence_is_constant(self, gf8):
        # (x + 1)^3 - x^3 = x^2 + x + 1 and Tr(x^2) = Tr(x)
        f = make_function(Family.GOLD, 2, 3, h=1)
        s = sequence_service.differential_sequence(f, gf8)
        assert s.terms.tolist() == [1] * 7
        assert sequence_service.code_from_sequence(s).generator == Poly(2, (1, 1))

    def test_inverse_code_over_gf8(self, gf8):
        f = make_function(Family.INVERSE, 2, 3)
        code = sequence_service.code_from_sequence(sequence_service.defining_sequence(f, gf8))
        assert (code.n, code.k) == (7, 3)
        assert code.generator.to_text() == "x^4+x^3+x^2+1"
        assert code.zero_set == (0, 1)

    def test_check_polynomial(self, gf8):
        f = make_function(Family.INVERSE, 2, 3)
        code = sequence_service.code_from_sequence(sequence_service.defining_sequence(f, gf8))
        assert code.generator * code.check_polynomial() == Poly.x_pow_minus_one(2, 7)


class TestCodeFromGenerator:
    def test_zero_set_of_hamming_generator(self, gf8):
        assert zero_set_of(Poly(2, (1, 1, 0, 1)), gf8) == (1,)

    def test_generator_is_made_monic(self, gf9):
        generator = Poly(3, (2, 2, 1)) * 2
        code = code_from_generator(generator, gf9)
        assert code.generator.is_monic
        assert code.zero_set == (1,)
        assert code.k == 6
