import pytest

from src.models.poly import Poly, poly_gcd, poly_product
from src.utils.errors import DivisionByZero, ZeroConstantTerm


class TestPolyArithmetic:
    def test_normalises_coefficients_and_trailing_zeros(self):
        p = Poly(3, (4, -1, 0, 0))
        assert p.coeffs == (1, 2)
        assert p.degree == 1

    def test_zero_polynomial_has_degree_minus_one(self):
        assert Poly.zero(2).degree == -1
        assert Poly.zero(2).is_zero

    def test_binary_addition_cancels(self):
        p = Poly(2, (1, 1, 0, 1))
        assert (p + p).is_zero

    def test_product_over_gf3(self):
        # (x + 1)(x + 2) = x^2 + 2 over GF(3)
        assert Poly(3, (1, 1)) * Poly(3, (2, 1)) == Poly(3, (2, 0, 1))

    def test_scalar_multiplication(self):
        assert Poly(5, (1, 2)) * 3 == Poly(5, (3, 1))

    def test_divmod_reconstructs_dividend(self):
        a = Poly(3, (2, 0, 1, 1, 2, 1))
        b = Poly(3, (1, 2, 1))
        quotient, remainder = divmod(a, b)
        assert quotient * b + remainder == a
        assert remainder.degree < b.degree

    def test_division_by_zero_raises(self):
        with pytest.raises(DivisionByZero):
            divmod(Poly(2, (1, 1)), Poly.zero(2))

    def test_exact_div_refuses_remainder(self):
        with pytest.raises(ArithmeticError):
            Poly(2, (1, 0, 1)).exact_div(Poly(2, (1, 1, 1)))

    def test_x_pow_minus_one_factors_over_gf2(self):
        # x^7 - 1 = (x + 1)(x^3 + x + 1)(x^3 + x^2 + 1)
        factors = [Poly(2, (1, 1)), Poly(2, (1, 1, 0, 1)), Poly(2, (1, 0, 1, 1))]
        assert poly_product(factors, 2) == Poly.x_pow_minus_one(2, 7)

    def test_pow(self):
        assert Poly(2, (1, 1)) ** 2 == Poly(2, (1, 0, 1))
        assert Poly(3, (1, 1)) ** 3 == Poly(3, (1, 0, 0, 1))

    def test_evaluation_at_scalars(self):
        p = Poly(2, (1, 0, 1, 1, 1))
        assert p(1) == 0
        assert p(0) == 1


class TestPolyGcd:
    def test_gcd_is_monic(self):
        a = Poly(5, (1, 1)) * Poly(5, (1, 0, 1))
        b = Poly(5, (3, 1)) * Poly(5, (1, 0, 1)) * 2
        assert poly_gcd(a, b) == Poly(5, (1, 0, 1))

    def test_gcd_with_zero(self):
        a = Poly(3, (1, 2, 2))
        assert poly_gcd(a, Poly.zero(3)) == a.monic()

    def test_coprime_gcd_is_one(self):
        assert poly_gcd(Poly(2, (1, 1, 0, 1)), Poly(2, (1, 0, 1, 1))) == Poly.one(2)

    def test_mixed_fields_are_rejected(self):
        with pytest.raises(ValueError):
            poly_gcd(Poly(2, (1, 1)), Poly(3, (1, 1)))


class TestPolyForms:
    def test_to_text_uses_descending_powers(self):
        assert Poly(2, (1, 0, 1, 1, 1)).to_text() == "x^4+x^3+x^2+1"
        assert Poly(3, (2, 1, 0, 0, 0, 2)).to_text() == "2x^5+x+2"
        assert Poly.zero(2).to_text() == "0"

    def test_reciprocal_is_monic_reverse(self):
        # x^3 + x + 1 -> x^3 + x^2 + 1
        assert Poly(2, (1, 1, 0, 1)).reciprocal() == Poly(2, (1, 0, 1, 1))
        # 2x^2 + x + 1 over GF(3) reversed is x^2 + x + 2, already monic
        assert Poly(3, (1, 1, 2)).reciprocal() == Poly(3, (2, 1, 1))

    def test_reciprocal_needs_constant_term(self):
        with pytest.raises(ZeroConstantTerm):
            Poly(2, (0, 1, 1)).reciprocal()

    def test_monic(self):
        assert Poly(5, (1, 2)).monic() == Poly(5, (3, 1))
        assert Poly(5, (1, 2)).monic().is_monic
