"""F_q arithmetic, irreducible modulus selection, quadratic character."""

import pytest

from polarcover.finite_field import (
    FieldElement,
    ZeroCharacterArgument,
    chi,
    construct_field,
    field_arith,
)


class TestConstruction:
    def test_prime_field(self):
        f = construct_field(5, 1)
        assert f.q == 5
        assert f.modulus == (0, 1)

    def test_f9_modulus(self):
        # Smallest monic irreducible over F_3, low-degree-first order: x^2 + 1.
        f = construct_field(3, 2)
        assert f.modulus == (1, 0, 1)

    def test_f25_modulus_irreducible(self):
        f = construct_field(5, 2)
        c0, c1, _ = f.modulus
        # x^2 + c1 x + c0 must have no root in F_5
        assert all((x * x + c1 * x + c0) % 5 != 0 for x in range(5))
        # and be minimal in the low-degree-first scan: c0=2, c1=0 works.
        assert f.modulus == (2, 0, 1)

    def test_rejects_bad_parameters(self):
        for p in (2, 4, 9, 1):
            with pytest.raises(ValueError):
                construct_field(p, 1)
        with pytest.raises(ValueError):
            construct_field(5, 0)


class TestArithmetic:
    @pytest.mark.parametrize("p,e", [(5, 1), (3, 2), (13, 1), (5, 2), (3, 3)])
    def test_field_axioms_exhaustive_on_samples(self, p, e):
        import random

        f = construct_field(p, e)
        rng = random.Random(7)
        for _ in range(200):
            a, b, c = (rng.randrange(f.q) for _ in range(3))
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            if a:
                assert f.mul(a, f.inv(a)) == 1
        assert f.mul(0, 3 % f.q) == 0

    def test_f9_square_of_generator(self):
        # In F_3[x]/(x^2+1), x has code 3 and x*x = -1 = 2.
        f = construct_field(3, 2)
        assert f.mul(3, 3) == 2

    def test_division_by_zero(self):
        f = construct_field(5, 1)
        with pytest.raises(ZeroDivisionError):
            f.inv(0)

    def test_pow_negative_exponent(self):
        f = construct_field(13, 1)
        for a in range(1, 13):
            assert f.mul(f.pow(a, -1), a) == 1
            assert f.pow(a, -2) == f.inv(f.mul(a, a))

    def test_coeffs_roundtrip(self):
        f = construct_field(3, 2)
        for code in range(9):
            assert f.code(f.coeffs(code)) == code


class TestCharacter:
    @pytest.mark.parametrize("p,e", [(5, 1), (3, 2), (13, 1), (17, 1), (5, 2), (3, 3)])
    def test_chi_matches_squares(self, p, e):
        f = construct_field(p, e)
        squares = {f.mul(x, x) for x in range(1, f.q)}
        for a in range(1, f.q):
            assert f.chi_code(a) == (1 if a in squares else -1)

    def test_chi_multiplicative(self):
        f = construct_field(13, 1)
        for a in range(1, 13):
            for b in range(1, 13):
                assert f.chi_code(f.mul(a, b)) == f.chi_code(a) * f.chi_code(b)

    def test_chi_minus_one_depends_on_q_mod_4(self):
        # chi(-1) = +1 iff q = 1 mod 4.
        for p, e in ((5, 1), (3, 2), (13, 1), (5, 2)):
            f = construct_field(p, e)
            assert f.chi_code(f.neg(1)) == (1 if f.q % 4 == 1 else -1)
        f7 = construct_field(7, 1)
        assert f7.chi_code(f7.neg(1)) == -1

    def test_chi_zero_is_an_error(self):
        f = construct_field(5, 1)
        with pytest.raises(ZeroCharacterArgument):
            f.chi_code(0)
        with pytest.raises(ZeroCharacterArgument):
            chi(FieldElement(f, 0))

    def test_smallest_nonsquare(self):
        assert construct_field(5, 1).smallest_nonsquare() == 2
        f9 = construct_field(3, 2)
        eta = f9.smallest_nonsquare()
        assert f9.chi_code(eta) == -1
        assert all(f9.chi_code(x) == 1 for x in range(1, eta))


class TestElementApi:
    def test_str_forms(self):
        f5 = construct_field(5, 1)
        assert str(FieldElement(f5, 3)) == "3"
        f9 = construct_field(3, 2)
        assert str(FieldElement(f9, 5)) == "2,1"   # 2 + x

    def test_field_arith(self):
        f = construct_field(5, 1)
        a, b = FieldElement(f, 3), FieldElement(f, 4)
        assert field_arith(a, b, "add").code == 2
        assert field_arith(a, b, "mul").code == 2
        assert field_arith(a, b, "sub").code == 4
        assert field_arith(a, b, "div").code == f.div(3, 4)
        assert field_arith(a, 3, "pow").code == f.pow(3, 3)
        with pytest.raises(ValueError):
            field_arith(a, b, "xor")
        with pytest.raises(ValueError):
            field_arith(a, FieldElement(construct_field(13, 1), 1), "add")
