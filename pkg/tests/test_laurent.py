import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusfield.laurent import (
    GaussianRational,
    LaurentPoly,
    poly_to_text,
    substitute_monomials,
)

from helpers import random_laurent


def gr(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def mono(dim, exponent, coefficient=1):
    return LaurentPoly.monomial(dim, exponent, coefficient)


# -- hypothesis strategies ----------------------------------------------------

coefficients = st.builds(
    GaussianRational,
    st.fractions(min_value=-6, max_value=6, max_denominator=4),
    st.fractions(min_value=-6, max_value=6, max_denominator=4),
)


def polys(dim: int, exp_bound: int = 3, max_terms: int = 4):
    exponents = st.tuples(*[st.integers(-exp_bound, exp_bound)] * dim)
    return st.dictionaries(exponents, coefficients, max_size=max_terms).map(
        lambda terms: LaurentPoly(dim, terms)
    )


# -- GaussianRational ---------------------------------------------------------

class TestGaussianRational:
    def test_field_ops(self):
        a = gr(Fraction(1, 2), Fraction(3, 4))
        b = gr(-2, Fraction(1, 3))
        assert a + b == gr(Fraction(-3, 2), Fraction(13, 12))
        assert a * b == gr(Fraction(1, 2) * -2 - Fraction(3, 4) * Fraction(1, 3),
                           Fraction(1, 2) * Fraction(1, 3) + Fraction(3, 4) * -2)
        assert (a / b) * b == a
        assert -a + a == gr(0)

    def test_exact_equality_and_zero(self):
        assert gr(Fraction(2, 4)) == gr(Fraction(1, 2))
        assert not GaussianRational()
        assert gr(0, Fraction(1, 10**30))

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            gr(1) / gr(0)

    def test_complex_conversion(self):
        assert complex(gr(Fraction(1, 2), Fraction(-3, 4))) == complex(0.5, -0.75)


# -- spec'd operation examples -----------------------------------------------

class TestAdd:
    def test_cancellation(self):
        p = mono(1, (1,)) + LaurentPoly.constant(1, 1)
        q = mono(1, (1,), -1) + LaurentPoly.constant(1, 2)
        assert p + q == LaurentPoly.constant(1, 3)

    def test_identity(self):
        p = mono(2, (1, -2), gr(Fraction(1, 2)))
        assert p + LaurentPoly.zero(2) == p

    def test_like_terms(self):
        p = mono(1, (-1,))
        assert p + p == mono(1, (-1,), 2)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            LaurentPoly.zero(2) + LaurentPoly.zero(3)


class TestMul:
    def test_difference_of_squares(self):
        p = mono(1, (1,)) + mono(1, (-1,))
        q = mono(1, (1,)) + mono(1, (-1,), -1)
        assert p * q == mono(1, (2,)) + mono(1, (-2,), -1)

    def test_identity(self):
        p = random_laurent(random.Random(7), 3)
        assert p * LaurentPoly.constant(3, 1) == p

    def test_inverse_monomials(self):
        p = mono(2, (1, -1))
        q = mono(2, (-1, 1))
        assert p * q == LaurentPoly.constant(2, 1)


class TestEulerDerivative:
    def test_exponent_scaling(self):
        p = mono(2, (2, -3))
        assert p.euler_derivative(0) == mono(2, (2, -3), 2)
        assert p.euler_derivative(1) == mono(2, (2, -3), -3)

    def test_constants(self):
        assert LaurentPoly.constant(2, gr(5)).euler_derivative(0) == LaurentPoly.zero(2)

    def test_axis_out_of_range(self):
        with pytest.raises(ValueError, match="axis"):
            LaurentPoly.zero(2).euler_derivative(2)


class TestEvaluate:
    def test_direct_product(self):
        assert mono(2, (1, 1)).evaluate((2, 3j)) == 6j

    def test_zero_poly(self):
        assert LaurentPoly.zero(2).evaluate((1 + 1j, -2)) == 0

    def test_reciprocal(self):
        assert mono(1, (-1,)).evaluate((2,)) == 0.5

    def test_zero_coordinate_rejected(self):
        with pytest.raises(ValueError, match="zero coordinate"):
            mono(2, (-1, 1)).evaluate((0, 1))


class TestQueries:
    def test_is_constant(self):
        assert LaurentPoly(1, {(0,): 5, (1,): 0}).is_constant()
        assert not mono(1, (-2,)).is_constant()
        assert LaurentPoly.zero(4).is_constant()

    def test_support(self):
        p = mono(2, (1, 1)) + mono(2, (0, -1), 2)
        assert p.support() == {(1, 1), (0, -1)}

    def test_constant_term(self):
        assert (mono(1, (2,)) + 7).constant_term() == gr(7)
        assert mono(1, (2,)).constant_term() == gr(0)


class TestRewriteInBasis:
    def test_hand_substitution(self):
        # W = z1*z2: z1*z2 + 2 becomes w + 2
        p = mono(2, (1, 1)) + LaurentPoly.constant(2, 2)
        rewritten = p.rewrite_in_basis({(1, 1): (1,), (0, 0): (0,)}, 1)
        assert rewritten == mono(1, (1,)) + LaurentPoly.constant(1, 2)

    def test_zero(self):
        assert LaurentPoly.zero(2).rewrite_in_basis({}, 1) == LaurentPoly.zero(1)

    def test_negative_coordinates(self):
        # W = z1^2 z2^2: z1^2 z2^2 + z1^-2 z2^-2 becomes w + w^-1
        p = mono(2, (2, 2)) + mono(2, (-2, -2))
        rewritten = p.rewrite_in_basis({(2, 2): (1,), (-2, -2): (-1,)}, 1)
        assert rewritten == mono(1, (1,)) + mono(1, (-1,))

    def test_missing_coordinate(self):
        with pytest.raises(ValueError, match="missing coordinate"):
            mono(2, (1, 0)).rewrite_in_basis({}, 1)


# -- algebraic properties ------------------------------------------------------

class TestRingAxioms:
    @given(polys(2), polys(2))
    def test_add_commutes(self, p, q):
        assert p + q == q + p

    @given(polys(2), polys(2), polys(2))
    @settings(max_examples=50)
    def test_add_associates(self, p, q, r):
        assert (p + q) + r == p + (q + r)

    @given(polys(2, exp_bound=2, max_terms=3), polys(2, exp_bound=2, max_terms=3))
    def test_mul_commutes(self, p, q):
        assert p * q == q * p

    @given(
        polys(2, exp_bound=2, max_terms=3),
        polys(2, exp_bound=2, max_terms=3),
        polys(2, exp_bound=2, max_terms=3),
    )
    @settings(max_examples=50)
    def test_mul_associates(self, p, q, r):
        assert (p * q) * r == p * (q * r)

    @given(
        polys(2, exp_bound=2, max_terms=3),
        polys(2, exp_bound=2, max_terms=3),
        polys(2, exp_bound=2, max_terms=3),
    )
    @settings(max_examples=50)
    def test_distributive(self, p, q, r):
        assert p * (q + r) == p * q + p * r

    @given(polys(3))
    def test_additive_inverse(self, p):
        assert p + (-p) == LaurentPoly.zero(3)


class TestDerivationProperty:
    @given(polys(2, exp_bound=2, max_terms=3), polys(2, exp_bound=2, max_terms=3), st.integers(0, 1))
    @settings(max_examples=80)
    def test_product_rule(self, p, q, axis):
        lhs = (p * q).euler_derivative(axis)
        rhs = p.euler_derivative(axis) * q + p * q.euler_derivative(axis)
        assert lhs == rhs


class TestEvalHomomorphism:
    @given(
        polys(2, exp_bound=3, max_terms=4),
        polys(2, exp_bound=3, max_terms=4),
        st.tuples(st.floats(0.5, 2), st.floats(0, 6.28)),
        st.tuples(st.floats(0.5, 2), st.floats(0, 6.28)),
    )
    @settings(max_examples=60)
    def test_mul_respected(self, p, q, polar1, polar2):
        import cmath

        point = (cmath.rect(*polar1), cmath.rect(*polar2))
        lhs = (p * q).evaluate(point)
        rhs = p.evaluate(point) * q.evaluate(point)
        # Scale of the computation: the homomorphism holds to 1e-10 relative
        # to the term-magnitude budget, which dominates any cancellation.
        scale = _magnitude_budget(p, point) * _magnitude_budget(q, point)
        assert abs(lhs - rhs) <= 1e-10 * max(scale, 1.0)


def _magnitude_budget(p, point):
    total = 0.0
    for exponent, coefficient in p.terms.items():
        value = abs(complex(coefficient))
        for z, e in zip(point, exponent):
            value *= abs(z) ** e
        total += value
    return total


class TestSubstitutionRoundTrip:
    @given(polys(2, exp_bound=2, max_terms=4))
    @settings(max_examples=60)
    def test_rewrite_then_back_substitute(self, f):
        # p(Z) = f(W) with W1 = z1*z2^-1, W2 = z2^3; independent rows
        rows = [(1, -1), (0, 3)]
        p = substitute_monomials(f, rows, 2)
        coords = {}
        for k1, k2 in f.support():
            alpha = (k1, -k1 + 3 * k2)
            coords[alpha] = (k1, k2)
        assert p.rewrite_in_basis(coords, 2) == f
        # and expanding via mul/powers agrees with substitute_monomials
        w1 = LaurentPoly.monomial(2, (1, -1))
        w2 = LaurentPoly.monomial(2, (0, 3))
        expanded = LaurentPoly.zero(2)
        for (k1, k2), c in f.terms.items():
            factor = LaurentPoly.constant(2, c)
            factor = factor * _int_power(w1, k1) * _int_power(w2, k2)
            expanded = expanded + factor
        assert expanded == p


def _int_power(p, k):
    if k >= 0:
        return p**k
    inverse = LaurentPoly(p.dim, {tuple(-e for e in exp): c for exp, c in p.terms.items()})
    return inverse ** (-k)


# -- canonical text ordering ---------------------------------------------------

class TestPrinting:
    def test_graded_lex_order(self):
        p = LaurentPoly(
            2,
            {(2, 0): 1, (0, 0): 3, (1, 0): 1, (0, 1): 1, (-1, 0): 1},
        )
        assert poly_to_text(p, ["z1", "z2"]) == "z1^-1 + 3 + z2 + z1 + z1^2"

    def test_zero(self):
        assert poly_to_text(LaurentPoly.zero(2), ["z1", "z2"]) == "0"

    def test_deterministic(self):
        rng = random.Random(3)
        for _ in range(50):
            p = random_laurent(rng, 3)
            text = poly_to_text(p, ["z1", "z2", "z3"])
            q = LaurentPoly(3, dict(reversed(list(p.terms.items()))))
            assert poly_to_text(q, ["z1", "z2", "z3"]) == text

    def test_immutable(self):
        p = LaurentPoly.zero(1)
        with pytest.raises(AttributeError):
            p.dim = 2
