from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from qenvelope.cyclo import (
    CycloNum,
    cyclotomic_polynomial,
    epsilon,
    euler_phi,
    gaussian_polynomial,
    q_binomial,
    q_factorial,
    q_int,
    root_of_unity,
)

LEVELS = [3, 5, 9, 15, 45]
X = sympy.Symbol("x")


def sympy_reduce(level, poly):
    """Independent oracle: reduce a sympy polynomial modulo the level-th cyclotomic polynomial."""
    phi = sympy.cyclotomic_poly(level, X)
    rem = sympy.rem(sympy.Poly(poly, X, domain="QQ"), sympy.Poly(phi, X, domain="QQ"))
    coeffs = list(reversed(rem.all_coeffs()))
    coeffs += [0] * (euler_phi(level) - len(coeffs))
    return [Fraction(str(c)) for c in coeffs]


def to_sympy(x):
    return sum(sympy.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(x.coeffs))


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def cyclo_nums(draw, level=None):
    level = level or draw(st.sampled_from(LEVELS))
    coeffs = draw(st.lists(rationals, min_size=1, max_size=euler_phi(level) + 3))
    return CycloNum(level, coeffs)


@st.composite
def triples(draw):
    level = draw(st.sampled_from(LEVELS))
    return tuple(draw(cyclo_nums(level)) for _ in range(3))


# -- roots of unity -------------------------------------------------------------


def test_coeff_length_is_phi():
    for level in LEVELS + [1, 2, 7, 25]:
        assert len(CycloNum.one(level).coeffs) == euler_phi(level)
        assert len(cyclotomic_polynomial(level)) == euler_phi(level) + 1


def test_root_of_unity_examples():
    assert root_of_unity(3, 3) == CycloNum.one(3)
    assert root_of_unity(3, 1) + root_of_unity(3, 2) == CycloNum.from_rational(3, -1)
    z = root_of_unity(9, 2) ** 3
    assert z == root_of_unity(9, 6)
    assert list(z.coeffs) == sympy_reduce(9, X**6)
    assert z.root_exponent() == 6


@pytest.mark.parametrize("level", LEVELS)
def test_zeta_powers(level):
    z = CycloNum.zeta(level)
    assert z**level == CycloNum.one(level)
    for k in range(1, level):
        assert z**k != CycloNum.one(level)
        assert (z**k).multiplicative_order() == level // sympy.gcd(k, level)


def test_epsilon_is_primitive_ell_root():
    for ell in (3, 5, 7, 9, 15, 25):
        e = epsilon(ell)
        assert e.multiplicative_order() == ell
        big = epsilon(ell, 3 * ell)
        assert big.level == 3 * ell and big.multiplicative_order() == ell
        assert big == root_of_unity(3 * ell, 3)
    with pytest.raises(ValueError):
        epsilon(3, 10)


def test_lift_keeps_value():
    z = root_of_unity(9, 3)
    assert z.lift(9) == z
    assert root_of_unity(3, 1).lift(9) == z
    assert root_of_unity(5, 2).lift(15) == root_of_unity(15, 6)


# -- q-numbers ---------------------------------------------------------------------


def test_q_int_examples():
    e5 = epsilon(5)
    assert q_int(1, e5) == CycloNum.one(5)
    assert q_int(3, epsilon(3)).is_zero()
    assert q_int(2, e5) == e5 + e5.inverse()
    assert q_int(0, e5).is_zero()
    assert q_int(-2, e5) == -q_int(2, e5)


def test_q_binomial_examples():
    e5, e3 = epsilon(5), epsilon(3)
    for c in range(6):
        assert q_binomial(c, 0, e5) == CycloNum.one(5)
    assert q_binomial(2, 1, e5) == q_int(2, e5)
    assert q_binomial(3, 1, e3).is_zero()


def test_gaussian_polynomial_oracle():
    # symmetric convention: q^{-k(n-k)} times the ordinary Gaussian polynomial in q^2
    q = sympy.Symbol("q")
    for n in range(7):
        for k in range(n + 1):
            ordinary = sympy.expand(
                sympy.prod([(1 - q ** (2 * (n - i))) for i in range(k)])
                / sympy.prod([(1 - q ** (2 * (i + 1))) for i in range(k)])
            )
            ordinary = sympy.expand(sympy.cancel(ordinary))
            want = {m[0] - k * (n - k): int(c) for m, c in sympy.Poly(ordinary, q).terms()}
            assert gaussian_polynomial(n, k) == want, (n, k)


@pytest.mark.parametrize("ell", range(3, 26, 2))
def test_ell_vanishing(ell):
    e = epsilon(ell)
    assert q_int(ell, e).is_zero()
    for d in range(1, ell):
        assert q_binomial(ell, d, e).is_zero()
        assert not q_int(d, e).is_zero()
    assert q_factorial(ell, e).is_zero()
    assert not q_factorial(ell - 1, e).is_zero()


@given(st.sampled_from([3, 5, 7, 9, 15]), st.integers(2, 12), st.data())
def test_q_pascal(ell, c, data):
    d = data.draw(st.integers(1, c - 1))
    e = epsilon(ell)
    lhs = q_binomial(c, d, e)
    assert lhs == e ** (c - d) * q_binomial(c - 1, d - 1, e) + e ** (-d) * q_binomial(c - 1, d, e)
    assert lhs == e ** (d - c) * q_binomial(c - 1, d - 1, e) + e**d * q_binomial(c - 1, d, e)


@given(st.sampled_from([3, 5, 7]), st.integers(0, 10), st.data())
def test_q_binomial_symmetry_and_factorials(ell, c, data):
    d = data.draw(st.integers(0, c))
    e = epsilon(ell, 3 * ell)
    assert q_binomial(c, d, e) == q_binomial(c, c - d, e)
    den = q_factorial(d, e) * q_factorial(c - d, e)
    if not den.is_zero():
        assert q_binomial(c, d, e) * den == q_factorial(c, e)


# -- field axioms ---------------------------------------------------------------------


@given(triples())
def test_field_axioms(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == CycloNum.zero(a.level)
    if not a.is_zero():
        assert a * a.inverse() == CycloNum.one(a.level)
        assert (b / a) * a == b


@given(triples())
def test_multiplication_matches_sympy(t):
    a, b, _ = t
    assert list((a * b).coeffs) == sympy_reduce(a.level, sympy.expand(to_sympy(a) * to_sympy(b)))


@given(cyclo_nums())
def test_json_roundtrip(x):
    assert CycloNum.from_json(x.level, x.to_json()) == x
    assert hash(CycloNum.from_json(x.level, x.to_json())) == hash(x)


def test_mixed_levels_rejected():
    with pytest.raises(ValueError):
        CycloNum.one(3) + CycloNum.one(5)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        CycloNum.zero(9).inverse()
