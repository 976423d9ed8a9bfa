"""Polynomial factorization over finite fields and over Q.

The oracle strategy is reconstruction: build polynomials as explicit products
of known irreducibles, factor them, and demand the exact multiset back.
Irreducibility of every emitted factor is cross-checked with the independent
distinct-degree test.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fineselmer.factorization import (
    factor_fq,
    factor_int_poly,
    is_irreducible_fq,
)
from fineselmer.finitefield import FiniteField, FqPoly
from fineselmer.polynomial import QPoly


def qpoly(*coeffs: int) -> QPoly:
    # ascending coefficient order
    return QPoly([Fraction(c) for c in coeffs])


def fq_poly(field: FiniteField, *coeffs: int) -> FqPoly:
    return FqPoly(field, coeffs)


# --- finite field side ---


def test_factor_fq_reconstructs_known_product():
    F = FiniteField(7, 1)
    # (x + 1)^2 * (x^2 + 1) * 3; x^2 + 1 has no root mod 7
    f = fq_poly(F, 1, 1) * fq_poly(F, 1, 1) * fq_poly(F, 1, 0, 1) * fq_poly(F, 3)
    unit, factors = factor_fq(f)
    assert unit == F.element(3)
    assert [(list(g.coeffs), m) for g, m in factors] == [
        ([F.element(1), F.element(1)], 2),
        ([F.element(1), F.element(0), F.element(1)], 1),
    ]


def test_factor_fq_splits_frobenius_orbit():
    # x^4 + 1 is irreducible over Q yet splits into quadratics mod every prime
    F = FiniteField(3, 1)
    unit, factors = factor_fq(fq_poly(F, 1, 0, 0, 0, 1))
    assert unit == F.one()
    assert sorted(g.degree for g, _ in factors) == [2, 2]
    for g, mult in factors:
        assert mult == 1
        assert is_irreducible_fq(g)


def test_factor_fq_extension_field():
    F = FiniteField(5, 2)
    gen = F.gen()
    # (x - gen)(x - gen^5) is the minimal polynomial of gen over F_5,
    # but viewed over F_25 it must split back into the two linear factors
    lin1 = FqPoly(F, [-gen, F.one()])
    lin2 = FqPoly(F, [-(gen ** 5), F.one()])
    unit, factors = factor_fq(lin1 * lin2)
    assert unit == F.one()
    assert sorted(g.degree for g, _ in factors) == [1, 1]
    roots = sorted((-g.coeffs[0] for g, _ in factors), key=lambda e: e.coords)
    assert sorted([gen, gen ** 5], key=lambda e: e.coords) == roots


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([(2, 1), (3, 1), (5, 1), (7, 1), (3, 2)]),
    st.lists(st.integers(0, 200), min_size=1, max_size=4),
    st.data(),
)
def test_factor_fq_random_roundtrip(pq, seeds, data):
    p, k = pq
    F = FiniteField(p, k)
    product = FqPoly(F, [data.draw(st.integers(1, p - 1))])
    for s in seeds:
        deg = 1 + s % 3
        coeffs = [F.element((s * 31 + j * 7 + 1) % p ** k) for j in range(deg)]
        product = product * FqPoly(F, coeffs + [F.one()])
    unit, factors = factor_fq(product)
    rebuilt = FqPoly(F, [unit])
    for g, mult in factors:
        assert is_irreducible_fq(g)
        assert g.leading == F.one()
        for _ in range(mult):
            rebuilt = rebuilt * g
    assert list(rebuilt.coeffs) == list(product.coeffs)


def test_factor_fq_constant_and_zero():
    F = FiniteField(5, 1)
    unit, factors = factor_fq(fq_poly(F, 4))
    assert unit == F.element(4) and factors == []
    with pytest.raises(ValueError):
        factor_fq(FqPoly(F, []))


def test_is_irreducible_fq_matches_root_scan():
    # exhaustive over small degrees: a quadratic or cubic over F_p is
    # irreducible exactly when it has no root
    F = FiniteField(3, 1)
    xs = [F.element(i) for i in range(3)]
    for a in range(3):
        for b in range(3):
            f = fq_poly(F, b, a, 1)
            assert is_irreducible_fq(f) == all(f(x) != F.zero() for x in xs)


def test_is_irreducible_fq_quartics():
    F = FiniteField(2, 1)
    # x^4 + x + 1 is primitive over F_2; x^4 + x^2 + 1 = (x^2 + x + 1)^2
    assert is_irreducible_fq(fq_poly(F, 1, 1, 0, 0, 1))
    assert not is_irreducible_fq(fq_poly(F, 1, 0, 1, 0, 1))


# --- rational side ---


def test_factor_int_poly_known_product():
    f = qpoly(-2, 0, 1) * qpoly(-3, 0, 1) * qpoly(1, 1) * qpoly(1, 1) * qpoly(6)
    content, factors = factor_int_poly(f)
    rebuilt = QPoly.constant(content)
    for g, mult in factors:
        rebuilt = rebuilt * g ** mult
    assert rebuilt == f
    assert content == 6
    assert sorted((g.degree, m) for g, m in factors) == [(1, 2), (2, 1), (2, 1)]
    assert any(list(g.int_coeffs()) == [-2, 0, 1] for g, _ in factors)
    assert any(list(g.int_coeffs()) == [-3, 0, 1] for g, _ in factors)


def test_factor_int_poly_swinnerton_dyer_quartic():
    # minimal polynomial of sqrt(2) + sqrt(3): irreducible over Q although
    # it factors modulo every single prime, so any one-prime shortcut lies
    content, factors = factor_int_poly(qpoly(1, 0, -10, 0, 1))
    assert content == 1
    assert len(factors) == 1
    assert factors[0][1] == 1
    assert list(factors[0][0].int_coeffs()) == [1, 0, -10, 0, 1]


def test_factor_int_poly_cyclotomic_irreducible():
    for p in (3, 5, 7, 11, 13):
        phi = qpoly(*([1] * p))
        content, factors = factor_int_poly(phi)
        assert content == 1
        assert len(factors) == 1 and factors[0][1] == 1
        assert factors[0][0] == phi


def test_factor_int_poly_rational_content():
    f = qpoly(-1, 0, 1) * QPoly.constant(Fraction(3, 4))
    content, factors = factor_int_poly(f)
    assert content == Fraction(3, 4)
    assert sorted(list(g.int_coeffs()) for g, _ in factors) == [[-1, 1], [1, 1]]


def test_factor_int_poly_negative_leading():
    content, factors = factor_int_poly(qpoly(4, 0, -1))
    assert content == -1
    assert sorted(list(g.int_coeffs()) for g, _ in factors) == [[-2, 1], [2, 1]]
    rebuilt = QPoly.constant(content)
    for g, m in factors:
        rebuilt = rebuilt * g ** m
    assert rebuilt == qpoly(4, 0, -1)


def test_factor_int_poly_power_of_x():
    content, factors = factor_int_poly(qpoly(0, 0, 0, 5))
    assert content == 5
    assert factors == [(QPoly.x(), 3)]


def test_factor_int_poly_division_polynomial_shape():
    # 5-division polynomial of y^2 + y = x^3 - x^2 - 10x - 20: the two
    # rational roots 5 and 16 cut out the kernel of the rational 5-isogeny
    from fineselmer.elliptic import WeierstrassModel

    model = WeierstrassModel(0, -1, 1, -10, -20)
    psi5 = model.division_polynomial(5)
    content, factors = factor_int_poly(psi5)
    degrees = sorted(g.degree for g, _ in factors)
    assert degrees == [1, 1, 2, 4, 4]
    linear_roots = sorted(
        -Fraction(g.coeff(0), g.coeff(1)) for g, _ in factors if g.degree == 1
    )
    assert linear_roots == [5, 16]
    assert all(m == 1 for _, m in factors)


@settings(max_examples=30, deadline=None)
@given(
    st.lists(
        st.sampled_from(
            [
                [1, 1],
                [-2, 1],
                [3, 2],
                [1, 0, 1],
                [-2, 0, 1],
                [1, 1, 1],
                [2, -1, 0, 1],
            ]
        ),
        min_size=1,
        max_size=4,
    ),
    st.integers(-6, 6).filter(lambda n: n != 0),
)
def test_factor_int_poly_random_roundtrip(parts, scale):
    f = QPoly.constant(Fraction(scale))
    for part in parts:
        f = f * qpoly(*part)
    content, factors = factor_int_poly(f)
    rebuilt = QPoly.constant(content)
    for g, mult in factors:
        assert g.is_integral
        assert g.leading > 0
        assert g.content() == 1
        rebuilt = rebuilt * g ** mult
    assert rebuilt == f


def test_factor_int_poly_rejects_zero():
    with pytest.raises(ValueError):
        factor_int_poly(QPoly.zero())
