"""Finite fields F_{l^f}: axioms, Frobenius, squares, polynomial roots."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fineselmer.finitefield import FiniteField, FqPoly, is_square

SMALL_FIELDS = [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (11, 1), (13, 2)]


@pytest.mark.parametrize("l,f", SMALL_FIELDS)
def test_enumeration_size_and_distinctness(l, f):
    field = FiniteField(l, f)
    elems = list(field.elements())
    assert len(elems) == l ** f == field.order
    assert len(set(elems)) == field.order


@pytest.mark.parametrize("l,f", [(2, 2), (3, 2), (5, 1), (7, 1)])
def test_field_axioms_exhaustive(l, f):
    field = FiniteField(l, f)
    elems = list(field.elements())
    for a, b in itertools.product(elems, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
    for a, b, c in itertools.islice(itertools.product(elems, repeat=3), 2000):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("l,f", SMALL_FIELDS)
def test_inverses(l, f):
    field = FiniteField(l, f)
    one = field.one()
    for a in field.elements():
        if a == field.zero():
            with pytest.raises(ZeroDivisionError):
                a.inverse()
        else:
            assert a * a.inverse() == one


@pytest.mark.parametrize("l,f", SMALL_FIELDS)
def test_frobenius_fixes_everything_at_order(l, f):
    field = FiniteField(l, f)
    q = field.order
    for a in field.elements():
        assert a ** q == a


@pytest.mark.parametrize("l,f", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (13, 1)])
def test_is_square_matches_exhaustive_square_set(l, f):
    field = FiniteField(l, f)
    squares = {a * a for a in field.elements()}
    for a in field.elements():
        assert is_square(a) == (a in squares)


def test_is_square_char2_rejected():
    field = FiniteField(2, 2)
    with pytest.raises(ValueError):
        is_square(field.one())


def test_mixed_field_arithmetic_rejected():
    a = FiniteField(5, 1).one()
    b = FiniteField(7, 1).one()
    with pytest.raises(ValueError):
        a + b


def test_prime_field_lift_roundtrip():
    field = FiniteField(11, 1)
    for k in range(11):
        assert field.element(k).lift() == k


def test_trace_surjects_onto_prime_field():
    # char-2 point counting relies on the Artin-Schreier trace criterion
    field = FiniteField(2, 3)
    images = {a.trace() for a in field.elements()}
    assert images == {field.zero(), field.one()}
    zeros = sum(1 for a in field.elements() if a.trace() == field.zero())
    assert zeros == 4    # kernel of trace has size q/2


@pytest.mark.parametrize("l,f", [(5, 2), (7, 1), (3, 3)])
def test_fqpoly_roots_by_scan(l, f):
    field = FiniteField(l, f)
    elems = list(field.elements())
    # (x - e0)(x - e1) has exactly those roots
    e0, e1 = elems[1], elems[-1]
    x = FqPoly.x(field)
    poly = (x - FqPoly(field, [e0])) * (x - FqPoly(field, [e1]))
    roots = [e for e in elems if poly(e) == field.zero()]
    assert set(roots) == {e0, e1}


def test_defining_polynomial_is_deterministic():
    # rebuilding the same field must give interoperable elements
    a = FiniteField(5, 2).gen()
    b = FiniteField(5, 2).gen()
    assert a == b and a + b == b + a


@given(st.sampled_from([3, 5, 7, 11]), st.integers(min_value=0, max_value=200),
       st.integers(min_value=0, max_value=200))
@settings(max_examples=60)
def test_prime_field_matches_int_arithmetic(l, x, y):
    field = FiniteField(l, 1)
    a, b = field.element(x), field.element(y)
    assert (a + b).lift() == (x + y) % l
    assert (a * b).lift() == (x * y) % l
    assert (a - b).lift() == (x - y) % l
