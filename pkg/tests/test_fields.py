import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lrsprod import fields
from lrsprod.fields import (
    DescentError,
    all_elements,
    descend,
    element,
    embed,
    format_element,
    format_field,
    frobenius_orbit,
    generator,
    make_field,
    minimal_poly_of_element,
    one,
    parse_field,
    random_element,
    rationals,
    zero,
)
from lrsprod.poly import format_polynomial, is_irreducible, parse_polynomial

GF2 = make_field(2)
GF3 = make_field(3)
GF4 = make_field(2, 2)
GF8 = make_field(2, 3)
GF9 = make_field(3, 2)
Q = rationals()


def test_make_field_examples():
    assert GF4.modulus == (1, 1, 1)  # x^2 + x + 1
    assert Q.is_rationals and Q.degree == 1
    assert GF3.modulus is None and GF3.kind == "prime-field"
    assert GF4.kind == "extension-field"
    assert GF4.order == 4


def test_make_field_errors():
    with pytest.raises(ValueError):
        make_field(4)
    with pytest.raises(ValueError):
        make_field(2, 0)
    with pytest.raises(ValueError):
        make_field(0, 2)
    with pytest.raises(ValueError):
        make_field(2, 2, (1, 0, 1))  # x^2 + 1 = (x+1)^2 is not irreducible


def test_custom_modulus_field():
    assert GF8.modulus == (1, 1, 0, 1)  # x^3 + x + 1 is the canonical choice
    f = make_field(2, 3, (1, 0, 1, 1))  # x^3 + x^2 + 1: irreducible, not lex-min
    a = generator(f)
    assert a * a * a == a * a + one(f)
    assert "/" in format_field(f)
    assert parse_field(format_field(f)) == f


def test_descriptor_is_value_compared():
    assert make_field(2, 2) == FieldDescriptorCopy()


def FieldDescriptorCopy():
    from lrsprod.fields import FieldDescriptor

    return FieldDescriptor(2, 2, (1, 1, 1))


def test_arith_examples():
    a = generator(GF4)
    assert a * a == a + one(GF4)
    x = element(Q, Fraction(2, 3))
    y = element(Q, Fraction(3, 4))
    assert (x * y).value == Fraction(1, 2)
    for f in (GF2, GF9, Q):
        v = element(f, 5)
        assert v + zero(f) == v


def test_division_and_errors():
    a = generator(GF9)
    assert a / a == one(GF9)
    with pytest.raises(ZeroDivisionError):
        zero(GF9).inverse()
    with pytest.raises(ValueError):
        element(GF2, 1) + element(GF3, 1)


@pytest.mark.parametrize("field", [GF2, GF3, make_field(5), GF4, GF8, GF9, Q])
def test_field_axioms_random_triples(field):
    rng = random.Random(42)
    for _ in range(1000):
        a, b, c = (random_element(field, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == zero(field)
        if not b.is_zero:
            assert b * b.inverse() == one(field)


def test_pth_power_fixes_whole_field():
    for p, kmax in ((2, 8), (3, 5), (5, 3), (7, 2)):
        for k in range(1, kmax + 1):
            f = make_field(p, k) if k > 1 else make_field(p)
            if f.order > 256:
                continue
            for a in all_elements(f):
                assert a ** (p**k) == a


def test_frobenius_orbit_examples():
    a = generator(GF4)
    orbit = frobenius_orbit(a)
    assert orbit == [a, a + one(GF4)]
    assert frobenius_orbit(one(make_field(5, 2))) == [one(make_field(5, 2))]
    assert frobenius_orbit(element(GF3, 2)) == [element(GF3, 2)]
    with pytest.raises(ValueError):
        frobenius_orbit(element(Q, 2))


def test_orbit_length_divides_degree():
    rng = random.Random(3)
    for field in (GF8, GF9, make_field(2, 4), make_field(2, 6)):
        for _ in range(30):
            a = random_element(field, rng)
            assert field.degree % len(frobenius_orbit(a)) == 0


def test_minimal_poly_examples():
    a = generator(GF4)
    mp = minimal_poly_of_element(a, GF2)
    assert format_polynomial(mp) == "x^2 + x + 1"
    assert format_polynomial(minimal_poly_of_element(one(GF9), GF3)) == "x + 2"
    inside = embed(element(GF2, 1), make_field(2, 4))
    assert minimal_poly_of_element(inside, GF2).degree == 1


def test_minimal_poly_is_irreducible_and_annihilates():
    rng = random.Random(9)
    for field, base in ((GF8, GF2), (GF9, GF3), (make_field(2, 4), GF4), (make_field(2, 4), GF2)):
        for _ in range(20):
            a = random_element(field, rng)
            if a.is_zero:
                continue
            mp = minimal_poly_of_element(a, base)
            assert is_irreducible(mp)
            lifted = [embed(c, field) for c in mp.coefficients()]
            acc = zero(field)
            for c in reversed(lifted):
                acc = acc * a + c
            assert acc.is_zero


def test_embed_examples():
    assert embed(element(GF2, 1), GF8) == one(GF8)
    im = embed(generator(GF4), make_field(2, 4))
    # the image must be a root of x^2 + x + 1
    assert im * im + im + one(make_field(2, 4)) == zero(make_field(2, 4))
    with pytest.raises(ValueError):
        embed(generator(GF4), GF8)  # 2 does not divide 3
    with pytest.raises(ValueError):
        embed(element(GF3, 1), GF4)


def test_embed_composition_consistency():
    for p, chain in [(2, (2, 4, 8)), (2, (2, 6, 12)), (2, (3, 6, 12)), (3, (2, 4, 8)), (2, (2, 4, 20))]:
        k, e, D = chain
        src, mid, dst = make_field(p, k), make_field(p, e), make_field(p, D)
        for a in all_elements(src):
            assert embed(embed(a, mid), dst) == embed(a, dst)


def test_embed_is_field_homomorphism():
    for src, dst in ((GF4, make_field(2, 4)), (GF8, make_field(2, 6)), (GF9, make_field(3, 4))):
        els = list(all_elements(src))
        images = {a: embed(a, dst) for a in els}
        assert len(set(images.values())) == len(els)  # injective
        for a in els:
            for b in els:
                assert images[a] + images[b] == embed(a + b, dst)
                assert images[a] * images[b] == embed(a * b, dst)


def test_descend_inverts_embed_and_rejects_outsiders():
    dst = make_field(2, 4)
    for a in all_elements(GF4):
        assert descend(embed(a, dst), GF4) == a
    g = generator(dst)  # degree 4, not in the image of GF(4)
    with pytest.raises(DescentError):
        descend(g, GF4)
    with pytest.raises(DescentError):
        descend(g, GF2)


def test_parse_and_format_field():
    assert parse_field("Q") == Q
    assert parse_field("GF(5)") == make_field(5)
    assert parse_field("GF(2^3)") == GF8
    assert parse_field("GF(9)") == GF9
    assert parse_field("GF(4)/x^2+x+1") == GF4
    with pytest.raises(ValueError):
        parse_field("GF(6)")
    with pytest.raises(ValueError):
        parse_field("ZZ")
    for f in (Q, GF2, GF9, make_field(2, 4)):
        assert parse_field(format_field(f)) == f


def test_format_element_round_trip_through_polys():
    for f in (GF2, GF9, GF4, Q):
        rng = random.Random(1)
        for _ in range(50):
            a = random_element(f, rng)
            text = format_element(a)
            p = parse_polynomial(text if not text.startswith("-") else f"0{text}", f)
            assert p.coeff(0) == a


@settings(max_examples=60)
@given(st.integers(-40, 40), st.integers(-40, 40), st.integers(1, 12), st.integers(1, 12))
def test_rational_arithmetic_matches_fractions(a, b, c, d):
    x = element(Q, Fraction(a, c))
    y = element(Q, Fraction(b, d))
    assert (x + y).value == Fraction(a, c) + Fraction(b, d)
    assert (x * y).value == Fraction(a, c) * Fraction(b, d)
