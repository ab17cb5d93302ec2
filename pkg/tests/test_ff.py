import random

import pytest

from slgen import ff, mat, poly
from slgen.errors import (
    FieldMismatchError,
    NotIrreducibleError,
    ParseError,
    RepresentationError,
)


def test_prime_field_arithmetic(f5):
    a = f5.from_int(3)
    b = f5.from_int(4)
    assert (a + b).raw == 2
    assert (a * b).raw == 2
    assert (a - b).raw == 4
    assert (a / b).raw == (3 * 4) % 5  # 4^-1 = 4 mod 5
    assert (-a).raw == 2


def test_identities_behave(f9):
    rng = random.Random("ff-ident")
    for _ in range(100):
        a = f9.random(rng)
        assert a + f9.zero() == a
        assert a * f9.one() == a
        assert a - a == f9.zero()
        if not a.is_zero():
            assert a * a.inverse() == f9.one()


def test_mixed_field_arithmetic_rejected(f3, f5):
    with pytest.raises(FieldMismatchError):
        f3.one() + f5.one()


def test_f4_frobenius_and_trace(f4):
    """F_4 = F_2[w]/(w^2+w+1): Fr(w) = w^2 = w + 1 and tr(w) = 1."""
    tower = ff.make_tower(ff.make_field(2), 2)
    w = tower.top.gen()
    fw = ff.frobenius(w, tower)
    assert fw.coeffs()[0].raw == 1 and fw.coeffs()[1].raw == 1
    assert ff.rel_trace(w, tower).raw == 1


def test_frobenius_trivial_cases(f3):
    tower = ff.make_tower(f3, 3)
    assert ff.frobenius(tower.top.zero(), tower).is_zero()
    a = ff.embed(f3.from_int(2), tower)
    assert ff.frobenius(a, tower) == a  # base field is fixed pointwise


def test_trace_of_one_is_n(f3, f5):
    for base, n in [(f3, 2), (f3, 3), (f3, 4), (f5, 3)]:
        tower = ff.make_tower(base, n)
        assert ff.rel_trace(tower.top.one(), tower) == base.from_int(n)


def test_frobenius_power_n_is_identity():
    for p, m, n in [(2, 1, 3), (3, 1, 2), (2, 2, 2), (3, 2, 2)]:
        tower = ff.make_tower(ff.make_field(p, m), n)
        for a in tower.top.elements():
            b = a
            for _ in range(n):
                b = ff.frobenius(b, tower)
            assert b == a


def test_frobenius_is_automorphism(f9):
    tower = ff.make_tower(f9, 3)
    rng = random.Random("frob-hom")
    for _ in range(100):
        a = tower.top.random(rng)
        b = tower.top.random(rng)
        assert ff.frobenius(a + b, tower) == ff.frobenius(a, tower) + ff.frobenius(b, tower)
        assert ff.frobenius(a * b, tower) == ff.frobenius(a, tower) * ff.frobenius(b, tower)


def test_rel_trace_linear_and_surjective():
    # exhaustive on small towers
    for p, m, n in [(3, 1, 2), (2, 2, 2), (3, 1, 3)]:
        base = ff.make_field(p, m)
        tower = ff.make_tower(base, n)
        images = {ff.rel_trace(a, tower) for a in tower.top.elements()}
        assert images == set(base.elements())
        rng = random.Random(f"trace-lin:{p}:{m}:{n}")
        for _ in range(30):
            a = tower.top.random(rng)
            b = tower.top.random(rng)
            c = base.random(rng)
            assert ff.rel_trace(a + b, tower) == ff.rel_trace(a, tower) + ff.rel_trace(b, tower)
            assert ff.rel_trace(ff.embed(c, tower) * a, tower) == c * ff.rel_trace(a, tower)


def test_poly_in_frobenius(f3):
    tower = ff.make_tower(f3, 4)
    rng = random.Random("pif")
    x = poly.Polynomial.x(f3)
    xn_minus_1 = poly.Polynomial.from_ints(f3, [-1, 0, 0, 0, 1])
    phi = poly.phi_polynomial(f3, 4)
    for _ in range(50):
        a = tower.top.random(rng)
        assert ff.poly_in_frobenius(x, a, tower) == ff.frobenius(a, tower)
        assert ff.poly_in_frobenius(xn_minus_1, a, tower).is_zero()
        expected = ff.embed(ff.rel_trace(a, tower), tower)
        assert ff.poly_in_frobenius(phi, a, tower) == expected


def test_poly_in_frobenius_composes(f3):
    tower = ff.make_tower(f3, 3)
    rng = random.Random("pif-comp")
    for _ in range(40):
        g = poly.random_polynomial(f3, 2, rng)
        h = poly.random_polynomial(f3, 2, rng)
        a = tower.top.random(rng)
        lhs = ff.poly_in_frobenius(g * h, a, tower)
        rhs = ff.poly_in_frobenius(g, ff.poly_in_frobenius(h, a, tower), tower)
        assert lhs == rhs


def test_frobenius_matrix_f4():
    tower = ff.make_tower(ff.make_field(2), 2)
    m = ff.frobenius_matrix(tower)
    # columns are coords(Fr(1)) = (1,0) and coords(Fr(w)) = coords(w+1) = (1,1)
    assert [[e.raw for e in row] for row in m.rows] == [[1, 1], [0, 1]]


def test_frobenius_matrix_tracks_frobenius(f9):
    tower = ff.make_tower(f9, 3)
    m = ff.frobenius_matrix(tower)
    rng = random.Random("frobmat")
    for _ in range(60):
        a = tower.top.random(rng)
        vec = a.coeffs()
        image = [mat._dot(row, vec, f9.zero()) for row in m.rows]
        assert image == ff.frobenius(a, tower).coeffs()


def test_frobenius_matrix_char_poly_is_xn_minus_1():
    for p, m_, n in [(3, 1, 2), (3, 1, 3), (2, 2, 3), (5, 1, 4)]:
        base = ff.make_field(p, m_)
        tower = ff.make_tower(base, n)
        cp = mat.char_poly(ff.frobenius_matrix(tower))
        expected = poly.Polynomial.from_ints(base, [-1] + [0] * (n - 1) + [1])
        assert cp == expected


def test_embed_extract(f3):
    tower = ff.make_tower(f3, 3)
    rng = random.Random("embed")
    assert ff.embed(f3.zero(), tower).is_zero()
    for _ in range(100):
        a = f3.random(rng)
        b = f3.random(rng)
        assert ff.extract_base(ff.embed(a, tower), tower) == a
        assert ff.embed(a, tower) * ff.embed(b, tower) == ff.embed(a * b, tower)
    with pytest.raises(RepresentationError):
        ff.extract_base(tower.top.gen(), tower)


def test_field_spec_round_trip():
    for text in ["3", "7", "2^2:1,1,1", "3^2:2,2,1"]:
        field = ff.parse_field_spec(text)
        again = ff.parse_field_spec(ff.format_field_spec(field))
        assert again == field


def test_field_spec_prime_power_shorthand():
    field = ff.parse_field_spec("9")
    assert field.order == 9 and field.char == 3


def test_field_spec_rejects_garbage():
    for bad in ["4^1", "0", "abc", "3^2:1,1"]:
        with pytest.raises((ParseError, NotIrreducibleError)):
            ff.parse_field_spec(bad)


def test_reducible_modulus_rejected(f2):
    # x^2 + 1 = (x+1)^2 over F_2
    with pytest.raises(NotIrreducibleError):
        ff.make_field(2, 2, [1, 0, 1])


def test_element_format_round_trip(f9):
    tower = ff.make_tower(f9, 2)
    rng = random.Random("fmt")
    for _ in range(50):
        a = tower.top.random(rng)
        assert ff.parse_element(ff.format_element(a), tower.top) == a


def test_default_modulus_is_deterministic(f3):
    assert ff.default_modulus(f3, 4) == ff.default_modulus(f3, 4)


def test_top_field_has_q_to_the_n_elements():
    tower = ff.make_tower(ff.make_field(2, 2), 2)
    elems = list(tower.top.elements())
    assert len(elems) == 16 and len(set(elems)) == 16


def test_coords_over_prime_subfield(f9):
    tower = ff.make_tower(f9, 2)
    f3 = f9.base
    a = tower.top.gen()
    coords = ff.coords_over(a, f3)
    assert len(coords) == 4 and all(c.field == f3 for c in coords)
