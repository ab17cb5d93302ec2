import random

import pytest

from slgen import ff, mat, poly
from slgen.errors import ParseError


def M(field, rows):
    return mat.Matrix.from_ints(field, rows)


def test_bracket_basics(f3):
    a = mat.random_traceless(3, f3, random.Random("b0"))
    assert mat.bracket(a, a).is_zero()
    e12 = mat.elementary(2, 0, 1, f3)
    e21 = mat.elementary(2, 1, 0, f3)
    h = mat.bracket(e12, e21)
    assert h == M(f3, [[1, 0], [0, -1]])


def test_bracket_one_matrix_with_diagonal(f5):
    """[J, D] has (i, j) entry (lambda_j - lambda_i) for i != j, J = E - I."""
    vals = [f5.from_int(k) for k in (1, 2, 4)]
    d = mat.diag(vals)
    j = mat.one_matrix(3, f5)
    b = mat.bracket(j, d)
    for i in range(3):
        for jj in range(3):
            expected = f5.zero() if i == jj else vals[jj] - vals[i]
            assert b.entry(i, jj) == expected


def test_bracket_properties(f9):
    rng = random.Random("bracket-props")
    for _ in range(100):
        a = mat.random_traceless(3, f9, rng)
        b = mat.random_traceless(3, f9, rng)
        c = mat.random_traceless(3, f9, rng)
        assert mat.bracket(a, b).trace().is_zero()
        assert mat.bracket(a, b) == -mat.bracket(b, a)
        assert mat.bracket(a + b, c) == mat.bracket(a, c) + mat.bracket(b, c)
        jac = (
            mat.bracket(a, mat.bracket(b, c))
            + mat.bracket(b, mat.bracket(c, a))
            + mat.bracket(c, mat.bracket(a, b))
        )
        assert jac.is_zero()


def test_nested_bracket_is_left_nested(f5):
    rng = random.Random("nested")
    a = mat.random_traceless(2, f5, rng)
    b = mat.random_traceless(2, f5, rng)
    c = mat.random_traceless(2, f5, rng)
    assert mat.nested_bracket(a, b, c) == mat.bracket(mat.bracket(a, b), c)


def test_companion_layout(f3):
    f = poly.Polynomial.from_ints(f3, [1, 0, 1])  # x^2 + 1
    assert mat.companion(f) == M(f3, [[0, -1], [1, 0]])
    with pytest.raises(ParseError):
        mat.companion(poly.Polynomial.from_ints(f3, [1, 0, 2]))  # not monic


def test_char_poly_of_companion_is_the_polynomial(f3, f5, f9):
    rng = random.Random("cp-comp")
    for field in (f3, f5, f9):
        for _ in range(60):
            f = poly.random_polynomial(field, rng.randrange(1, 6), rng)
            assert mat.char_poly(mat.companion(f)) == f


def test_char_poly_of_zero_and_identity(f5):
    n = 4
    z = mat.Matrix.zeros(f5, n)
    assert mat.char_poly(z) == poly.Polynomial(
        f5, [f5.zero()] * n + [f5.one()]
    )
    ident = mat.Matrix.identity(f5, n)
    t_minus_1 = poly.Polynomial.from_ints(f5, [-1, 1])
    expected = poly.Polynomial.constant(f5, f5.one())
    for _ in range(n):
        expected = expected * t_minus_1
    assert mat.char_poly(ident) == expected


def test_char_poly_conjugation_invariant(f5):
    rng = random.Random("cp-conj")
    for _ in range(40):
        a = mat.random_traceless(3, f5, rng)
        p = mat.Matrix(f5, [[f5.random(rng) for _ in range(3)] for _ in range(3)])
        try:
            pinv = p.inverse()
        except Exception:
            continue
        assert mat.char_poly(p * a * pinv) == mat.char_poly(a)


def test_traceless_3x3_char3_quadratic_term_vanishes(f3):
    """In characteristic 3 the char poly of traceless 3x3 is t^3 + tr(x^2) t - det."""
    rng = random.Random("cp33")
    for _ in range(60):
        x = mat.random_traceless(3, f3, rng)
        cp = mat.char_poly(x)
        assert cp.coeff(2).is_zero()
        assert cp.coeff(1) == (x * x).trace()
        assert cp.coeff(0) == -x.det()


def test_cayley_hamilton(f3, f4, f9):
    rng = random.Random("cayley")
    for field in (f3, f4, f9):
        for n in (2, 3, 4):
            for _ in range(15):
                a = mat.Matrix(
                    field, [[field.random(rng) for _ in range(n)] for _ in range(n)]
                )
                assert mat.poly_at_matrix(mat.char_poly(a), a).is_zero()


def test_cayley_hamilton_over_dual_numbers(f2):
    """char_poly also works over F_q[T]/(T^2); substitute the matrix back in."""
    dual = mat.DualRing(f2)
    rng = random.Random("cayley-dual")
    for _ in range(25):
        rows = [
            [dual.lift(f2.random(rng), f2.random(rng)) for _ in range(3)]
            for _ in range(3)
        ]
        a = mat.Matrix(dual, rows)
        cp = mat.char_poly(a)
        acc = mat.Matrix.zeros(dual, 3)
        ident = mat.Matrix.identity(dual, 3)
        for c in reversed(cp.coeffs):
            acc = acc * a + ident.scale(c)
        assert acc.is_zero()


def test_forms_sl4_with_zero_first_argument(f2):
    """With x = 0 the dual part vanishes: forms are (beta(y), 0, alpha(y), 0)."""
    rng = random.Random("forms-zero")
    for _ in range(20):
        y = mat.random_traceless(4, f2, rng)
        a, b, c, d = mat.forms_sl4(mat.Matrix.zeros(f2, 4), y)
        cp = mat.char_poly(y)
        assert a == -cp.coeff(1) and c == cp.coeff(2)
        assert b.is_zero() and d.is_zero()


def test_forms_sl4_requires_char_2_and_traceless(f2, f3):
    x = mat.Matrix.zeros(f3, 4)
    with pytest.raises(Exception):
        mat.forms_sl4(x, x)
    bad = mat.elementary(4, 0, 0, f2)  # trace 1, not traceless
    with pytest.raises(ParseError):
        mat.forms_sl4(bad, bad)


def test_square_bracket_identity_char2(f2):
    """ad(z^2) = ad(z)^2 in characteristic 2 (z^2 central modulo this)."""
    rng = random.Random("sq-ad")
    for _ in range(40):
        z = mat.random_traceless(4, f2, rng)
        w = mat.random_traceless(4, f2, rng)
        lhs = mat.bracket(z * z, w)
        rhs = mat.bracket(z, mat.bracket(z, w))
        assert lhs == rhs


def test_one_matrix(f3):
    assert mat.one_matrix(2, f3) == M(f3, [[0, 1], [1, 0]])
    j = mat.one_matrix(5, f3)
    assert j.is_traceless()


def test_elementary_and_diag(f5):
    e = mat.elementary(3, 0, 2, f5)
    assert e.entry(0, 2) == f5.one()
    assert sum(1 for v in e.flatten() if not v.is_zero()) == 1
    d = mat.diag([f5.from_int(k) for k in (1, 2, 3)])
    assert d.trace() == f5.from_int(6)
    with pytest.raises(ParseError):
        mat.elementary(2, 2, 0, f5)


def _perm_det(a):
    """Determinant by permutation expansion, for cross-checking small matrices."""
    from itertools import permutations

    field = a.ring
    n = a.n
    total = field.zero()
    for perm in permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        term = field.one() if inversions % 2 == 0 else -field.one()
        for i in range(n):
            term = term * a.entry(i, perm[i])
        total = total + term
    return total


def test_det_against_permutation_expansion(f5, f9):
    rng = random.Random("det")
    for field in (f5, f9):
        for n in (2, 3, 4):
            for _ in range(10):
                a = mat.Matrix(
                    field, [[field.random(rng) for _ in range(n)] for _ in range(n)]
                )
                assert a.det() == _perm_det(a)


def test_inverse_and_nullspace(f5):
    rng = random.Random("inv")
    ident = mat.Matrix.identity(f5, 3)
    found = 0
    while found < 20:
        a = mat.Matrix(f5, [[f5.random(rng) for _ in range(3)] for _ in range(3)])
        if a.det().is_zero():
            assert len(mat.nullspace(a)) >= 1
            continue
        assert a * a.inverse() == ident
        assert mat.nullspace(a) == []
        found += 1


def test_nullspace_vectors_are_killed(f3):
    rng = random.Random("null")
    for _ in range(30):
        a = mat.Matrix(f3, [[f3.random(rng) for _ in range(4)] for _ in range(4)])
        for v in mat.nullspace(a):
            image = [mat._dot(row, v, f3.zero()) for row in a.rows]
            assert all(e.is_zero() for e in image)


def test_poly_at_matrix_matches_powers(f5):
    rng = random.Random("pam")
    a = mat.random_traceless(3, f5, rng)
    f = poly.Polynomial.from_ints(f5, [2, 0, 1, 3])  # 3x^3 + x^2 + 2
    expected = (
        (a * a * a).scale(f5.from_int(3))
        + a * a
        + mat.Matrix.identity(f5, 3).scale(f5.from_int(2))
    )
    assert mat.poly_at_matrix(f, a) == expected


def test_matrix_format_round_trip(f3, f9):
    rng = random.Random("mat-fmt")
    for field in (f3, f9):
        for _ in range(25):
            a = mat.Matrix(
                field, [[field.random(rng) for _ in range(3)] for _ in range(3)]
            )
            assert mat.parse_matrix(mat.format_matrix(a), field) == a


def test_is_scalar(f5):
    assert mat.Matrix.identity(f5, 3).scale(f5.from_int(4)).is_scalar()
    assert mat.Matrix.zeros(f5, 3).is_scalar()
    assert not mat.one_matrix(3, f5).is_scalar()


def test_random_traceless_is_traceless_and_deterministic(f9):
    a = mat.random_traceless(4, f9, random.Random("fixed"))
    b = mat.random_traceless(4, f9, random.Random("fixed"))
    assert a == b and a.is_traceless()
