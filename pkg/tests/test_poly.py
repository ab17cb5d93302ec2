import random

import pytest

from slgen import ff, poly
from slgen.errors import ParseError, RetryBudgetError


def P(field, *ints):
    return poly.Polynomial.from_ints(field, list(ints))


def test_divmod_round_trip(f3, f9):
    rng = random.Random("divmod")
    for field in (f3, f9):
        for _ in range(60):
            a = poly.random_polynomial(field, rng.randrange(0, 7), rng)
            b = poly.random_polynomial(field, rng.randrange(1, 5), rng)
            while b.is_zero():
                b = poly.random_polynomial(field, rng.randrange(1, 5), rng)
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.degree < b.degree


def test_gcd_divides_both(f5):
    rng = random.Random("gcd")
    for _ in range(50):
        a = poly.random_polynomial(f5, rng.randrange(1, 6), rng)
        b = poly.random_polynomial(f5, rng.randrange(1, 6), rng)
        if a.is_zero() or b.is_zero():
            continue
        g = poly.gcd(a, b)
        assert (a % g).is_zero() and (b % g).is_zero()


def test_is_irreducible_examples(f2, f3):
    assert poly.is_irreducible(P(f2, 1, 1, 1))  # x^2+x+1
    assert not poly.is_irreducible(P(f2, 1, 0, 1))  # (x+1)^2
    worked = P(f3, -1, -1, -1, 1, 0, -1, 0, 1)
    assert worked.degree == 7 and poly.is_irreducible(worked)


def _brute_irreducible(f):
    """Trial division by all monic polynomials of smaller degree."""
    field = f.field
    q = field.order
    for d in range(1, f.degree):
        for idx in range(q**d):
            coeffs = []
            i = idx
            for _ in range(d):
                coeffs.append(field.from_index(i % q))
                i //= q
            g = poly.Polynomial(field, coeffs + [field.one()])
            if (f % g).is_zero():
                return False
    return True


def test_is_irreducible_against_trial_division(f2, f3):
    rng = random.Random("irr-oracle")
    for field in (f2, f3):
        for _ in range(40):
            f = poly.random_polynomial(field, rng.randrange(1, 6), rng)
            if f.degree < 1:
                continue
            assert poly.is_irreducible(f) == _brute_irreducible(f)


def test_random_irreducible(f2, f3):
    f = poly.random_irreducible(f2, 2, 7)
    assert f == P(f2, 1, 1, 1)  # the only monic irreducible quadratic
    g1 = poly.random_irreducible(f3, 7, 42)
    g2 = poly.random_irreducible(f3, 7, 42)
    assert g1 == g2 and g1.is_monic() and poly.is_irreducible(g1)
    lin = poly.random_irreducible(f3, 1, 0)
    assert lin.degree == 1


def test_factor_examples(f2, f3):
    x_cubed_minus_1 = P(f3, -1, 0, 0, 1)
    assert poly.factor(x_cubed_minus_1) == [(P(f3, -1, 1), 3)]
    sq = poly.factor(P(f3, -1, 0, 1))  # x^2 - 1
    assert sq == [(P(f3, 1, 1), 1), (P(f3, -1, 1), 1)] or sq == [
        (P(f3, -1, 1), 1),
        (P(f3, 1, 1), 1),
    ]
    assert poly.factor(P(f2, 1, 1, 1, 1)) == [(P(f2, 1, 1), 3)]


def test_factor_phi_over_f4(f4):
    # x^2 + x + 1 splits into the two primitive cube roots of unity
    phi = poly.phi_polynomial(f4, 3)
    factors = poly.factor(phi)
    assert len(factors) == 2
    assert all(pi.degree == 1 and mult == 1 for pi, mult in factors)


def test_factor_round_trip(f2, f3, f4, f9):
    rng = random.Random("factor-rt")
    for field in (f2, f3, f4, f9):
        for _ in range(25):
            f = poly.random_polynomial(field, rng.randrange(1, 7), rng)
            if f.degree < 1:
                continue
            f = f.monic()
            prod = poly.Polynomial.constant(field, field.one())
            for pi, mult in poly.factor(f):
                assert pi.is_monic() and poly.is_irreducible(pi)
                for _ in range(mult):
                    prod = prod * pi
            assert prod == f


def test_phi_factorization_invariants(f2, f3, f5):
    for base, n in [(f3, 3), (f3, 6), (f2, 4), (f5, 5), (f5, 4)]:
        tower = ff.make_tower(base, n)
        pf = poly.phi_factorization(tower)
        assert pf.phi == poly.phi_polynomial(base, n)
        total = 0
        for pi, mult, cofactor in pf.factors:
            total += mult * pi.degree
            assert cofactor == pf.phi // pi
        assert total == n - 1


def test_phi_n2_single_linear_factor(f3):
    tower = ff.make_tower(f3, 2)
    pf = poly.phi_factorization(tower)
    assert pf.phi == P(f3, 1, 1)
    assert len(pf.factors) == 1


def test_phi_33_is_x_minus_1_squared(f3):
    tower = ff.make_tower(f3, 3)
    pf = poly.phi_factorization(tower)
    assert len(pf.factors) == 1
    pi, mult, _ = pf.factors[0]
    assert pi == P(f3, -1, 1) and mult == 2


def test_format_parse_round_trip(f3, f9):
    rng = random.Random("poly-fmt")
    for field in (f3, f9):
        for _ in range(40):
            f = poly.random_polynomial(field, rng.randrange(0, 6), rng)
            assert poly.parse_poly(poly.format_poly(f), field) == f


def test_parse_the_worked_polynomial_text(f3):
    f = poly.parse_poly("-1,-1,-1,1,0,-1,0,1", f3)
    assert f == P(f3, -1, -1, -1, 1, 0, -1, 0, 1)


def test_pow_mod(f5):
    rng = random.Random("powmod")
    for _ in range(30):
        f = poly.random_polynomial(f5, 3, rng)
        m = poly.random_polynomial(f5, 4, rng)
        if m.degree < 1:
            continue
        e = rng.randrange(1, 40)
        slow = poly.Polynomial.constant(f5, f5.one())
        for _ in range(e):
            slow = (slow * f) % m
        assert f.pow_mod(e, m) == slow


def test_zero_polynomial_guards(f3):
    zero = poly.Polynomial(f3, [])
    assert zero.degree == -1
    with pytest.raises((ParseError, ZeroDivisionError)):
        divmod(poly.Polynomial.x(f3), zero)


def test_retry_budget_is_finite(f2):
    with pytest.raises((RetryBudgetError, ParseError)):
        poly.random_irreducible(f2, 0, 1)
