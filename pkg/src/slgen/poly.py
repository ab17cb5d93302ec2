"""Univariate polynomial arithmetic over a finite field.

Provides gcd, modular exponentiation, Rabin irreducibility testing,
seeded random irreducible generation, and full factorization via
square-free + distinct-degree + equal-degree splitting.  The equal-degree
splitter uses exponentiation for odd fields and the additive trace map in
characteristic 2.

Coefficients are stored ascending; trailing zeros are stripped on
construction so a zero leading coefficient can never reach division.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import ff
from .errors import FieldMismatchError, ParseError, RetryBudgetError


class Polynomial:
    """Dense univariate polynomial; the zero polynomial has degree -1."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Sequence):
        last = len(coeffs)
        while last > 0 and coeffs[last - 1].is_zero():
            last -= 1
        self.field = field
        self.coeffs = tuple(coeffs[:last])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one()

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def _check(self, other: "Polynomial") -> None:
        if other.field != self.field:
            raise FieldMismatchError("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(self.field, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(self.field, [])
        zero = self.field.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.field, [a * c for a in self.coeffs])

    def shift(self, k: int) -> "Polynomial":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Polynomial(self.field, [self.field.zero()] * k + list(self.coeffs))

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = other.lead.inverse()
        rem = list(self.coeffs)
        db = other.degree
        quo = [self.field.zero()] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c.is_zero():
                continue
            factor = c * lead_inv
            quo[i - db] = factor
            for j, b in enumerate(other.coeffs):
                rem[i - db + j] = rem[i - db + j] - factor * b
        return Polynomial(self.field, quo), Polynomial(self.field, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.lead.inverse())

    def derivative(self) -> "Polynomial":
        out = []
        for i in range(1, len(self.coeffs)):
            k = self.field.from_int(i)
            out.append(self.coeffs[i] * k)
        return Polynomial(self.field, out)

    def evaluate(self, x):
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def pow_mod(self, e: int, mod: "Polynomial") -> "Polynomial":
        result = Polynomial.constant(self.field, self.field.one())
        base = self % mod
        while e:
            if e & 1:
                result = result * base % mod
            base = base * base % mod
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        return f"Polynomial({self.field}, [{format_poly(self)}])"

    @staticmethod
    def constant(field, c) -> "Polynomial":
        return Polynomial(field, [c])

    @staticmethod
    def x(field) -> "Polynomial":
        return Polynomial(field, [field.zero(), field.one()])

    @staticmethod
    def from_ints(field, ints: Sequence[int]) -> "Polynomial":
        return Polynomial(field, [field.from_int(k) for k in ints])


def format_poly(f: Polynomial) -> str:
    """Comma-separated ascending coefficients."""
    return ",".join(ff.format_element(c) for c in f.coeffs)


def parse_poly(text: str, field) -> Polynomial:
    parts = ff._split_level(text)
    if parts == [""]:
        return Polynomial(field, [])
    return Polynomial(field, [ff.parse_element(p, field) for p in parts])


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's test: x^{q^n} = x mod f and gcd(x^{q^{n/r}} - x, f) = 1."""
    if f.is_zero():
        raise ZeroDivisionError("the zero polynomial is neither")
    n = f.degree
    if n == 0:
        return False
    if n == 1:
        return True
    if f.coeff(0).is_zero():
        return False
    q = f.field.order
    x = Polynomial.x(f.field)
    for r in _prime_divisors(n):
        h = x.pow_mod(q ** (n // r), f) - x
        if gcd(h, f).degree != 0:
            return False
    return x.pow_mod(q**n, f) == x % f


def random_polynomial(field, degree: int, rng) -> Polynomial:
    coeffs = [field.random(rng) for _ in range(degree)]
    coeffs.append(field.one())
    return Polynomial(field, coeffs)


def random_irreducible(
    field, degree: int, rng_seed: int, max_tries: int = 0
) -> Polynomial:
    """Monic irreducible of the given degree, deterministic per seed."""
    if degree < 1:
        raise ParseError("degree must be at least 1")
    rng = random.Random(f"slgen-irr:{rng_seed}")
    budget = max_tries or 200 * degree
    for _ in range(budget):
        f = random_polynomial(field, degree, rng)
        if is_irreducible(f):
            return f
    raise RetryBudgetError(
        f"no irreducible of degree {degree} found in {budget} tries"
    )


def _pth_root_poly(f: Polynomial) -> Polynomial:
    """Inverse of g -> g(x^p) for polynomials with zero derivative."""
    field = f.field
    p = field.char
    e = field.order // p  # c^(q/p) is the p-th root of c in F_q
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(f.coeffs[i] ** e)
    return Polynomial(field, out)


def squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Return [(g, m)] with f = lead * prod g^m, g squarefree pairwise coprime."""
    field = f.field
    p = field.char
    one = Polynomial.constant(field, field.one())
    factors: list[tuple[Polynomial, int]] = []
    f = f.monic()
    scale = 1
    while f.degree > 0:
        d = f.derivative()
        if d.is_zero():
            f = _pth_root_poly(f)
            scale *= p
            continue
        g = gcd(f, d)
        w = f // g
        i = 1
        while w.degree > 0:
            y = gcd(w, g)
            z = w // y
            if z.degree > 0:
                factors.append((z, i * scale))
            w = y
            g = g // y
            i += 1
        f = g
    return factors


def _split_equal_degree(f: Polynomial, d: int, rng) -> list[Polynomial]:
    """Cantor-Zassenhaus split of a squarefree product of degree-d irreducibles."""
    field = f.field
    if f.degree == d:
        return [f.monic()]
    q = field.order
    while True:
        # Draw r uniformly over all polynomials of degree < deg f.  A monic-only
        # sampler can miss the coset where the splitting functional is nonzero.
        r = Polynomial(field, [field.random(rng) for _ in range(f.degree)])
        if r.degree < 1:
            continue
        if field.char == 2:
            # additive trace map of the degree-d factor fields
            m = q.bit_length() - 1  # q = 2^m
            s = r % f
            acc = s
            for _ in range(m * d - 1):
                s = s * s % f
                acc = acc + s
            g = gcd(acc, f)
        else:
            s = r.pow_mod((q**d - 1) // 2, f)
            g = gcd(s - Polynomial.constant(field, field.one()), f)
        if 0 < g.degree < f.degree:
            return _split_equal_degree(g, d, rng) + _split_equal_degree(
                f // g, d, rng
            )


def _factor_squarefree(f: Polynomial, rng) -> list[Polynomial]:
    """Distinct-degree then equal-degree factorization of a squarefree monic f."""
    field = f.field
    q = field.order
    x = Polynomial.x(field)
    out: list[Polynomial] = []
    h = x
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append(f)
            break
        h = h.pow_mod(q, f)
        g = gcd(h - x, f)
        if g.degree > 0:
            out.extend(_split_equal_degree(g, d, rng))
            f = f // g
            h = h % f
    return out


def factor(f: Polynomial, seed: int = 0) -> list[tuple[Polynomial, int]]:
    """Full factorization into monic irreducibles with multiplicities.

    The randomized splitter is seeded from (seed, f), so repeated calls are
    reproducible.  Factors are returned sorted by (degree, coefficient index).
    """
    if f.is_zero():
        raise ZeroDivisionError("cannot factor the zero polynomial")
    rng = random.Random(f"slgen-factor:{seed}:{format_poly(f.monic())}")
    result: list[tuple[Polynomial, int]] = []
    for g, mult in squarefree_decomposition(f):
        for irr in _factor_squarefree(g, rng):
            result.append((irr.monic(), mult))
    result.sort(key=lambda fm: (fm[0].degree, [fm[0].field.to_index(c) for c in fm[0].coeffs]))
    return result


@dataclass(frozen=True)
class PhiFactorization:
    """Phi = (x^n - 1)/(x - 1) with its prime factors and cofactors."""

    n: int
    phi: Polynomial
    factors: tuple[tuple[Polynomial, int, Polynomial], ...]  # (pi, mult, Phi/pi)


def phi_polynomial(field, n: int) -> Polynomial:
    """x^{n-1} + ... + x + 1 over the given field."""
    return Polynomial(field, [field.one()] * n)


def phi_factorization(tower: ff.Tower) -> PhiFactorization:
    field = tower.base
    phi = phi_polynomial(field, tower.n)
    triples = []
    for pi, mult in factor(phi):
        cofactor = phi // pi
        triples.append((pi, mult, cofactor))
    return PhiFactorization(n=tower.n, phi=phi, factors=tuple(triples))
