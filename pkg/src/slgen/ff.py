"""Exact arithmetic in prime fields F_p and towers F_p < F_q < F_{q^n}.

Fields are immutable descriptors; elements are thin wrappers around raw
values (an int for a prime field, a tuple of base raws for an extension).
The tower keeps the top field as an extension of F_q, so coefficients
"over F_q" are coordinate-local and subfield membership is a tail check.

Elements carry their owning field and binary operations between elements
of different fields raise, never coerce.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import FieldMismatchError, ParseError, RepresentationError

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FFElem:
    """A field element tagged with its owning field."""

    __slots__ = ("field", "raw")

    def __init__(self, field: "Field", raw):
        self.field = field
        self.raw = raw

    def _check(self, other: "FFElem") -> None:
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatchError(
                f"elements of {self.field} and {other.field} cannot mix"
            )

    def __add__(self, other):
        if not isinstance(other, FFElem):
            return NotImplemented
        self._check(other)
        return FFElem(self.field, self.field.radd(self.raw, other.raw))

    def __sub__(self, other):
        if not isinstance(other, FFElem):
            return NotImplemented
        self._check(other)
        return FFElem(self.field, self.field.rsub(self.raw, other.raw))

    def __mul__(self, other):
        if not isinstance(other, FFElem):
            return NotImplemented
        self._check(other)
        return FFElem(self.field, self.field.rmul(self.raw, other.raw))

    def __truediv__(self, other):
        if not isinstance(other, FFElem):
            return NotImplemented
        self._check(other)
        return FFElem(
            self.field, self.field.rmul(self.raw, self.field.rinv(other.raw))
        )

    def __neg__(self):
        return FFElem(self.field, self.field.rneg(self.raw))

    def __pow__(self, e: int):
        return FFElem(self.field, self.field.rpow(self.raw, e))

    def inverse(self) -> "FFElem":
        return FFElem(self.field, self.field.rinv(self.raw))

    def __eq__(self, other):
        if not isinstance(other, FFElem):
            return NotImplemented
        return self.field == other.field and self.raw == other.raw

    def __hash__(self):
        return hash((self.field.order, self.raw))

    def __bool__(self):
        return not self.field.is_rzero(self.raw)

    def is_zero(self) -> bool:
        return self.field.is_rzero(self.raw)

    def coeffs(self) -> list["FFElem"]:
        """Coordinates over the immediate base field (length = degree)."""
        return self.field.rcoeffs(self.raw)

    def __repr__(self):
        return f"FFElem({self.field}, {format_element(self)})"


class Field:
    """Common interface for prime and extension fields."""

    char: int
    order: int
    degree: int

    def zero(self) -> FFElem:
        return FFElem(self, self.rzero)

    def one(self) -> FFElem:
        return FFElem(self, self.rone)

    def from_int(self, k: int) -> FFElem:
        """Image of the integer k under Z -> F_p -> field."""
        return FFElem(self, self.rfrom_int(k))

    def elem(self, raw) -> FFElem:
        return FFElem(self, raw)

    def from_index(self, i: int) -> FFElem:
        return FFElem(self, self.rfrom_index(i))

    def to_index(self, a: FFElem) -> int:
        return self.rto_index(a.raw)

    def elements(self) -> Iterator[FFElem]:
        """All field elements in index order (0 first, 1 second)."""
        for i in range(self.order):
            yield self.from_index(i)

    def random(self, rng) -> FFElem:
        return self.from_index(rng.randrange(self.order))

    def random_nonzero(self, rng) -> FFElem:
        return self.from_index(rng.randrange(1, self.order))


class PrimeField(Field):
    """F_p with elements represented as ints in [0, p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ParseError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p
        self.degree = 1
        self.rzero = 0
        self.rone = 1 % p

    def radd(self, a, b):
        return (a + b) % self.p

    def rsub(self, a, b):
        return (a - b) % self.p

    def rmul(self, a, b):
        return a * b % self.p

    def rneg(self, a):
        return -a % self.p

    def rinv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def rpow(self, a, e: int):
        if e < 0:
            return pow(self.rinv(a), -e, self.p)
        return pow(a, e, self.p)

    def is_rzero(self, a) -> bool:
        return a == 0

    def rfrom_int(self, k: int):
        return k % self.p

    def rfrom_index(self, i: int):
        return i

    def rto_index(self, a) -> int:
        return a

    def rcoeffs(self, a):
        return [FFElem(self, a)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"F_{self.p}"


class ExtField(Field):
    """F_b[x]/(modulus) over a base field; raws are tuples of base raws."""

    def __init__(self, base: Field, modulus: Sequence[FFElem]):
        deg = len(modulus) - 1
        if deg < 1:
            raise ParseError("extension modulus must have degree >= 1")
        for c in modulus:
            if c.field != base:
                raise FieldMismatchError("modulus coefficients not in base field")
        if modulus[-1] != base.one():
            raise ParseError("extension modulus must be monic")
        self.base = base
        self.modulus = tuple(c.raw for c in modulus)
        self.degree = deg
        self.char = base.char
        self.order = base.order**deg
        self.rzero = (base.rzero,) * deg
        self.rone = (base.rone,) + (base.rzero,) * (deg - 1)
        # negated non-leading modulus coefficients, used during reduction
        self._red = tuple(base.rneg(c) for c in self.modulus[:deg])

    def radd(self, a, b):
        base = self.base
        return tuple(base.radd(x, y) for x, y in zip(a, b))

    def rsub(self, a, b):
        base = self.base
        return tuple(base.rsub(x, y) for x, y in zip(a, b))

    def rneg(self, a):
        base = self.base
        return tuple(base.rneg(x) for x in a)

    def rmul(self, a, b):
        base = self.base
        d = self.degree
        prod = [base.rzero] * (2 * d - 1)
        for i, x in enumerate(a):
            if base.is_rzero(x):
                continue
            for j, y in enumerate(b):
                if not base.is_rzero(y):
                    prod[i + j] = base.radd(prod[i + j], base.rmul(x, y))
        red = self._red
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if base.is_rzero(c):
                continue
            lo = i - d
            for j in range(d):
                prod[lo + j] = base.radd(prod[lo + j], base.rmul(c, red[j]))
        return tuple(prod[:d])

    def rpow(self, a, e: int):
        if e < 0:
            a, e = self.rinv(a), -e
        result = self.rone
        while e:
            if e & 1:
                result = self.rmul(result, a)
            a = self.rmul(a, a)
            e >>= 1
        return result

    def rinv(self, a):
        if self.is_rzero(a):
            raise ZeroDivisionError("inverse of zero")
        return self.rpow(a, self.order - 2)

    def is_rzero(self, a) -> bool:
        base = self.base
        return all(base.is_rzero(x) for x in a)

    def rfrom_int(self, k: int):
        return (self.base.rfrom_int(k),) + (self.base.rzero,) * (self.degree - 1)

    def rfrom_index(self, i: int):
        q = self.base.order
        out = []
        for _ in range(self.degree):
            out.append(self.base.rfrom_index(i % q))
            i //= q
        return tuple(out)

    def rto_index(self, a) -> int:
        q = self.base.order
        i = 0
        for x in reversed(a):
            i = i * q + self.base.rto_index(x)
        return i

    def rcoeffs(self, a):
        return [FFElem(self.base, x) for x in a]

    def gen(self) -> FFElem:
        """The residue class of x, the defining generator."""
        raw = [self.base.rzero] * self.degree
        if self.degree == 1:
            # x reduces to -modulus[0]
            return FFElem(self, (self.base.rneg(self.modulus[0]),))
        raw[1] = self.base.rone
        return FFElem(self, tuple(raw))

    def from_coeffs(self, coeffs: Sequence[FFElem]) -> FFElem:
        if len(coeffs) != self.degree:
            raise ParseError("coefficient list has wrong length")
        for c in coeffs:
            if c.field != self.base:
                raise FieldMismatchError("coefficient not in base field")
        return FFElem(self, tuple(c.raw for c in coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("Ext", self.base, self.modulus))

    def __repr__(self):
        return f"F_{self.order}(deg {self.degree} over {self.base})"


def format_element(a: FFElem) -> str:
    """Text form: int for prime-field values, (c0,c1,...) for extensions."""
    f = a.field
    if isinstance(f, PrimeField):
        return str(a.raw)
    return "(" + ",".join(format_element(c) for c in a.coeffs()) + ")"


def _split_level(text: str) -> list[str]:
    """Split on commas at paren depth zero."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
            cur.append(ch)
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
            cur.append(ch)
        elif ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur).strip())
    return parts


def parse_element(text: str, field: Field) -> FFElem:
    """Inverse of format_element, with U+2212 accepted as a minus sign."""
    text = text.strip().replace("−", "-")
    if text.startswith("(") and text.endswith(")"):
        if not isinstance(field, ExtField):
            raise ParseError(f"tuple element {text!r} for prime field {field}")
        parts = _split_level(text[1:-1])
        if len(parts) != field.degree:
            raise ParseError(
                f"expected {field.degree} coordinates in {text!r}, got {len(parts)}"
            )
        return field.from_coeffs([parse_element(p, field.base) for p in parts])
    try:
        k = int(text)
    except ValueError as exc:
        raise ParseError(f"bad field element {text!r}") from exc
    return field.from_int(k)


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def default_modulus(base: Field, degree: int):
    """Lowest-index monic irreducible of the given degree over base.

    Candidates are scanned in ascending index order of their non-leading
    coefficient vector, so the choice is reproducible without any table.
    """
    from . import poly  # deferred: poly imports this module

    q = base.order
    for idx in range(q**degree):
        coeffs = []
        i = idx
        for _ in range(degree):
            coeffs.append(base.from_index(i % q))
            i //= q
        f = poly.Polynomial(base, coeffs + [base.one()])
        if poly.is_irreducible(f):
            return f
    raise RepresentationError(f"no irreducible of degree {degree} over {base}")


def make_field(p: int, m: int = 1, modulus=None) -> Field:
    """Build F_{p^m}; the modulus defaults to the lowest-index irreducible."""
    from .errors import NotIrreducibleError

    prime = PrimeField(p)
    if m == 1:
        if modulus is not None:
            raise ParseError("prime fields take no modulus")
        return prime
    from . import poly

    if modulus is None:
        modulus = default_modulus(prime, m)
    elif isinstance(modulus, (list, tuple)):
        modulus = poly.Polynomial(prime, [prime.from_int(c) for c in modulus])
    if modulus.field != prime or modulus.degree != m:
        raise ParseError("modulus must have the stated degree over F_p")
    if not poly.is_irreducible(modulus):
        raise NotIrreducibleError(f"modulus {modulus} is reducible")
    return ExtField(prime, list(modulus.coeffs))


def parse_field_spec(text: str) -> Field:
    """Parse "p", "p^m", "q" (prime power) or "p^m:c0,c1,...,cm"."""
    text = text.strip()
    mod_text = None
    if ":" in text:
        text, mod_text = text.split(":", 1)
    if "^" in text:
        p_str, m_str = text.split("^", 1)
        try:
            p, m = int(p_str), int(m_str)
        except ValueError as exc:
            raise ParseError(f"bad field spec {text!r}") from exc
    else:
        try:
            q = int(text)
        except ValueError as exc:
            raise ParseError(f"bad field spec {text!r}") from exc
        if q < 2:
            raise ParseError(f"bad field order {q}")
        fact = _factorize(q)
        if len(fact) != 1:
            raise ParseError(f"{q} is not a prime power")
        (p, m), = fact.items()
    if not is_prime(p):
        raise ParseError(f"{p} is not prime")
    modulus = None
    if mod_text is not None:
        from . import poly

        prime = PrimeField(p)
        coeffs = [prime.from_int(int(c)) for c in mod_text.replace("−", "-").split(",")]
        modulus = poly.Polynomial(prime, coeffs)
    return make_field(p, m, modulus)


def format_field_spec(field: Field) -> str:
    if isinstance(field, PrimeField):
        return str(field.p)
    assert isinstance(field, ExtField) and isinstance(field.base, PrimeField)
    coeffs = ",".join(str(c) for c in field.modulus)
    return f"{field.char}^{field.degree}:{coeffs}"


class Tower:
    """The chain F_q < F_{q^n} with the top field as F_q[z]/(top_modulus)."""

    def __init__(self, base: Field, n: int, top_modulus):
        from . import poly

        from .errors import NotIrreducibleError

        if top_modulus.field != base or top_modulus.degree != n:
            raise ParseError("top modulus must have degree n over the base field")
        if not poly.is_irreducible(top_modulus):
            raise NotIrreducibleError(f"top modulus {top_modulus} is reducible")
        self.base = base
        self.n = n
        self.top_modulus = top_modulus
        self.top = ExtField(base, list(top_modulus.coeffs))
        self._frob_mat = None

    @property
    def q(self) -> int:
        return self.base.order

    def contains_top(self, a: FFElem) -> bool:
        return a.field == self.top

    def __eq__(self, other):
        return (
            isinstance(other, Tower)
            and other.base == self.base
            and other.top == self.top
        )

    def __repr__(self):
        return f"Tower(F_{self.q}^{self.n})"


def make_tower(base: Field, n: int, top_modulus=None) -> Tower:
    if top_modulus is None:
        top_modulus = default_modulus(base, n)
    return Tower(base, n, top_modulus)


def _check_top(a: FFElem, tower: Tower) -> None:
    if a.field != tower.top:
        raise FieldMismatchError(f"element of {a.field} does not live in {tower}")


def frobenius(a: FFElem, tower: Tower) -> FFElem:
    """The q-power map on the top field."""
    _check_top(a, tower)
    return a ** tower.q


def conjugates(a: FFElem, tower: Tower) -> list[FFElem]:
    """[a, Fr(a), ..., Fr^{n-1}(a)]."""
    _check_top(a, tower)
    out = [a]
    for _ in range(tower.n - 1):
        out.append(out[-1] ** tower.q)
    return out


def rel_trace(a: FFElem, tower: Tower) -> FFElem:
    """Relative trace to the base field: the sum of the Galois conjugates."""
    conj = conjugates(a, tower)
    total = conj[0]
    for c in conj[1:]:
        total = total + c
    coords = total.coeffs()
    for c in coords[1:]:
        if not c.is_zero():
            raise RepresentationError("trace landed outside the base field")
    return coords[0]


def embed(a: FFElem, tower: Tower) -> FFElem:
    """Ring-homomorphic embedding of a base-field element into the top field."""
    if a.field != tower.base:
        raise FieldMismatchError("embed expects a base-field element")
    top = tower.top
    raw = (a.raw,) + (tower.base.rzero,) * (tower.n - 1)
    return FFElem(top, raw)


def extract_base(a: FFElem, tower: Tower) -> FFElem:
    """Left inverse of embed; raises if a is not in the base field."""
    _check_top(a, tower)
    coords = a.coeffs()
    for c in coords[1:]:
        if not c.is_zero():
            raise RepresentationError("element does not lie in the base field")
    return coords[0]


def poly_in_frobenius(g, a: FFElem, tower: Tower) -> FFElem:
    """Evaluate sum g_i * Fr^i(a) for a polynomial g over the base field."""
    _check_top(a, tower)
    if g.field != tower.base:
        raise FieldMismatchError("polynomial coefficients must lie in the base field")
    coeffs = list(g.coeffs)
    if not coeffs:
        return tower.top.zero()
    total = tower.top.zero()
    power = a
    for i, c in enumerate(coeffs):
        if i > 0:
            power = power ** tower.q
        if not c.is_zero():
            total = total + embed(c, tower) * power
    return total


def frobenius_matrix(tower: Tower):
    """The n x n matrix of Fr over F_q in the power basis 1, z, ..., z^{n-1}."""
    from . import mat

    if tower._frob_mat is not None:
        return tower._frob_mat
    n = tower.n
    z_q = tower.top.gen() ** tower.q
    cols = []
    power = tower.top.one()
    for j in range(n):
        if j > 0:
            power = power * z_q
        cols.append(power.coeffs())
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    tower._frob_mat = mat.Matrix(tower.base, rows)
    return tower._frob_mat


def coords_over(a: FFElem, subfield: Field) -> list[FFElem]:
    """Coordinates of a over the given subfield in the tower's nested basis."""
    if a.field == subfield:
        return [a]
    if not isinstance(a.field, ExtField):
        raise FieldMismatchError(f"{subfield} is not a subfield of {a.field}")
    out: list[FFElem] = []
    for c in a.coeffs():
        out.extend(coords_over(c, subfield))
    return out
