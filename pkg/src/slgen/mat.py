"""Dense square matrices over a field or over the dual numbers F[T]/(T^2).

The characteristic polynomial uses the Berkowitz scheme, which needs no
divisions and therefore also works over the dual-number ring (which has
zero divisors).  Matrices are immutable values.
"""

from __future__ import annotations

from typing import Sequence

from . import ff
from .errors import FieldMismatchError, ParseError
from .poly import Polynomial


class DualNumber:
    """a + T*b with T^2 = 0, components in a common field."""

    __slots__ = ("ring", "a", "b")

    def __init__(self, ring: "DualRing", a: ff.FFElem, b: ff.FFElem):
        self.ring = ring
        self.a = a
        self.b = b

    def _check(self, other):
        if other.ring is not self.ring and other.ring != self.ring:
            raise FieldMismatchError("dual numbers over different rings")

    def __add__(self, other):
        self._check(other)
        return DualNumber(self.ring, self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        self._check(other)
        return DualNumber(self.ring, self.a - other.a, self.b - other.b)

    def __mul__(self, other):
        self._check(other)
        return DualNumber(
            self.ring, self.a * other.a, self.a * other.b + self.b * other.a
        )

    def __neg__(self):
        return DualNumber(self.ring, -self.a, -self.b)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, DualNumber):
            return NotImplemented
        return self.ring == other.ring and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    @property
    def real(self) -> ff.FFElem:
        return self.a

    @property
    def eps(self) -> ff.FFElem:
        return self.b

    def __repr__(self):
        return f"({self.a!r} + T*{self.b!r})"


class DualRing:
    """The coefficient ring F[T]/(T^2) over a field F."""

    def __init__(self, field: ff.Field):
        self.field = field
        self.char = field.char

    def zero(self) -> DualNumber:
        return DualNumber(self, self.field.zero(), self.field.zero())

    def one(self) -> DualNumber:
        return DualNumber(self, self.field.one(), self.field.zero())

    def from_int(self, k: int) -> DualNumber:
        return DualNumber(self, self.field.from_int(k), self.field.zero())

    def lift(self, a: ff.FFElem, b=None) -> DualNumber:
        """a + T*b as a dual number (b defaults to 0)."""
        return DualNumber(self, a, b if b is not None else self.field.zero())

    def __eq__(self, other):
        return isinstance(other, DualRing) and other.field == self.field

    def __hash__(self):
        return hash(("dual", self.field))

    def __repr__(self):
        return f"DualRing({self.field})"


def _ring_of(entry):
    return entry.ring if isinstance(entry, DualNumber) else entry.field


class Matrix:
    """Immutable n x n matrix over a field or a dual-number ring."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring, rows: Sequence[Sequence]):
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ParseError("matrix must be square")
            for e in row:
                if _ring_of(e) != ring:
                    raise FieldMismatchError("entry does not belong to the ring")
        self.ring = ring
        self.n = n
        self.rows = tuple(tuple(row) for row in rows)

    @staticmethod
    def zeros(ring, n: int) -> "Matrix":
        z = ring.zero()
        return Matrix(ring, [[z] * n for _ in range(n)])

    @staticmethod
    def identity(ring, n: int) -> "Matrix":
        z, o = ring.zero(), ring.one()
        return Matrix(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def from_ints(field, rows: Sequence[Sequence[int]]) -> "Matrix":
        return Matrix(field, [[field.from_int(k) for k in row] for row in rows])

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def _check(self, other: "Matrix"):
        if self.n != other.n or self.ring != other.ring:
            raise FieldMismatchError("matrix shape or ring mismatch")

    def __add__(self, other):
        self._check(other)
        return Matrix(
            self.ring,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        self._check(other)
        return Matrix(
            self.ring,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self):
        return Matrix(self.ring, [[-a for a in row] for row in self.rows])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        n = self.n
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = row[0] * col[0]
                for k in range(1, n):
                    acc = acc + row[k] * col[k]
                out_row.append(acc)
            out.append(out_row)
        return Matrix(self.ring, out)

    def scale(self, c) -> "Matrix":
        if _ring_of(c) != self.ring:
            raise FieldMismatchError("scalar not in the matrix ring")
        return Matrix(self.ring, [[c * a for a in row] for row in self.rows])

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, self.n):
            acc = acc + self.rows[i][i]
        return acc

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, list(zip(*self.rows)))

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def is_traceless(self) -> bool:
        return self.trace().is_zero()

    def is_scalar(self) -> bool:
        """True iff the matrix is c * I for some ring element c."""
        d = self.rows[0][0]
        for i in range(self.n):
            for j in range(self.n):
                e = self.rows[i][j]
                if i == j:
                    if e != d:
                        return False
                elif not e.is_zero():
                    return False
        return True

    def flatten(self) -> list:
        return [e for row in self.rows for e in row]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def inverse(self) -> "Matrix":
        """Gaussian elimination; field coefficients only."""
        if not isinstance(self.ring, ff.Field):
            raise FieldMismatchError("inverse requires field coefficients")
        n = self.n
        work = [list(row) + list(idrow) for row, idrow in
                zip(self.rows, Matrix.identity(self.ring, n).rows)]
        for col in range(n):
            pivot = next(
                (r for r in range(col, n) if not work[r][col].is_zero()), None
            )
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            work[col], work[pivot] = work[pivot], work[col]
            inv = work[col][col].inverse()
            work[col] = [e * inv for e in work[col]]
            for r in range(n):
                if r != col and not work[r][col].is_zero():
                    c = work[r][col]
                    work[r] = [a - c * b for a, b in zip(work[r], work[col])]
        return Matrix(self.ring, [row[n:] for row in work])

    def det(self):
        """(-1)^n times the constant term of det(tI - A)."""
        c0 = char_poly(self).coeff(0)
        if self.n % 2 == 1:
            return -c0
        return c0

    def __repr__(self):
        return f"Matrix({self.ring}, {format_matrix(self)!r})"


def bracket(a: Matrix, b: Matrix) -> Matrix:
    """Lie bracket ab - ba."""
    return a * b - b * a


def nested_bracket(*mats: Matrix) -> Matrix:
    """Left-nested bracket [m1, m2, ..., mk] = [[..[m1,m2],..], mk]."""
    acc = mats[0]
    for m in mats[1:]:
        acc = bracket(acc, m)
    return acc


def companion(f: Polynomial) -> Matrix:
    """Companion matrix: ones on the subdiagonal, -coefficients in the last column."""
    if not f.is_monic():
        raise ParseError("companion matrix needs a monic polynomial")
    n = f.degree
    if n < 1:
        raise ParseError("companion matrix needs degree >= 1")
    field = f.field
    z, o = field.zero(), field.one()
    rows = [[z] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i + 1][i] = o
    for i in range(n):
        rows[i][n - 1] = -f.coeff(i)
    return Matrix(field, rows)


def char_poly(a: Matrix) -> Polynomial:
    """det(tI - A) by the Berkowitz method (division-free)."""
    n = a.n
    ring = a.ring
    one = ring.one()
    zero = ring.zero()
    if n == 0:
        return Polynomial(ring, [one])
    # coefficients of the char poly of the leading k x k block, descending
    coeffs = [one, -a.rows[0][0]]
    for k in range(1, n):
        col = [a.rows[i][k] for i in range(k)]
        row = [a.rows[k][j] for j in range(k)]
        items = [one, -a.rows[k][k]]
        cur = col
        for j in range(k):
            dot = row[0] * cur[0]
            for i in range(1, k):
                dot = dot + row[i] * cur[i]
            items.append(-dot)
            if j < k - 1:
                cur = [
                    _dot(a.rows[i][:k], cur, zero) for i in range(k)
                ]
        new = []
        for i in range(k + 2):
            acc = zero
            for j in range(len(coeffs)):
                t = i - j
                if 0 <= t < len(items):
                    acc = acc + items[t] * coeffs[j]
            new.append(acc)
        coeffs = new
    return Polynomial(ring, list(reversed(coeffs)))


def _dot(row, vec, zero):
    acc = zero
    for x, y in zip(row, vec):
        acc = acc + x * y
    return acc


def forms_sl4(x: Matrix, y: Matrix) -> tuple:
    """Multilinearized quartic invariants of traceless 4x4 pairs in char 2.

    Computes the characteristic polynomial of T*x + y over the dual
    numbers.  With e3-coefficient a + T*b and e2-coefficient c + T*d,
    returns (a, b, c, d) as field elements.
    """
    if x.n != 4 or y.n != 4:
        raise ParseError("forms_sl4 needs 4x4 matrices")
    field = x.ring
    if not isinstance(field, ff.Field) or field.char != 2:
        raise FieldMismatchError("forms_sl4 needs a field of characteristic 2")
    if x.ring != y.ring:
        raise FieldMismatchError("matrix ring mismatch")
    if not (x.is_traceless() and y.is_traceless()):
        raise ParseError("forms_sl4 needs traceless matrices")
    dual = DualRing(field)
    m = Matrix(
        dual,
        [
            [dual.lift(y.rows[i][j], x.rows[i][j]) for j in range(4)]
            for i in range(4)
        ],
    )
    cp = char_poly(m)
    # t^4 + alpha t^2 - beta t + det: alpha = e2-coeff, beta = -(t-coeff)
    alpha = cp.coeff(2)
    beta = -cp.coeff(1)
    return beta.real, beta.eps, alpha.real, alpha.eps


def one_matrix(n: int, field) -> Matrix:
    """E - I: all-ones matrix minus the identity; traceless for every n."""
    z, o = field.zero(), field.one()
    return Matrix(field, [[z if i == j else o for j in range(n)] for i in range(n)])


def elementary(n: int, i: int, j: int, field) -> Matrix:
    """E_{ij} with a single one at 0-based position (i, j)."""
    if not (0 <= i < n and 0 <= j < n):
        raise ParseError("elementary index out of bounds")
    m = [[field.zero()] * n for _ in range(n)]
    m[i][j] = field.one()
    return Matrix(field, m)


def diag(values: Sequence[ff.FFElem]) -> Matrix:
    field = values[0].field
    n = len(values)
    z = field.zero()
    return Matrix(
        field, [[values[i] if i == j else z for j in range(n)] for i in range(n)]
    )


def poly_at_matrix(f: Polynomial, a: Matrix) -> Matrix:
    """Evaluate a polynomial at a matrix (coefficients act as scalars)."""
    if f.field != a.ring:
        raise FieldMismatchError("polynomial and matrix ring mismatch")
    acc = Matrix.zeros(a.ring, a.n)
    ident = Matrix.identity(a.ring, a.n)
    for c in reversed(f.coeffs):
        acc = acc * a + ident.scale(c)
    return acc


def nullspace(a: Matrix) -> list[list[ff.FFElem]]:
    """Echelon-canonical kernel basis of a matrix over a field."""
    field = a.ring
    n = a.n
    work = [list(row) for row in a.rows]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, n) if not work[i][col].is_zero()), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = work[r][col].inverse()
        work[r] = [e * inv for e in work[r]]
        for i in range(n):
            if i != r and not work[i][col].is_zero():
                c = work[i][col]
                work[i] = [x - c * y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [field.zero()] * n
        v[fcol] = field.one()
        for prow, pcol in enumerate(pivots):
            v[pcol] = -work[prow][fcol]
        basis.append(v)
    return basis


def format_matrix(m: Matrix) -> str:
    """Rows separated by ';', entries by ','; extension entries in parens."""
    return ";".join(
        ",".join(ff.format_element(e) for e in row) for row in m.rows
    )


def parse_matrix(text: str, field) -> Matrix:
    rows = []
    for row_text in text.strip().split(";"):
        rows.append([ff.parse_element(p, field) for p in ff._split_level(row_text)])
    return Matrix(field, rows)


def random_traceless(n: int, field, rng) -> Matrix:
    """Uniformly random traceless matrix: free entries plus a forced corner."""
    rows = [[field.random(rng) for _ in range(n)] for _ in range(n)]
    acc = field.zero()
    for i in range(n - 1):
        acc = acc + rows[i][i]
    rows[n - 1][n - 1] = -acc
    return Matrix(field, rows)
