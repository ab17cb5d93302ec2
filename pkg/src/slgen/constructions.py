"""Generating-pair constructions: consistent sets, sharply traceless sets
and elements, Sidon-based integer sets, and the companion-matrix pipelines
through normal elements and through the Frobenius-kernel decomposition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from . import ff, lie, mat, poly
from .errors import (
    ConsistencyLostError,
    EvenCharacteristicError,
    ExceptionalCaseError,
    MathPreconditionError,
    NotIrreducibleError,
    ParseError,
    RepresentationError,
    RetryBudgetError,
    RootsNotConsistentError,
)

# ---------------------------------------------------------------------
# consistent and sharply traceless sets


@dataclass(frozen=True)
class DiagonalSet:
    """Candidate diagonal of a generating matrix, with its check flags."""

    values: tuple[ff.FFElem, ...]
    sum_zero: bool
    all_nonzero: bool
    consistent: bool


def check_consistent(values: Sequence[ff.FFElem]) -> DiagonalSet:
    """Flag a set whose ordered pairwise differences are all distinct.

    The four-index condition on differences is equivalent to all n(n-1)
    ordered differences being pairwise distinct; a property test pins the
    equivalence against the literal four-index form.
    """
    values = tuple(values)
    total = values[0].field.zero()
    for v in values:
        total = total + v
    diffs = set()
    consistent = True
    for i, a in enumerate(values):
        for j, b in enumerate(values):
            if i == j:
                continue
            d = a - b
            if d in diffs:
                consistent = False
            diffs.add(d)
    return DiagonalSet(
        values=values,
        sum_zero=total.is_zero(),
        all_nonzero=all(not v.is_zero() for v in values),
        consistent=consistent,
    )


@dataclass(frozen=True)
class STSet:
    """A set tested for sharp tracelessness over a subfield."""

    values: tuple[ff.FFElem, ...]
    rank: int
    sum_zero: bool
    sharply_traceless: bool


def check_sharply_traceless_set(
    values: Sequence[ff.FFElem], subfield: ff.Field
) -> STSet:
    """Sum zero and subfield-span of dimension n-1: the sum is the only relation."""
    values = tuple(values)
    total = values[0].field.zero()
    for v in values:
        total = total + v
    coords = [ff.coords_over(v, subfield) for v in values]
    sub = lie.Subspace(subfield, len(coords[0]))
    for vec in coords:
        sub.insert(vec)
    rank = sub.dim
    sum_zero = total.is_zero()
    return STSet(
        values=values,
        rank=rank,
        sum_zero=sum_zero,
        sharply_traceless=sum_zero and rank == len(values) - 1,
    )


# ---------------------------------------------------------------------
# Sidon sets


@dataclass(frozen=True)
class SidonSet:
    """0 = a_0 < a_1 < ... < a_n with pairwise sums (i < j) all distinct."""

    elems: tuple[int, ...]

    def is_valid(self) -> bool:
        """Distinct sums a_i + a_j over i < j, starting at 0, increasing."""
        e = self.elems
        if not e or e[0] != 0 or any(x >= y for x, y in zip(e, e[1:])):
            return False
        sums = [e[i] + e[j] for i in range(len(e)) for j in range(i + 1, len(e))]
        return len(sums) == len(set(sums))

    def has_distinct_differences(self) -> bool:
        """All pairwise differences distinct (equivalently, sums with
        i <= j distinct).  Strictly stronger than is_valid: it also rules
        out three-term arithmetic progressions, which is what makes the
        derived zero-sum set consistent."""
        e = self.elems
        diffs = [b - a for i, a in enumerate(e) for b in e[i + 1 :]]
        return len(diffs) == len(set(diffs))


def sidon_greedy(n: int) -> SidonSet:
    """Greedy distinct-difference set: accept the smallest integer whose
    differences to the current elements are all new.  Returns n+1
    elements starting at 0.

    The plain distinct-sum greedy (i < j only) is not enough here: it
    admits three-term progressions in the tail, e.g. {0,1,2,4,7} whose
    derived set has the repeated difference 4 - 1 = 7 - 4.
    """
    if n < 1:
        raise ParseError("n must be >= 1")
    elems = [0]
    diffs: set[int] = set()
    cand = 1
    while len(elems) < n + 1:
        new = [cand - a for a in elems]
        if not diffs.intersection(new):
            diffs.update(new)
            elems.append(cand)
        cand += 1
    return SidonSet(tuple(elems))


def _next_prime(k: int) -> int:
    while not ff.is_prime(k):
        k += 1
    return k


def sidon_erdos_turan(n: int) -> SidonSet:
    """Quadratic construction 2p'i + (i^2 mod p'): n+1 elements below 2p'^2."""
    if n < 1:
        raise ParseError("n must be >= 1")
    p = _next_prime(n + 1)
    elems = tuple(2 * p * i + (i * i) % p for i in range(n + 1))
    return SidonSet(elems)


def consistent_integer_set(s: SidonSet) -> list[int]:
    """The integer set {a_1, ..., a_n, -sum a_i} built from a distinct sum set."""
    tail = list(s.elems[1:])
    return tail + [-sum(tail)]


def consistent_from_sidon(s: SidonSet, p: int) -> DiagonalSet:
    """Reduce the associated integer set mod p and re-check consistency.

    Succeeds whenever p exceeds four times the largest absolute value,
    and possibly for smaller p; the check is authoritative either way.
    """
    if p == 2:
        raise EvenCharacteristicError("no consistent sets in characteristic 2")
    field = ff.PrimeField(p)
    ints = consistent_integer_set(s)
    ds = check_consistent([field.from_int(k) for k in ints])
    if not ds.consistent:
        raise ConsistencyLostError(
            f"set {ints} is not consistent after reduction mod {p}"
        )
    return ds


def random_consistent_set(
    n: int, field: ff.Field, seed: int = 0, max_tries: int = 2000
) -> DiagonalSet:
    """Seeded rejection sampling for a zero-sum consistent set of size n."""
    if field.char == 2:
        raise EvenCharacteristicError("no consistent sets in characteristic 2")
    rng = random.Random(f"slgen-consistent:{seed}")
    for _ in range(max_tries):
        head = [field.random(rng) for _ in range(n - 1)]
        last = field.zero()
        for v in head:
            last = last - v
        ds = check_consistent(head + [last])
        if ds.consistent:
            return ds
    raise RetryBudgetError(
        f"no consistent set of size {n} found in {max_tries} samples"
    )


# ---------------------------------------------------------------------
# generating pairs from a consistent diagonal


def genpair_from_consistent(
    d: DiagonalSet, strategy: str = "consistent", seed: Optional[int] = None
) -> lie.GenPairCertificate:
    """The pair (diag(D), E - I) with a closure certificate."""
    if not d.consistent:
        raise MathPreconditionError("diagonal set is not consistent")
    if not d.sum_zero:
        raise MathPreconditionError("diagonal set must sum to zero")
    field = d.values[0].field
    n = len(d.values)
    gens = [mat.diag(list(d.values)), mat.one_matrix(n, field)]
    cert = lie.is_generating(gens, "sl", strategy=strategy, seed=seed)
    if not cert.verdict:
        raise RepresentationError(
            "consistent pair failed to generate; this is a defect"
        )
    return cert


# ---------------------------------------------------------------------
# normal elements


@dataclass(frozen=True)
class NormalElementReport:
    alpha: ff.FFElem
    is_normal: bool
    beta: Optional[ff.FFElem] = None  # alpha - tr(alpha)/n, when p does not divide n
    min_poly_beta: Optional[poly.Polynomial] = None


def is_normal_element(a: ff.FFElem, tower: ff.Tower) -> bool:
    """True iff the Galois conjugates of a are linearly independent over F_q."""
    conj = ff.conjugates(a, tower)
    sub = lie.Subspace(tower.base, tower.n)
    for c in conj:
        sub.insert(c.coeffs())
    return sub.dim == tower.n


def min_poly_over_base(a: ff.FFElem, tower: ff.Tower) -> poly.Polynomial:
    """Product of (x - Fr^i(a)); the minimal polynomial when a has degree n.

    Every coefficient is extracted to the base field and extraction fails
    loudly if a coefficient falls outside it.
    """
    top = tower.top
    prod = poly.Polynomial.constant(top, top.one())
    for c in ff.conjugates(a, tower):
        linear = poly.Polynomial(top, [-c, top.one()])
        prod = prod * linear
    return poly.Polynomial(
        tower.base, [ff.extract_base(c, tower) for c in prod.coeffs]
    )


def find_normal_element(
    tower: ff.Tower, seed: int, max_tries: int = 1000
) -> NormalElementReport:
    """Random sampling with an exact independence test on the conjugates."""
    rng = random.Random(f"slgen-normal:{seed}")
    for _ in range(max_tries):
        alpha = tower.top.random(rng)
        if not is_normal_element(alpha, tower):
            continue
        n, p = tower.n, tower.base.char
        if n % p == 0:
            return NormalElementReport(alpha=alpha, is_normal=True)
        n_inv = tower.base.from_int(n).inverse()
        beta = alpha - ff.embed(ff.rel_trace(alpha, tower) * n_inv, tower)
        return NormalElementReport(
            alpha=alpha,
            is_normal=True,
            beta=beta,
            min_poly_beta=min_poly_over_base(beta, tower),
        )
    raise RetryBudgetError(f"no normal element found in {max_tries} samples")


# ---------------------------------------------------------------------
# sharply traceless elements


def is_sharply_traceless_element(
    a: ff.FFElem, tower: ff.Tower, phi: poly.PhiFactorization
) -> bool:
    """Phi(Fr) a = 0 and Phi_pi(Fr) a != 0 for every prime factor pi."""
    if not ff.poly_in_frobenius(phi.phi, a, tower).is_zero():
        return False
    for _, _, cofactor in phi.factors:
        if ff.poly_in_frobenius(cofactor, a, tower).is_zero():
            return False
    return True


def count_st_elements(tower: ff.Tower) -> int:
    """Closed-form count of sharply traceless elements in F_{q^n}."""
    phi = poly.phi_factorization(tower)
    q = tower.q
    deg_sum = 0
    prod = 1
    for pi, _, _ in phi.factors:
        deg_sum += pi.degree
        prod *= q**pi.degree - 1
    return q ** (tower.n - 1 - deg_sum) * prod


def brute_count_st(tower: ff.Tower) -> int:
    """Definitional count: conjugates sum to zero and span a hyperplane.

    Independent of both the closed-form count and the polynomial
    criterion; conjugate coordinates come from the Frobenius matrix.
    """
    n, base = tower.n, tower.base
    frob = ff.frobenius_matrix(tower)
    count = 0
    for a in tower.top.elements():
        vec = a.coeffs()
        conj_coords = [vec]
        for _ in range(n - 1):
            prev = conj_coords[-1]
            conj_coords.append(
                [
                    mat._dot(frob.rows[i], prev, base.zero())
                    for i in range(n)
                ]
            )
        total = [base.zero()] * n
        for cc in conj_coords:
            total = [x + y for x, y in zip(total, cc)]
        if any(not x.is_zero() for x in total):
            continue
        sub = lie.Subspace(base, n)
        for cc in conj_coords:
            sub.insert(cc)
        if sub.dim == n - 1:
            count += 1
    return count


# ---------------------------------------------------------------------
# the Frobenius kernel decomposition


@dataclass(frozen=True)
class PiPiece:
    pi: poly.Polynomial
    mult: int
    v: lie.Subspace  # ker pi^mult(Fr)
    w: lie.Subspace  # ker pi^(mult-1)(Fr)
    x: lie.Subspace  # echelon-canonical complement of W in V


@dataclass(frozen=True)
class FrobeniusDecomposition:
    tower: ff.Tower
    phi: poly.PhiFactorization
    pieces: tuple[PiPiece, ...]
    u: lie.Subspace  # complement of V_{x-1} inside ker (x-1)^{mult+1}(Fr)


def _poly_power(f: poly.Polynomial, k: int) -> poly.Polynomial:
    out = poly.Polynomial.constant(f.field, f.field.one())
    for _ in range(k):
        out = out * f
    return out


def _kernel_subspace(d: poly.Polynomial, frob: mat.Matrix) -> lie.Subspace:
    field = frob.ring
    sub = lie.Subspace(field, frob.n)
    for vec in mat.nullspace(mat.poly_at_matrix(d, frob)):
        sub.insert(vec)
    return sub


def _complement(inner: lie.Subspace, outer: lie.Subspace) -> lie.Subspace:
    """Echelon-canonical complement of inner inside outer."""
    probe = lie.Subspace(inner.field, inner.ambient_dim)
    for row in inner.rows:
        probe.insert(row)
    comp = lie.Subspace(inner.field, inner.ambient_dim)
    for row in outer.rows:
        if probe.insert(list(row)):
            comp.insert(list(row))
    return comp


def build_decomposition(tower: ff.Tower) -> FrobeniusDecomposition:
    """Kernels V, W and complements X per prime factor of Phi, plus U."""
    base = tower.base
    frob = ff.frobenius_matrix(tower)
    phi = poly.phi_factorization(tower)
    pieces = []
    covered = 0
    for pi, mult, _ in phi.factors:
        v = _kernel_subspace(_poly_power(pi, mult), frob)
        w = _kernel_subspace(_poly_power(pi, mult - 1), frob)
        x = _complement(w, v)
        if w.dim != (mult - 1) * pi.degree or x.dim != pi.degree:
            raise RepresentationError("kernel dimensions violate deg-d rule")
        covered += v.dim
        pieces.append(PiPiece(pi=pi, mult=mult, v=v, w=w, x=x))
    x_minus_1 = poly.Polynomial(base, [-base.one(), base.one()])
    e = 0
    for pi, mult, _ in phi.factors:
        if pi == x_minus_1:
            e = mult
            break
    v_x1 = _kernel_subspace(_poly_power(x_minus_1, e), frob)
    full_x1 = _kernel_subspace(_poly_power(x_minus_1, e + 1), frob)
    u = _complement(v_x1, full_x1)
    if u.dim != 1 or covered + u.dim != tower.n:
        raise RepresentationError("decomposition does not fill the space")
    return FrobeniusDecomposition(tower=tower, phi=phi, pieces=tuple(pieces), u=u)


def construct_st_element(dec: FrobeniusDecomposition) -> ff.FFElem:
    """Deterministic sharply traceless element: sum of the first echelon
    basis vector of each complement X_pi."""
    tower = dec.tower
    base = tower.base
    total = [base.zero()] * tower.n
    for piece in dec.pieces:
        total = [x + y for x, y in zip(total, piece.x.rows[0])]
    elem = tower.top.from_coeffs(total)
    if not is_sharply_traceless_element(elem, tower, dec.phi):
        raise RepresentationError("decomposition produced a non-ST element")
    return elem


def find_st_element(
    tower: ff.Tower, seed: int, max_tries: int = 0
) -> ff.FFElem:
    """Rejection-sample a sharply traceless element; deterministic fallback."""
    phi = poly.phi_factorization(tower)
    rng = random.Random(f"slgen-st:{seed}")
    budget = max_tries or 40 * tower.q
    for _ in range(budget):
        a = tower.top.random(rng)
        if is_sharply_traceless_element(a, tower, phi):
            return a
    return construct_st_element(build_decomposition(tower))


# ---------------------------------------------------------------------
# companion-matrix pipeline


def companion_genpair(
    tower: ff.Tower, f: poly.Polynomial, strategy: str = "companion",
    seed: Optional[int] = None,
) -> lie.GenPairCertificate:
    """Pair (companion(f), trace-row matrix) certified to generate sl_n(F_q).

    f must be monic irreducible of degree n with zero x^{n-1} coefficient
    and a consistent set of roots.  The partner matrix is built from the
    relative traces tr(alpha^j): only the first row of M + I is nonzero.
    """
    base, n = tower.base, tower.n
    if f.field != base or f.degree != n:
        raise ParseError("polynomial must have degree n over the base field")
    if not f.is_monic():
        raise ParseError("polynomial must be monic")
    if not poly.is_irreducible(f):
        raise NotIrreducibleError(f"{poly.format_poly(f)} is reducible")
    if not f.coeff(n - 1).is_zero():
        raise MathPreconditionError(
            "companion matrix is not traceless: x^{n-1} coefficient nonzero"
        )
    root_tower = tower if f == tower.top_modulus else ff.Tower(base, n, f)
    alpha = root_tower.top.gen()
    conj = ff.conjugates(alpha, root_tower)
    if not check_consistent(conj).consistent:
        raise RootsNotConsistentError(
            f"roots of {poly.format_poly(f)} do not form a consistent set"
        )
    c = mat.companion(f)
    m = trace_row_matrix(root_tower)
    cert = lie.is_generating([c, m], "sl", strategy=strategy, seed=seed)
    if not cert.verdict:
        raise RepresentationError(
            "companion pair failed to generate; this is a defect"
        )
    return cert


def trace_row_matrix(tower: ff.Tower) -> mat.Matrix:
    """The conjugated all-ones partner: first row of M + I is
    (n, tr(alpha), ..., tr(alpha^{n-1})) for alpha the tower generator."""
    base, n = tower.base, tower.n
    alpha = tower.top.gen()
    power = tower.top.one()
    first = []
    for j in range(n):
        if j > 0:
            power = power * alpha
        first.append(ff.rel_trace(power, tower))
    rows = [[base.zero()] * n for _ in range(n)]
    rows[0] = first
    m = mat.Matrix(base, rows)
    return m - mat.Matrix.identity(base, n)


# ---------------------------------------------------------------------
# strategy dispatch


def auto_genpair(
    n: int,
    field: ff.Field,
    seed: int = 0,
    top_modulus: Optional[poly.Polynomial] = None,
) -> lie.GenPairCertificate:
    """Pick a construction for (n, field) and return a verified certificate.

    Sidon route when the characteristic is large relative to n, the
    normal-element pipeline when p does not divide n, and the
    sharply-traceless pipeline when it does.
    """
    if n < 2:
        raise ParseError("n must be >= 2")
    p = field.char
    if p == 2:
        raise EvenCharacteristicError(
            "constructions need odd characteristic; use random search over F_2"
        )
    if n == 3 and p == 3:
        raise ExceptionalCaseError(
            "sl_3 in characteristic 3 is not 2-generated; "
            "see the psl3 identity verifier"
        )
    sidon = sidon_greedy(n - 1)
    ints = consistent_integer_set(sidon)
    if p > 4 * max(abs(k) for k in ints):
        values = [field.from_int(k) for k in ints]
        ds = check_consistent(values)
        if ds.consistent and ds.sum_zero:
            return genpair_from_consistent(ds, strategy="sidon", seed=seed)
    tower = ff.make_tower(field, n, top_modulus)
    if n % p != 0:
        report = find_normal_element(tower, seed)
        return companion_genpair(
            tower, report.min_poly_beta, strategy="normal", seed=seed
        )
    alpha = find_st_element(tower, seed)
    return companion_genpair(
        tower, min_poly_over_base(alpha, tower), strategy="sharply-traceless",
        seed=seed,
    )
