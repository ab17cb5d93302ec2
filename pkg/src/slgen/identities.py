"""Verifiers for the two exceptional cases where traceless matrices are
not generated by a pair: 3x3 in characteristic 3 and 4x4 in
characteristic 2.

Each obstruction rests on one polynomial identity that holds modulo
scalar matrices; the checks here evaluate the identity exactly.  All
"equalities modulo scalars" are tested in sl as "difference is a scalar
matrix", so no quotient coordinates appear anywhere.  The bulk sweeps use
table-coded numpy arithmetic and are pinned against the per-pair checks
by tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations, permutations
from typing import Optional

import numpy as np

from . import coded, ff, lie, mat
from .errors import FieldMismatchError, ParseError


@dataclass
class IdentityReport:
    """Outcome of a sweep or dimension survey for one exceptional case."""

    case: str  # "psl3_char3" or "psl4_char2"
    samples: int
    failures: list = dc_field(default_factory=list)
    max_pair_dim: Optional[int] = None
    seed: Optional[int] = None

    def to_json_dict(self) -> dict:
        return {
            "case": self.case,
            "samples": self.samples,
            "failures": list(self.failures),
            "max_pair_dim": self.max_pair_dim,
            "seed": self.seed,
        }


def _require(x: mat.Matrix, n: int, p: int) -> None:
    if x.n != n:
        raise ParseError(f"expected a {n}x{n} matrix")
    field = x.ring
    if not isinstance(field, ff.Field) or field.char != p:
        raise FieldMismatchError(f"expected characteristic {p}")
    if not x.is_traceless():
        raise ParseError("matrix must be traceless")


# ---------------------------------------------------------------------
# the characteristic-3 obstruction for 3x3


def check_char_poly_33(x: mat.Matrix) -> bool:
    """x^3 + tr(x^2) x = det(x) I for traceless 3x3 x in characteristic 3."""
    _require(x, 3, 3)
    field = x.ring
    x2 = x * x
    lhs = x2 * x + x.scale(x2.trace())
    rhs = mat.Matrix.identity(field, 3).scale(x.det())
    return lhs == rhs


def check_trace_formula_33(x: mat.Matrix, y: mat.Matrix) -> bool:
    """[x,y,y] + tr(y^2) x - tr(xy) y is a scalar matrix."""
    _require(x, 3, 3)
    _require(y, 3, 3)
    if x.ring != y.ring:
        raise FieldMismatchError("matrix ring mismatch")
    res = (
        mat.nested_bracket(x, y, y)
        + x.scale((y * y).trace())
        - y.scale((x * y).trace())
    )
    return res.is_scalar()


# ---------------------------------------------------------------------
# the characteristic-2 obstruction for 4x4


def check_42_formula(x: mat.Matrix, y: mat.Matrix) -> bool:
    """[x,y,y,y] + a x + b y + c [x,y] + d y^2 is a scalar matrix,
    with (a,b,c,d) the quartic forms of the pair."""
    _require(x, 4, 2)
    _require(y, 4, 2)
    if x.ring != y.ring:
        raise FieldMismatchError("matrix ring mismatch")
    a, b, c, d = mat.forms_sl4(x, y)
    res = (
        mat.nested_bracket(x, y, y, y)
        + x.scale(a)
        + y.scale(b)
        + mat.bracket(x, y).scale(c)
        + (y * y).scale(d)
    )
    return res.is_scalar()


# ---------------------------------------------------------------------
# canonical sharp examples and generating triples


def psl3_triple(field: ff.Field) -> tuple[mat.Matrix, mat.Matrix, mat.Matrix]:
    """diag(1,-1,0), E13+E23 and its transpose; a generating triple of
    the 3x3 traceless matrices in characteristic 3."""
    a = mat.diag([field.one(), -field.one(), field.zero()])
    b = mat.elementary(3, 0, 2, field) + mat.elementary(3, 1, 2, field)
    return a, b, b.transpose()


def psl3_sharp_pair(field: ff.Field) -> tuple[mat.Matrix, mat.Matrix]:
    """A 3x3 pair attaining the two-generated dimension bound 4 in
    characteristic 3: diag(1,-1,0) with E13+E23+E31."""
    a = mat.diag([field.one(), -field.one(), field.zero()])
    y = (
        mat.elementary(3, 0, 2, field)
        + mat.elementary(3, 1, 2, field)
        + mat.elementary(3, 2, 0, field)
    )
    return a, y


def psl4_triple(field: ff.Field) -> tuple[mat.Matrix, mat.Matrix, mat.Matrix]:
    """diag(1,1,0,0) and a pair (B, B^T) generating the 4x4 traceless
    matrices; (B, B^T) attains the two-generated bound 9 in
    characteristic 2."""
    a = mat.diag([field.one(), field.one(), field.zero(), field.zero()])
    b = mat.Matrix.from_ints(
        field,
        [[0, 0, 1, 1], [1, 0, 0, 0], [0, 0, 0, 0], [1, 1, 0, 0]],
    )
    return a, b, b.transpose()


def verify_fixed_triples() -> bool:
    """Certify the hard-coded triples and the minimality of each member.

    The 3x3 triple over F_3 must close to dimension 8 and the 4x4 triple
    over F_2 to dimension 15; dropping any one member must close to a
    strictly smaller dimension.
    """
    for triple, full in (
        (psl3_triple(ff.make_field(3)), 8),
        (psl4_triple(ff.make_field(2)), 15),
    ):
        _, dim = lie.close(list(triple))
        if dim != full:
            return False
        for k in range(3):
            rest = [m for i, m in enumerate(triple) if i != k]
            _, d = lie.close(rest)
            if d >= full:
                return False
    return True


# ---------------------------------------------------------------------
# pair dimension survey


def _span_with_scalars(
    mats: list[mat.Matrix], field: ff.Field, n: int
) -> lie.Subspace:
    sub = lie.Subspace(field, n * n)
    for m in mats:
        sub.insert(m.flatten())
    sub.insert(mat.Matrix.identity(field, n).flatten())
    return sub


def _predicted_span(case: str, x: mat.Matrix, y: mat.Matrix) -> lie.Subspace:
    field, n = x.ring, x.n
    if case == "psl3_char3":
        mats = [x, y, mat.bracket(x, y)]
    else:
        x2, y2 = x * x, y * y
        mats = [
            x,
            y,
            mat.bracket(x, y),
            mat.bracket(x, y2),
            mat.bracket(y, x2),
            x2,
            y2,
            mat.bracket(x2, y2),
        ]
    return _span_with_scalars(mats, field, n)


_CASES = {
    "psl3_char3": (3, 3, 4),
    "psl4_char2": (4, 2, 9),
}


def pair_dim_bound(
    case: str, field: ff.Field, trials: int, seed: int = 0
) -> IdentityReport:
    """Survey dimensions of two-generated subalgebras of the traceless
    n x n matrices.

    Trial 0 is the canonical sharp pair (so the bound 4 resp. 9 is always
    attained); the rest are seeded random traceless pairs.  Each trial
    records a failure if the closure dimension exceeds the bound or the
    closure escapes the predicted spanning set (x, y, [x,y] plus scalars
    for 3x3; the eight-element span plus scalars for 4x4).
    """
    if case not in _CASES:
        raise ParseError(f"unknown case {case!r}")
    n, p, bound = _CASES[case]
    if field.char != p:
        raise FieldMismatchError(f"case {case} needs characteristic {p}")
    report = IdentityReport(case=case, samples=trials, seed=seed)
    max_dim = 0
    for t in range(trials):
        if t == 0:
            if n == 3:
                x, y = psl3_sharp_pair(field)
            else:
                triple = psl4_triple(field)
                x, y = triple[1], triple[2]
        else:
            rng = random.Random(f"slgen-id:{case}:{seed}:{t}")
            x = mat.random_traceless(n, field, rng)
            y = mat.random_traceless(n, field, rng)
        sub, dim = lie.close([x, y])
        max_dim = max(max_dim, dim)
        ok = dim <= bound
        if ok:
            span = _predicted_span(case, x, y)
            ok = all(span.contains(row) for row in sub.rows)
        if not ok:
            report.failures.append(
                (mat.format_matrix(x), mat.format_matrix(y))
            )
    report.max_pair_dim = max_dim
    return report


# ---------------------------------------------------------------------
# bulk sweeps (table-coded numpy fast path)


def _coded_scale(cf, c, a):
    return cf.mul[np.asarray(c)[..., None, None], a]


def _batch(cf, field, count, seed, n):
    rng = np.random.default_rng(seed)
    return cf.random_traceless(rng, count, n)


def _det3_coded(cf, x):
    """Batched 3x3 determinant by permutation expansion."""
    total = None
    for perm in permutations(range(3)):
        term = cf.mul[
            cf.mul[x[:, 0, perm[0]], x[:, 1, perm[1]]], x[:, 2, perm[2]]
        ]
        inversions = sum(
            perm[i] > perm[j] for i in range(3) for j in range(i + 1, 3)
        )
        if inversions % 2:
            term = cf.neg[term]
        total = term if total is None else cf.add[total, term]
    return total


def sweep_char_poly_33(
    field: ff.Field, samples: int, seed: int = 0, exhaustive: bool = False
) -> IdentityReport:
    """Bulk check of x^3 + tr(x^2) x = det(x) I over traceless 3x3 x.

    With exhaustive=True every traceless matrix of the field is checked
    and samples is ignored.
    """
    if field.char != 3:
        raise FieldMismatchError("needs characteristic 3")
    cf = coded.coded_field(field)
    if exhaustive:
        q = field.order
        free = np.indices((q,) * 8).reshape(8, -1).T.astype(cf.dtype)
        x = np.zeros((free.shape[0], 3, 3), dtype=cf.dtype)
        x[:, 0, 0], x[:, 0, 1], x[:, 0, 2] = free[:, 0], free[:, 1], free[:, 2]
        x[:, 1, 0], x[:, 1, 1], x[:, 1, 2] = free[:, 3], free[:, 4], free[:, 5]
        x[:, 2, 0], x[:, 2, 1] = free[:, 6], free[:, 7]
        x[:, 2, 2] = cf.neg[cf.add[x[:, 0, 0], x[:, 1, 1]]]
    else:
        x = _batch(cf, field, samples, seed, 3)
    x2 = cf.matmul(x, x)
    lhs = cf.add[cf.matmul(x2, x), _coded_scale(cf, cf.trace(x2), x)]
    det = _det3_coded(cf, x)
    eye = np.eye(3, dtype=bool)
    rhs = np.zeros_like(lhs)
    rhs[:, eye] = det[:, None]
    ok = np.all(lhs == rhs, axis=(1, 2))
    report = IdentityReport(
        case="psl3_char3", samples=int(x.shape[0]), seed=None if exhaustive else seed
    )
    for i in np.nonzero(~ok)[0]:
        report.failures.append((mat.format_matrix(cf.decode_matrix(x[i])),))
    return report


def sweep_trace_formula_33(
    field: ff.Field, samples: int, seed: int = 0
) -> IdentityReport:
    """Bulk check that [x,y,y] + tr(y^2) x - tr(xy) y is scalar."""
    if field.char != 3:
        raise FieldMismatchError("needs characteristic 3")
    cf = coded.coded_field(field)
    x = _batch(cf, field, samples, seed, 3)
    y = _batch(cf, field, samples, seed + 1, 3)
    res = cf.bracket(cf.bracket(x, y), y)
    res = cf.add[res, _coded_scale(cf, cf.trace(cf.matmul(y, y)), x)]
    res = cf.sub[res, _coded_scale(cf, cf.trace(cf.matmul(x, y)), y)]
    ok = cf.is_scalar(res)
    report = IdentityReport(case="psl3_char3", samples=samples, seed=seed)
    for i in np.nonzero(~ok)[0]:
        report.failures.append(
            (
                mat.format_matrix(cf.decode_matrix(x[i])),
                mat.format_matrix(cf.decode_matrix(y[i])),
            )
        )
    return report


def _dual_minor_sums(cf, y, x, size):
    """Sums of principal size x size minors of T*x + y over F[T]/(T^2).

    Returns (real, eps) batches.  Each minor is expanded over
    permutations; the eps part replaces one factor by the perturbation in
    every position.  Characteristic 2, so signs are dropped.
    """
    count = y.shape[0]
    real = np.zeros(count, dtype=cf.dtype)
    eps = np.zeros(count, dtype=cf.dtype)
    for rows in combinations(range(4), size):
        for perm in permutations(range(size)):
            cols = tuple(rows[p] for p in perm)
            prod_r = y[:, rows[0], cols[0]]
            for k in range(1, size):
                prod_r = cf.mul[prod_r, y[:, rows[k], cols[k]]]
            real = cf.add[real, prod_r]
            for swap in range(size):
                term = None
                for k in range(size):
                    src = x if k == swap else y
                    f = src[:, rows[k], cols[k]]
                    term = f if term is None else cf.mul[term, f]
                eps = cf.add[eps, term]
    return real, eps


def sweep_42_formula(
    field: ff.Field, samples: int, seed: int = 0
) -> IdentityReport:
    """Bulk check of [x,y,y,y] = a x + b y + c [x,y] + d y^2 modulo scalars.

    The forms come from the e3 and e2 coefficients of the characteristic
    polynomial of T*x + y over the dual numbers: beta = a + T b,
    alpha = c + T d.
    """
    if field.char != 2:
        raise FieldMismatchError("needs characteristic 2")
    cf = coded.coded_field(field)
    x = _batch(cf, field, samples, seed, 4)
    y = _batch(cf, field, samples, seed + 1, 4)
    a, b = _dual_minor_sums(cf, y, x, 3)
    c, d = _dual_minor_sums(cf, y, x, 2)
    b1 = cf.bracket(x, y)
    res = cf.bracket(cf.bracket(b1, y), y)
    res = cf.add[res, _coded_scale(cf, a, x)]
    res = cf.add[res, _coded_scale(cf, b, y)]
    res = cf.add[res, _coded_scale(cf, c, b1)]
    res = cf.add[res, _coded_scale(cf, d, cf.matmul(y, y))]
    ok = cf.is_scalar(res)
    report = IdentityReport(case="psl4_char2", samples=samples, seed=seed)
    for i in np.nonzero(~ok)[0]:
        report.failures.append(
            (
                mat.format_matrix(cf.decode_matrix(x[i])),
                mat.format_matrix(cf.decode_matrix(y[i])),
            )
        )
    return report
