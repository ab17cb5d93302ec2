"""Lie-closure engine: echelon subspaces of flattened matrices and the
worklist closure that decides generation of sl_n / psl_n.

Three interchangeable arithmetic engines run the same worklist: a generic
one over wrapped field elements, a table-driven numpy one for small
fields, and a bit-packed one for F_2 (coordinate vectors live in machine
integers, elimination is word-wise XOR).  Engine choice never changes the
computed dimension; a test pins that.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from . import coded, ff, mat
from .errors import MathPreconditionError, ParseError


class Subspace:
    """Reduced-echelon basis of a subspace of F^ambient_dim."""

    def __init__(self, field: ff.Field, ambient_dim: int):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows: list[list[ff.FFElem]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: list[ff.FFElem]) -> list[ff.FFElem]:
        vec = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = vec[p]
            if not c.is_zero():
                for k in range(p, self.ambient_dim):
                    vec[k] = vec[k] - c * row[k]
        return vec

    def insert(self, vec: list[ff.FFElem]) -> bool:
        """Insert a vector; returns True iff it enlarged the subspace."""
        if len(vec) != self.ambient_dim:
            raise ParseError("vector has wrong length")
        vec = self._reduce(vec)
        pivot = next((i for i, c in enumerate(vec) if not c.is_zero()), None)
        if pivot is None:
            return False
        inv = vec[pivot].inverse()
        vec = [c * inv for c in vec]
        for i, row in enumerate(self.rows):
            c = row[pivot]
            if not c.is_zero():
                self.rows[i] = [a - c * b for a, b in zip(row, vec)]
        pos = next(
            (i for i, p in enumerate(self.pivots) if p > pivot), len(self.pivots)
        )
        self.rows.insert(pos, vec)
        self.pivots.insert(pos, pivot)
        return True

    def contains(self, vec: list[ff.FFElem]) -> bool:
        return all(c.is_zero() for c in self._reduce(vec))

    def contains_matrix(self, m: mat.Matrix) -> bool:
        return self.contains(m.flatten())


@dataclass
class GenPairCertificate:
    """A candidate generating set with its exact closure dimension."""

    field_spec: str
    n: int
    generators: list[mat.Matrix]
    closure_dim: int
    target: str  # "sl" or "psl"
    verdict: bool
    strategy: str
    seed: Optional[int] = None
    trials_used: Optional[int] = None

    def to_json_dict(self) -> dict:
        out = {
            "field": self.field_spec,
            "n": self.n,
            "strategy": self.strategy,
            "target": self.target,
            "generators": [mat.format_matrix(g) for g in self.generators],
            "closure_dim": self.closure_dim,
            "verdict": self.verdict,
            "seed": self.seed,
        }
        if self.trials_used is not None:
            out["trials_used"] = self.trials_used
        return out


# ---------------------------------------------------------------------
# closure engines


class _GenericEngine:
    def __init__(self, field: ff.Field, n: int):
        self.sub = Subspace(field, n * n)

    def to_native(self, m: mat.Matrix):
        return m

    def bracket(self, a, b):
        return mat.bracket(a, b)

    def insert(self, m) -> bool:
        return self.sub.insert(m.flatten())

    def insert_matrix(self, m: mat.Matrix) -> bool:
        return self.sub.insert(m.flatten())

    def dim(self) -> int:
        return self.sub.dim

    def subspace(self) -> Subspace:
        return self.sub


class _CodedEngine:
    def __init__(self, field: ff.Field, n: int):
        self.cf = coded.coded_field(field)
        self.field = field
        self.n = n
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def to_native(self, m: mat.Matrix):
        return self.cf.encode_matrix(m)

    def bracket(self, a, b):
        return self.cf.bracket(a, b)

    def insert(self, m) -> bool:
        return self._insert_vec(m.reshape(-1).copy())

    def insert_matrix(self, m: mat.Matrix) -> bool:
        return self.insert(self.to_native(m))

    def _insert_vec(self, vec: np.ndarray) -> bool:
        cf = self.cf
        for row, p in zip(self.rows, self.pivots):
            c = vec[p]
            if c:
                vec = cf.sub[vec, cf.mul[c, row]]
        nz = np.nonzero(vec)[0]
        if nz.size == 0:
            return False
        pivot = int(nz[0])
        vec = cf.mul[cf.inv[vec[pivot]], vec]
        for i, row in enumerate(self.rows):
            c = row[pivot]
            if c:
                self.rows[i] = cf.sub[row, cf.mul[c, vec]]
        pos = next(
            (i for i, p in enumerate(self.pivots) if p > pivot), len(self.pivots)
        )
        self.rows.insert(pos, vec)
        self.pivots.insert(pos, pivot)
        return True

    def dim(self) -> int:
        return len(self.rows)

    def subspace(self) -> Subspace:
        sub = Subspace(self.field, self.n * self.n)
        sub.rows = [self.cf.decode_vector(r) for r in self.rows]
        sub.pivots = list(self.pivots)
        return sub


class _GF2Engine:
    """Rows of matrices and basis vectors packed into Python ints."""

    def __init__(self, field: ff.Field, n: int):
        self.field = field
        self.n = n
        self.rows: list[int] = []  # flattened vectors, bit i*n+j = entry (i, j)
        self.pivots: list[int] = []

    def to_native(self, m: mat.Matrix):
        n = self.n
        return [
            sum((1 << j) for j, e in enumerate(row) if not e.is_zero())
            for row in m.rows
        ]

    def _matmul(self, a: list[int], b: list[int]) -> list[int]:
        out = []
        for arow in a:
            acc = 0
            k = 0
            while arow:
                if arow & 1:
                    acc ^= b[k]
                arow >>= 1
                k += 1
            out.append(acc)
        return out

    def bracket(self, a, b):
        ab = self._matmul(a, b)
        ba = self._matmul(b, a)
        return [x ^ y for x, y in zip(ab, ba)]

    def _flatten(self, m: list[int]) -> int:
        n = self.n
        acc = 0
        for i, row in enumerate(m):
            acc |= row << (i * n)
        return acc

    def insert(self, m) -> bool:
        return self._insert_vec(self._flatten(m))

    def insert_matrix(self, m: mat.Matrix) -> bool:
        return self.insert(self.to_native(m))

    def _insert_vec(self, vec: int) -> bool:
        for row, p in zip(self.rows, self.pivots):
            if (vec >> p) & 1:
                vec ^= row
        if vec == 0:
            return False
        pivot = (vec & -vec).bit_length() - 1
        for i, row in enumerate(self.rows):
            if (row >> pivot) & 1:
                self.rows[i] = row ^ vec
        pos = next(
            (i for i, p in enumerate(self.pivots) if p > pivot), len(self.pivots)
        )
        self.rows.insert(pos, vec)
        self.pivots.insert(pos, pivot)
        return True

    def dim(self) -> int:
        return len(self.rows)

    def subspace(self) -> Subspace:
        ambient = self.n * self.n
        sub = Subspace(self.field, ambient)
        zero, one = self.field.zero(), self.field.one()
        sub.rows = [
            [one if (r >> i) & 1 else zero for i in range(ambient)]
            for r in self.rows
        ]
        sub.pivots = list(self.pivots)
        return sub


def _make_engine(field: ff.Field, n: int, engine: Optional[str]):
    if engine is None:
        if field.order == 2:
            engine = "gf2"
        elif coded.codable(field):
            engine = "coded"
        else:
            engine = "generic"
    if engine == "gf2":
        if field.order != 2:
            raise ParseError("gf2 engine requires the two-element field")
        return _GF2Engine(field, n)
    if engine == "coded":
        return _CodedEngine(field, n)
    if engine == "generic":
        return _GenericEngine(field, n)
    raise ParseError(f"unknown engine {engine!r}")


def close(
    gens: list[mat.Matrix],
    max_dim: Optional[int] = None,
    engine: Optional[str] = None,
) -> tuple[Subspace, int]:
    """Smallest bracket-closed subspace containing the generators.

    Brackets are processed FIFO and the loop exits early once the span
    reaches n^2 - 1 (the closure of traceless matrices lies in sl_n).
    """
    if not gens:
        raise ParseError("empty generator list")
    first = gens[0]
    field = first.ring
    if not isinstance(field, ff.Field):
        raise ParseError("closure needs matrices over a field")
    n = first.n
    for g in gens:
        if g.n != n or g.ring != field:
            raise ParseError("generators must share one size and field")
        if not g.is_traceless():
            raise MathPreconditionError("generators must be traceless")
    cap = n * n - 1 if max_dim is None else max_dim
    eng = _make_engine(field, n, engine)
    reps = []
    queue: deque[tuple[int, int]] = deque()
    for g in gens:
        native = eng.to_native(g)
        if eng.insert(native):
            k = len(reps)
            for i in range(k):
                queue.append((i, k))
            reps.append(native)
    while queue and eng.dim() < cap:
        i, j = queue.popleft()
        c = eng.bracket(reps[i], reps[j])
        if eng.insert(c):
            k = len(reps)
            for t in range(k):
                queue.append((t, k))
            reps.append(c)
    return eng.subspace(), eng.dim()


def is_generating(
    gens: list[mat.Matrix],
    target: str = "sl",
    strategy: str = "direct",
    seed: Optional[int] = None,
    engine: Optional[str] = None,
) -> GenPairCertificate:
    """Certify whether the generators generate sl_n (or psl_n) over the field.

    For psl with p | n the identity is adjoined to the closure and the
    quotient dimension n^2 - 2 is required; otherwise psl equals sl and
    the plain n^2 - 1 criterion applies.
    """
    if target not in ("sl", "psl"):
        raise ParseError(f"unknown target {target!r}")
    first = gens[0]
    field, n = first.ring, first.n
    sub, dim = close(gens, engine=engine)
    modular = target == "psl" and n % field.char == 0
    if modular:
        sub.insert(mat.Matrix.identity(field, n).flatten())
        closure_dim = sub.dim - 1
        expected = n * n - 2
    else:
        closure_dim = dim
        expected = n * n - 1
    return GenPairCertificate(
        field_spec=ff.format_field_spec(field),
        n=n,
        generators=list(gens),
        closure_dim=closure_dim,
        target=target,
        verdict=closure_dim == expected,
        strategy=strategy,
        seed=seed,
    )


def random_pair_search(
    n: int,
    field: ff.Field,
    trials: int,
    seed: int,
    target: str = "sl",
) -> Optional[GenPairCertificate]:
    """First certified generating pair among seeded random traceless pairs.

    Trial t draws from its own stream derived from (seed, t), so the
    result does not depend on execution order across trials.
    """
    if trials < 1:
        raise ParseError("trials must be >= 1")
    for t in range(trials):
        rng = random.Random(f"slgen-pair:{seed}:{t}")
        a = mat.random_traceless(n, field, rng)
        b = mat.random_traceless(n, field, rng)
        cert = is_generating([a, b], target, strategy="random-search", seed=seed)
        if cert.verdict:
            cert.trials_used = t + 1
            return cert
    return None
