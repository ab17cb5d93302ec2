"""Table-driven field arithmetic on numpy arrays of element codes.

Small fields (order up to a few hundred) get dense add/mul/neg/inv tables
indexed by element code, where code = the field's canonical element index
(0 is zero, 1 is one).  All helpers broadcast, so a whole batch of
matrices can be multiplied with a handful of numpy operations.  This is a
fast path only: results are always cross-checkable against the generic
element arithmetic.
"""

from __future__ import annotations

import numpy as np

from . import ff
from .mat import Matrix

MAX_CODED_ORDER = 512

_cache: dict[ff.Field, "CodedField"] = {}


def coded_field(field: ff.Field) -> "CodedField":
    cf = _cache.get(field)
    if cf is None:
        cf = CodedField(field)
        _cache[field] = cf
    return cf


def codable(field: ff.Field) -> bool:
    return field.order <= MAX_CODED_ORDER


class CodedField:
    def __init__(self, field: ff.Field):
        order = field.order
        if order > MAX_CODED_ORDER:
            raise ValueError(f"field of order {order} is too large to tabulate")
        self.field = field
        self.order = order
        self.dtype = np.uint8 if order <= 256 else np.uint16
        raws = [field.rfrom_index(i) for i in range(order)]
        add = np.zeros((order, order), dtype=self.dtype)
        mul = np.zeros((order, order), dtype=self.dtype)
        for i, a in enumerate(raws):
            for j, b in enumerate(raws):
                add[i, j] = field.rto_index(field.radd(a, b))
                mul[i, j] = field.rto_index(field.rmul(a, b))
        neg = np.zeros(order, dtype=self.dtype)
        inv = np.zeros(order, dtype=self.dtype)  # inv[0] stays 0, never used
        for i, a in enumerate(raws):
            neg[i] = field.rto_index(field.rneg(a))
            if i:
                inv[i] = field.rto_index(field.rinv(a))
        self.add = add
        self.mul = mul
        self.neg = neg
        self.inv = inv
        self.sub = add[:, neg]  # sub[a, b] = a + (-b)

    # -- element/matrix conversion ------------------------------------

    def encode(self, a: ff.FFElem) -> int:
        return self.field.rto_index(a.raw)

    def decode(self, code: int) -> ff.FFElem:
        return self.field.from_index(int(code))

    def encode_matrix(self, m: Matrix) -> np.ndarray:
        return np.array(
            [[self.encode(e) for e in row] for row in m.rows], dtype=self.dtype
        )

    def decode_matrix(self, arr: np.ndarray) -> Matrix:
        return Matrix(
            self.field, [[self.decode(c) for c in row] for row in arr]
        )

    def decode_vector(self, arr: np.ndarray) -> list[ff.FFElem]:
        return [self.decode(c) for c in arr]

    # -- batched arithmetic (all arguments broadcast) -------------------

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        n = a.shape[-1]
        acc = self.mul[a[..., :, 0, None], b[..., None, 0, :]]
        for k in range(1, n):
            acc = self.add[acc, self.mul[a[..., :, k, None], b[..., None, k, :]]]
        return acc

    def bracket(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.sub[self.matmul(a, b), self.matmul(b, a)]

    def trace(self, a: np.ndarray) -> np.ndarray:
        acc = a[..., 0, 0]
        for i in range(1, a.shape[-1]):
            acc = self.add[acc, a[..., i, i]]
        return acc

    def scale(self, c: np.ndarray, a: np.ndarray) -> np.ndarray:
        """c broadcast against matrix batch a."""
        return self.mul[np.asarray(c)[..., None, None], a]

    def is_scalar(self, a: np.ndarray) -> np.ndarray:
        """Boolean batch mask: matrix equals (some constant) * identity."""
        n = a.shape[-1]
        eye = np.eye(n, dtype=bool)
        off_ok = np.all(a[..., ~eye] == 0, axis=-1)
        d = a[..., np.arange(n), np.arange(n)]
        diag_ok = np.all(d == d[..., :1], axis=-1)
        return off_ok & diag_ok

    def random_traceless(self, rng: np.random.Generator, count: int, n: int):
        """Batch of uniformly random traceless matrices as codes."""
        m = rng.integers(0, self.order, size=(count, n, n), dtype=np.int64).astype(
            self.dtype
        )
        acc = m[:, 0, 0]
        for i in range(1, n - 1):
            acc = self.add[acc, m[:, i, i]]
        m[:, n - 1, n - 1] = self.neg[acc]
        return m
