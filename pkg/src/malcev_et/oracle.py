"""Brute-force oracles over small prime fields and seeded random generators.

The predicates here are written directly against structure constants with
numpy integer arrays reduced mod p; they share no code with the exact checks
they are used to cross-examine.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional, Sequence

import numpy as np

from .algebra import AlgebraData
from .cohomology import OneCochain, TwoCochain, cochain_dim
from .deformations import NijenhuisPair
from .embedding import EmbeddingTensor
from .errors import ShapeError, TooLarge, UnsupportedField
from .etrep import EtRepresentation, is_et_representation
from .linalg import Field, Matrix
from .representations import Representation

CANDIDATE_CAP = 2 ** 20
RNG_ALGORITHM = "numpy-philox"
_CHUNK = 1 << 14


def _prime(field: Field) -> int:
    if field.modulus is None:
        raise UnsupportedField("brute-force oracles need a prime field")
    return field.modulus


def reduce_mod(values, p: int) -> np.ndarray:
    """Integer array of residues; FpElement and integral rationals are accepted."""
    def one(x):
        if hasattr(x, "p"):
            return int(x)
        if hasattr(x, "denominator") and x.denominator != 1:
            return int(x.numerator) * pow(int(x.denominator), -1, p)
        return int(x)

    arr = np.vectorize(one, otypes=[np.int64])(np.asarray(values, dtype=object)) \
        if np.size(values) else np.zeros(np.shape(values), dtype=np.int64)
    return np.mod(arr, p)


def _structure_array(a: AlgebraData, p: int) -> np.ndarray:
    n = a.dim
    c = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            c[i, j] = reduce_mod(a.bracket_basis(i, j), p) if n else 0
    return c


def _action_array(r: Representation, p: int) -> np.ndarray:
    n, m = r.algebra.dim, r.module_dim
    out = np.zeros((n, m, m), dtype=np.int64)
    for i, mat in enumerate(r.rho):
        if m:
            out[i] = reduce_mod(mat.tolist(), p)
    return out


def _candidates(start: int, stop: int, length: int, p: int) -> np.ndarray:
    """Little-endian base-p digits of ``start..stop-1``, one row per candidate."""
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((stop - start, length), dtype=np.int64)
    for t in range(length):
        digits[:, t] = idx % p
        idx //= p
    return digits


def _column_major(digits: np.ndarray, rows: int, cols: int) -> np.ndarray:
    """Digit ``c * rows + r`` holds entry ``(r, c)``."""
    b = digits.shape[0]
    return digits.reshape(b, cols, rows).transpose(0, 2, 1)


def _check_cap(p: int, length: int):
    if p ** length > CANDIDATE_CAP:
        raise TooLarge(f"{p}^{length} candidates exceed the cap of 2^20")


def _et_mask(C: np.ndarray, R: np.ndarray, T: np.ndarray, p: int) -> np.ndarray:
    # [T f_k, T f_l] against T(rho(T f_k) f_l)
    lhs = np.einsum("bik,bjl,ijs->bkls", T, T, C) % p
    act = np.einsum("bik,irl->bkrl", T, R) % p
    rhs = np.einsum("bsr,bkrl->bkls", T, act) % p
    return np.all((lhs - rhs) % p == 0, axis=(1, 2, 3))


def enumerate_ets(r: Representation) -> tuple[int, list[Matrix]]:
    """Every ``T: M -> g`` over F_p satisfying ``[Tm, Tn] = T(rho(Tm) n)``, in
    canonical order (column-major little-endian base-p digits)."""
    f = r.field
    p = _prime(f)
    n, m = r.algebra.dim, r.module_dim
    length = n * m
    _check_cap(p, length)
    C, R = _structure_array(r.algebra, p), _action_array(r, p)
    found = []
    total = p ** length
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        T = _column_major(_candidates(start, stop, length, p), n, m)
        mask = _et_mask(C, R, T, p) if length else np.ones(stop - start, dtype=bool)
        for t in T[mask]:
            found.append(Matrix.from_rows(f, t.tolist(), m))
    return len(found), found


def _nijenhuis_mask(C, R, T, N0, N1, p) -> np.ndarray:
    b = N0.shape[0]
    ok = np.ones(b, dtype=bool)
    # N1 (T N0 - N1 T) = 0
    defect = (np.einsum("rk,bkc->brc", T, N0) - np.einsum("brk,kc->brc", N1, T)) % p
    ok &= np.all(np.einsum("brk,bkc->brc", N1, defect) % p == 0, axis=(1, 2))
    # N1 [x,y]_N = [N1 x, N1 y]
    bn = (np.einsum("bpi,pjs->bijs", N1, C) + np.einsum("bqj,iqs->bijs", N1, C)
          - np.einsum("ijt,bst->bijs", C, N1)) % p
    lhs = np.einsum("bst,bijt->bijs", N1, bn) % p
    rhs = np.einsum("bpi,bqj,pqs->bijs", N1, N1, C) % p
    ok &= np.all((lhs - rhs) % p == 0, axis=(1, 2, 3))
    # N0 [x,m]_N = rho(N1 x) N0 m
    an = (np.einsum("bpi,prk->bikr", N1, R) + np.einsum("irc,bck->bikr", R, N0)
          - np.einsum("brc,ick->bikr", N0, R)) % p
    lhs = np.einsum("brc,bikc->bikr", N0, an) % p
    rhs = np.einsum("bpi,prc,bck->bikr", N1, R, N0) % p
    ok &= np.all((lhs - rhs) % p == 0, axis=(1, 2, 3))
    return ok


def enumerate_nijenhuis(et: EmbeddingTensor) -> tuple[int, list[NijenhuisPair]]:
    """Census of Nijenhuis pairs over F_p.  Candidate digits list N0 column-major
    first, then N1 column-major."""
    f = et.field
    p = _prime(f)
    n, m = et.n, et.m
    length = m * m + n * n
    _check_cap(p, length)
    C, R = _structure_array(et.algebra, p), _action_array(et.rep, p)
    T = reduce_mod(et.T.tolist(), p) if n and m else np.zeros((n, m), dtype=np.int64)
    found = []
    total = p ** length
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        digits = _candidates(start, stop, length, p)
        N0 = _column_major(digits[:, :m * m], m, m)
        N1 = _column_major(digits[:, m * m:], n, n)
        mask = _nijenhuis_mask(C, R, T, N0, N1, p)
        for a, b in zip(N0[mask], N1[mask]):
            found.append(NijenhuisPair(Matrix.from_rows(f, a.tolist(), m),
                                       Matrix.from_rows(f, b.tolist(), n)))
    return len(found), found


def kernel_count(mat: Matrix, p: Optional[int] = None) -> int:
    """Number of ``x`` in F_p^cols with ``mat x = 0``, by exhaustive enumeration.

    Over Q, ``p`` must be given and the matrix is reduced mod p first.
    """
    if p is None:
        p = _prime(mat.field)
    cols = mat.cols
    _check_cap(p, cols)
    if mat.rows == 0 or cols == 0:
        return p ** cols
    A = reduce_mod(mat.tolist(), p)
    count = 0
    total = p ** cols
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        X = _candidates(start, stop, cols, p)
        count += int(np.count_nonzero(np.all((X @ A.T) % p == 0, axis=1)))
    return count


def kernel_dimension(mat: Matrix, p: Optional[int] = None) -> int:
    if p is None:
        p = _prime(mat.field)
    count = kernel_count(mat, p)
    d = 0
    while count > 1:
        if count % p:
            raise ArithmeticError("kernel size is not a power of p")
        count //= p
        d += 1
    return d


class InstanceStream:
    """Reproducible random objects from numpy's counter-based Philox generator.

    The same seed and algorithm identifier give the same stream everywhere.
    """

    algorithm = RNG_ALGORITHM

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._rng = np.random.Generator(np.random.Philox(self.seed))

    def scalars(self, field: Field, count: int, bound: int = 2) -> list:
        """Uniform residues over F_p; integers in ``[-bound, bound]`` over Q."""
        if count == 0:
            return []
        if field.modulus is None:
            raw = self._rng.integers(-bound, bound + 1, size=count)
        else:
            raw = self._rng.integers(0, field.modulus, size=count)
        return [field(int(x)) for x in raw]

    def coin(self, prob: float = 0.5) -> bool:
        return bool(self._rng.random() < prob)

    def choice(self, options: Sequence):
        return options[int(self._rng.integers(0, len(options)))]

    def matrix(self, field: Field, rows: int, cols: int, bound: int = 2) -> Matrix:
        vals = self.scalars(field, rows * cols, bound)
        return Matrix.from_rows(field, [vals[r * cols:(r + 1) * cols] for r in range(rows)], cols)

    def sparse_matrix(self, field: Field, rows: int, cols: int, bound: int = 2) -> Matrix:
        """Zero half of the time, otherwise uniform; raises acceptance rates in rejection sampling."""
        if self.coin():
            return Matrix.zeros(field, rows, cols)
        return self.matrix(field, rows, cols, bound)

    def skew_algebra(self, field: Field, dim: int, bound: int = 2) -> AlgebraData:
        entries = []
        for i, j in combinations(range(dim), 2):
            entries.append((i, j, self.scalars(field, dim, bound)))
        return AlgebraData.from_constants(field, dim, entries)

    def two_cochain(self, field: Field, dims, bound: int = 2) -> TwoCochain:
        return TwoCochain.from_coordinates(field, dims, self.scalars(field, cochain_dim(*dims), bound))

    def one_cochain(self, field: Field, dims, bound: int = 2) -> OneCochain:
        n, m, v, w = dims
        return OneCochain.from_coordinates(field, dims, self.scalars(field, v * m + w * n, bound))

    def nijenhuis_pair(self, field: Field, n: int, m: int, bound: int = 2) -> NijenhuisPair:
        return NijenhuisPair(self.matrix(field, m, m, bound), self.matrix(field, n, n, bound))

    def et_representation_candidate(self, et: EmbeddingTensor, max_dim: int = 2) -> EtRepresentation:
        f = et.field
        n, m = et.n, et.m
        v = int(self._rng.integers(0, max_dim + 1))
        w = int(self._rng.integers(0, max_dim + 1))
        sm = self.sparse_matrix
        return EtRepresentation(et, v, w, sm(f, w, v),
                                tuple(sm(f, v, v) for _ in range(n)),
                                tuple(sm(f, w, w) for _ in range(n)),
                                tuple(sm(f, v, w) for _ in range(m)))

    def et_representations(self, ets: Sequence[EmbeddingTensor], count: int,
                           max_dim: int = 2, max_attempts: int = 200000) -> list[EtRepresentation]:
        """Rejection sampling: draw a base from ``ets`` and sparse random
        coefficients until ``count`` of them pass check_et_representation."""
        out = []
        for _ in range(max_attempts):
            if len(out) == count:
                break
            er = self.et_representation_candidate(self.choice(ets), max_dim)
            if is_et_representation(er):
                out.append(er)
        if len(out) < count:
            raise RuntimeError(f"only {len(out)} of {count} samples accepted")
        return out


SHAPES = ("algebra", "two_cochain", "one_cochain", "nijenhuis_pair", "matrix")


@dataclass(frozen=True)
class ShapeSpec:
    """``kind`` with integer dimensions, parsed from ``kind:d1,d2,...``."""

    kind: str
    dims: tuple

    @classmethod
    def parse(cls, text: str) -> "ShapeSpec":
        kind, _, rest = text.partition(":")
        if kind not in SHAPES:
            raise ShapeError(f"unknown shape kind {kind!r}; expected one of {', '.join(SHAPES)}")
        try:
            dims = tuple(int(x) for x in rest.replace("x", ",").split(",")) if rest else ()
        except ValueError as exc:
            raise ShapeError(f"malformed dimensions in {text!r}") from exc
        want = {"algebra": 1, "two_cochain": 4, "one_cochain": 4, "nijenhuis_pair": 2, "matrix": 2}[kind]
        if len(dims) != want or any(d < 0 for d in dims):
            raise ShapeError(f"{kind} needs {want} non-negative dimensions")
        return cls(kind, dims)


def random_instances(seed: int, shape: ShapeSpec, field: Field, bound: int = 2) -> Iterator:
    """Endless deterministic stream of objects of the requested shape."""
    stream = InstanceStream(seed)
    while True:
        if shape.kind == "algebra":
            yield stream.skew_algebra(field, shape.dims[0], bound)
        elif shape.kind == "two_cochain":
            yield stream.two_cochain(field, shape.dims, bound)
        elif shape.kind == "one_cochain":
            yield stream.one_cochain(field, shape.dims, bound)
        elif shape.kind == "nijenhuis_pair":
            yield stream.nijenhuis_pair(field, *shape.dims, bound)
        else:
            yield stream.matrix(field, *shape.dims, bound)
