"""Exact multilinear identities evaluated in bulk with numpy object arrays.

Entries are Python ints and Fractions (elements of F_p are lifted to ints
and reduced at the end), so ``np.einsum`` stays exact while running whole
families of basis evaluations in one call.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .linalg import Field, FpElement, Matrix
from .report import Check


def lift(x):
    return x.value if isinstance(x, FpElement) else x


def zeros(*shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out[...] = 0
    return out


def structure_array(a) -> np.ndarray:
    """``C[i, j, k]``: coefficient of ``e_k`` in ``[e_i, e_j]``."""
    n = a.dim
    c = zeros(n, n, n)
    for i, j in product(range(n), repeat=2):
        c[i, j, :] = [lift(x) for x in a.bracket_basis(i, j)]
    return c


def table_array(field: Field, table, n: int, width: int) -> np.ndarray:
    """Array from a nested ``table[i][j]`` of width-``width`` vectors."""
    c = zeros(n, n, width)
    for i, j in product(range(n), repeat=2):
        c[i, j, :] = [lift(x) for x in table[i][j]]
    return c


def matrix_array(mat: Matrix) -> np.ndarray:
    out = zeros(mat.rows, mat.cols)
    for i, r in enumerate(mat.entries):
        out[i, :] = [lift(x) for x in r]
    return out


def matrices_array(mats, rows: int, cols: int) -> np.ndarray:
    out = zeros(len(mats), rows, cols)
    for k, mat in enumerate(mats):
        out[k] = matrix_array(mat)
    return out


_INT64_LIMIT = 2 ** 62


def exact_arrays(arrays, degree: int, summands: int, terms: int) -> list:
    """Convert to int64 when every entry is an integer and no residual built
    from ``terms`` sums of ``summands`` products of ``degree`` entries can
    overflow; otherwise keep exact object arrays."""
    bound = 1
    for arr in arrays:
        for x in arr.flat:
            if not isinstance(x, int):
                return list(arrays)
            bound = max(bound, abs(x))
    if terms * max(summands, 1) * bound ** degree >= _INT64_LIMIT:
        return list(arrays)
    return [arr.astype(np.int64) for arr in arrays]


def _normalize(field: Field, arr: np.ndarray) -> np.ndarray:
    return arr % field.modulus if field.modulus is not None else arr


def _scalar(field: Field, v):
    return field(int(v) if isinstance(v, np.integer) else v)


def record_block(check: Check, field: Field, arr: np.ndarray, index_dims: int, matrix: bool = False):
    """Record one evaluation per index over the leading ``index_dims`` axes;
    the trailing axes hold a residual that must vanish."""
    arr = _normalize(field, arr)
    index_shape = arr.shape[:index_dims]
    tail = arr.shape[index_dims:]
    total = int(np.prod(index_shape)) if index_shape else 1
    check.evaluated += total
    if arr.size == 0:
        return
    bad = arr != 0
    if tail:
        bad = bad.reshape(index_shape + (-1,)).any(axis=-1)
    for idx in np.argwhere(bad):
        idx = tuple(int(v) for v in idx)
        res = arr[idx]
        if matrix:
            rows, cols = tail
            value = Matrix._trusted(field, rows, cols,
                                    tuple(tuple(_scalar(field, res[r, c]) for c in range(cols)) for r in range(rows)))
            zero = Matrix.zeros(field, rows, cols)
        else:
            value = tuple(_scalar(field, v) for v in np.ravel(res))
            zero = tuple(field.zero for _ in value)
        check.record_violation(idx, value, zero)
