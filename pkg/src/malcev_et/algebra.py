"""Structure-constant algebras and the Malcev, Sagle and dialgebra identities."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import NonSkewInput, ShapeError, UnsupportedField
from .linalg import Field, Matrix, unit_vector, vadd, zero_vector
from .report import VerificationReport
from .tensors import exact_arrays, record_block, structure_array


@dataclass(frozen=True, eq=False)
class AlgebraData:
    """A finite-dimensional algebra ``[e_i, e_j] = sum_k c_ij^k e_k``.

    Skew algebras store only pairs ``i < j``.  Non-skew algebras
    (dialgebras) store every ordered pair that has a nonzero product.
    """

    field: Field
    dim: int
    skew: bool
    table: Mapping[tuple[int, int], tuple]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n = self.dim
        for (i, j), c in self.table.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ShapeError(f"index pair ({i}, {j}) out of range for dim {n}")
            if self.skew and i >= j:
                raise ShapeError(f"skew table may only store i < j, got ({i}, {j})")
            if len(c) != n:
                raise ShapeError(f"coefficient vector for ({i}, {j}) has length {len(c)}")
            for x in c:
                if not self.field.contains(x):
                    raise ShapeError(f"coefficient {x!r} is not in {self.field}")
        # mult[i][j] = list of (k, c) with c != 0
        mult = [[[] for _ in range(n)] for _ in range(n)]
        for (i, j), c in self.table.items():
            nz = [(k, x) for k, x in enumerate(c) if x]
            mult[i][j] = nz
            if self.skew:
                mult[j][i] = [(k, -x) for k, x in nz]
        object.__setattr__(self, "_mult", mult)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_constants(cls, field: Field, dim: int, entries: Iterable, skew: bool = True) -> "AlgebraData":
        """Build from ``(i, j, coeffs)`` triples.

        Skew input with ``i > j`` is folded onto ``(j, i)`` with a sign
        change; a pair given twice (before or after folding) is an error.
        """
        table: dict[tuple[int, int], tuple] = {}
        for i, j, c in entries:
            c = tuple(field(x) for x in c)
            if skew:
                if i == j:
                    if any(c):
                        raise ShapeError(f"skew bracket [e_{i}, e_{i}] must vanish")
                    continue
                if i > j:
                    i, j, c = j, i, tuple(-x for x in c)
            if (i, j) in table:
                raise ShapeError(f"duplicate entry for pair ({i}, {j})")
            table[(i, j)] = c
        table = {k: v for k, v in sorted(table.items()) if any(v)}
        return cls(field, dim, skew, table)

    @classmethod
    def abelian(cls, field: Field, dim: int) -> "AlgebraData":
        return cls(field, dim, True, {})

    def as_dialgebra(self) -> "AlgebraData":
        """The same bracket stored as a full (non-skew) table."""
        n = self.dim
        table = {}
        for i, j in product(range(n), repeat=2):
            c = self.bracket_basis(i, j)
            if any(c):
                table[(i, j)] = c
        return AlgebraData(self.field, n, False, table)

    def opposite(self) -> "AlgebraData":
        """Algebra with bracket ``x o y = [y, x]``."""
        n = self.dim
        table = {}
        for i, j in product(range(n), repeat=2):
            c = self.bracket_basis(j, i)
            if any(c):
                table[(i, j)] = c
        return AlgebraData(self.field, n, False, table)

    # -- evaluation -------------------------------------------------------

    def basis(self, i: int) -> tuple:
        return unit_vector(self.field, self.dim, i)

    def zero(self) -> tuple:
        return zero_vector(self.field, self.dim)

    def bracket_basis(self, i: int, j: int) -> tuple:
        out = [self.field.zero] * self.dim
        for k, c in self._mult[i][j]:
            out[k] = c
        return tuple(out)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise ShapeError(f"expected vectors of length {n}")
        out = [self.field.zero] * n
        ys = [(j, b) for j, b in enumerate(y) if b]
        mult = self._mult
        for i, a in enumerate(x):
            if not a:
                continue
            row = mult[i]
            for j, b in ys:
                ab = a * b
                for k, c in row[j]:
                    out[k] = out[k] + ab * c
        return tuple(out)

    def ad(self, x) -> Matrix:
        """Matrix of ``y -> [x, y]``; ``x`` is a basis index or a vector."""
        if isinstance(x, int):
            x = self.basis(x)
        cols = [self.bracket(x, self.basis(j)) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def structure_constants(self) -> list[tuple[int, int, tuple]]:
        return [(i, j, c) for (i, j), c in sorted(self.table.items())]

    def same_as(self, other: "AlgebraData") -> bool:
        return (self.field == other.field and self.dim == other.dim
                and self.skew == other.skew and dict(self.table) == dict(other.table))


def bracket(a: AlgebraData, x: Sequence, y: Sequence) -> tuple:
    return a.bracket(x, y)


def jacobiator(a: AlgebraData, x: Sequence, y: Sequence, z: Sequence) -> tuple:
    """``[[x,y],z] + [[y,z],x] + [[z,x],y]``."""
    if not a.skew:
        raise NonSkewInput("the Jacobiator is defined for skew algebras only")
    b = a.bracket
    return vadd(vadd(b(b(x, y), z), b(b(y, z), x)), b(b(z, x), y))


def _require_skew(a: AlgebraData):
    if not a.skew:
        raise NonSkewInput("expected a skew-symmetric algebra")


def check_jacobi(a: AlgebraData) -> VerificationReport:
    _require_skew(a)
    rep = VerificationReport("jacobi")
    chk = rep.add("jacobi")
    n = a.dim
    zero = a.zero()
    for i, j, k in combinations(range(n), 3):
        chk.record((i, j, k), jacobiator(a, a.basis(i), a.basis(j), a.basis(k)), zero)
    return rep


def check_malcev(a: AlgebraData) -> VerificationReport:
    """``J(x, y, [x, z]) = [J(x, y, z), x]`` on basis triples plus polarized ``x = e_i + e_j``."""
    _require_skew(a)
    if a.field.characteristic == 2:
        raise UnsupportedField("the Malcev identity check is refused in characteristic 2; use check_sagle")
    rep = VerificationReport("malcev")
    chk = rep.add("malcev")
    n = a.dim
    b = a.bracket
    e = [a.basis(i) for i in range(n)]
    xs = [(i, e[i]) for i in range(n)]
    xs += [((i, j), vadd(e[i], e[j])) for i, j in combinations(range(n), 2)]
    for xi, x in xs:
        for yi, zi in product(range(n), repeat=2):
            y, z = e[yi], e[zi]
            lhs = jacobiator(a, x, y, b(x, z))
            rhs = b(jacobiator(a, x, y, z), x)
            chk.record((xi, yi, zi), lhs, rhs)
    return rep


def sagle_terms(a: AlgebraData, x, y, z, t) -> tuple[tuple, tuple]:
    """Both sides of ``[[x,z],[y,t]] = [[[x,y],z],t] + [[[y,z],t],x] + [[[z,t],x],y] + [[[t,x],y],z]``."""
    b = a.bracket
    lhs = b(b(x, z), b(y, t))
    rhs = b(b(b(x, y), z), t)
    rhs = vadd(rhs, b(b(b(y, z), t), x))
    rhs = vadd(rhs, b(b(b(z, t), x), y))
    rhs = vadd(rhs, b(b(b(t, x), y), z))
    return lhs, rhs


def check_sagle(a: AlgebraData) -> VerificationReport:
    _require_skew(a)
    rep = VerificationReport("sagle")
    chk = rep.add("sagle")
    n = a.dim
    b = a.bracket
    e = [a.basis(i) for i in range(n)]
    pair = [[a.bracket_basis(i, j) for j in range(n)] for i in range(n)]
    triple = [[[b(pair[i][j], e[k]) for k in range(n)] for j in range(n)] for i in range(n)]
    for x, y, z, t in product(range(n), repeat=4):
        lhs = b(pair[x][z], pair[y][t])
        rhs = b(triple[x][y][z], e[t])
        rhs = vadd(rhs, b(triple[y][z][t], e[x]))
        rhs = vadd(rhs, b(triple[z][t][x], e[y]))
        rhs = vadd(rhs, b(triple[t][x][y], e[z]))
        chk.record((x, y, z, t), lhs, rhs)
    return rep


def verify_malcev(a: AlgebraData) -> VerificationReport:
    """Malcev verification usable in every characteristic (Sagle form over F_2)."""
    if a.field.characteristic == 2:
        rep = check_sagle(a)
        rep.notes.append("characteristic 2: verified through Sagle's identity")
        return rep
    return check_malcev(a)


def is_malcev(a: AlgebraData) -> bool:
    """Cached Malcev verdict for ``a``."""
    if "malcev" not in a._cache:
        a._cache["malcev"] = a.skew and verify_malcev(a).passed
    return a._cache["malcev"]


def check_left_dialgebra(a: AlgebraData) -> VerificationReport:
    """``[[x,y]+[y,x], z] = 0`` and the five-term identity
    ``[x,[y,[z,t]]] = [y,[z,[x,t]]] + [z,[[x,y],t]] + [[x,z],[y,t]] + [[x,[y,z]],t]``."""
    rep = VerificationReport("left_dialgebra")
    sym = rep.add("right_anticommutativity")
    five = rep.add("five_term")
    f = a.field
    n = a.dim
    (c,) = exact_arrays([structure_array(a)], degree=3, summands=n * n, terms=5)
    # [[x,y] + [y,x], z]
    s = c + c.transpose(1, 0, 2)
    record_block(sym, f, np.einsum("xyk,kzc->xyzc", s, c), 3)
    # Every term is linear in t, so compare left multiplications L_u = [u, -]:
    # L_x L_y L_z = L_y L_z L_x + L_z L_[x,y] + L_[x,z] L_y + L_[x,[y,z]]
    L = c.transpose(0, 2, 1)
    LL = np.einsum("yab,zbc->yzac", L, L)
    Lpair = np.einsum("xyk,kab->xyab", c, L)
    lhs = np.einsum("xab,yzbc->xyzac", L, LL)
    rhs = np.einsum("yzab,xbc->xyzac", LL, L)
    rhs = rhs + np.einsum("zab,xybc->xyzac", L, Lpair)
    rhs = rhs + np.einsum("xzab,ybc->xyzac", Lpair, L)
    rhs = rhs + np.einsum("yzk,xkq,qab->xyzab", c, c, L)
    # residual indexed by (x, y, z, t) with the output coordinate last
    record_block(five, f, (lhs - rhs).transpose(0, 1, 2, 4, 3), 4)
    return rep


def check_right_dialgebra(a: AlgebraData) -> VerificationReport:
    """Mirror of the left axioms: ``a`` is right iff its opposite is left."""
    rep = check_left_dialgebra(a.opposite())
    rep.subject = "right_dialgebra"
    rep.notes.append("checked as the left axioms of the opposite bracket")
    return rep


def check_homomorphism(a: AlgebraData, a2: AlgebraData, phi: Matrix) -> VerificationReport:
    """``[phi x, phi y]' = phi [x, y]`` on basis pairs."""
    if phi.rows != a2.dim or phi.cols != a.dim:
        raise ShapeError(f"phi must be {a2.dim}x{a.dim}")
    rep = VerificationReport("homomorphism")
    chk = rep.add("homomorphism")
    n = a.dim
    images = [phi.column(i) for i in range(n)]
    pairs = product(range(n), repeat=2) if not a.skew else combinations(range(n), 2)
    for i, j in pairs:
        chk.record((i, j), a2.bracket(images[i], images[j]), phi.apply(a.bracket_basis(i, j)))
    return rep

