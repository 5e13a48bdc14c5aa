"""Degree-2 cochains with coefficients in an ET-representation: cocycle
conditions, the coboundary map, H^2, and the dictionary between cocycles and
abelian extensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, Optional

from .embedding import EmbeddingTensor, is_embedding_tensor
from .errors import (IllTypedFormula, InternalInconsistency, InvalidSplitting, NotACocycle,
                     ShapeError)
from .etrep import EtRepresentation, twisted_semidirect
from .linalg import (Field, Matrix, kernel_basis, rank, rref, solve, unit_vector, vadd, vsub,
                     zero_vector)
from .report import VerificationReport


def index_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def cochain_dim(n: int, m: int, v: int, w: int) -> int:
    return w * m + w * n * (n - 1) // 2 + v * n * m


def _coerce_matrix(f: Field, mat: Matrix, rows: int, cols: int, what: str) -> Matrix:
    if (mat.rows, mat.cols) != (rows, cols):
        raise ShapeError(f"{what} must be {rows}x{cols}, got {mat.rows}x{mat.cols}")
    if mat.field != f:
        raise ShapeError(f"{what} lives over a different field")
    return mat


@dataclass(frozen=True, eq=False)
class TwoCochain:
    """``theta: M -> W`` (w x m), ``omega[(i, j)]`` for ``i < j`` (a w-vector)
    and ``nu[i] = nu(e_i, -): M -> V`` (v x m)."""

    field: Field
    n: int
    m: int
    v: int
    w: int
    theta: Matrix
    omega: dict
    nu: tuple
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        f, n, m, v, w = self.field, self.n, self.m, self.v, self.w
        _coerce_matrix(f, self.theta, w, m, "theta")
        nu = tuple(self.nu)
        if len(nu) != n:
            raise ShapeError(f"nu needs {n} matrices, got {len(nu)}")
        for mat in nu:
            _coerce_matrix(f, mat, v, m, "nu")
        object.__setattr__(self, "nu", nu)
        omega = {}
        for key, vec in dict(self.omega).items():
            i, j = key
            if not (0 <= i < j < n):
                raise ShapeError(f"omega key {key} must satisfy 0 <= i < j < {n}")
            vec = tuple(f(c) for c in vec)
            if len(vec) != w:
                raise ShapeError(f"omega values must have length {w}")
            omega[(i, j)] = vec
        for key in index_pairs(n):
            omega.setdefault(key, zero_vector(f, w))
        object.__setattr__(self, "omega", dict(sorted(omega.items())))

    @classmethod
    def zero(cls, field: Field, n: int, m: int, v: int, w: int) -> "TwoCochain":
        return cls(field, n, m, v, w, Matrix.zeros(field, w, m), {},
                   tuple(Matrix.zeros(field, v, m) for _ in range(n)))

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return (self.n, self.m, self.v, self.w)

    def omega_at(self, i: int, j: int) -> tuple:
        if i == j:
            return zero_vector(self.field, self.w)
        if i < j:
            return self.omega[(i, j)]
        return tuple(-c for c in self.omega[(j, i)])

    def _table(self) -> list:
        t = self._cache.get("table")
        if t is None:
            t = [[self.omega_at(i, j) for j in range(self.n)] for i in range(self.n)]
            self._cache["table"] = t
        return t

    def omega_eval(self, x, y) -> tuple:
        """Bilinear skew extension of ``omega`` to arbitrary vectors."""
        t = self._table()
        acc = [self.field.zero] * self.w
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = t[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, val in enumerate(row[j]):
                    if val:
                        acc[k] = acc[k] + c * val
        return tuple(acc)

    def nu_apply(self, x, mvec) -> tuple:
        acc = zero_vector(self.field, self.v)
        for xi, mat in zip(x, self.nu):
            if xi:
                acc = vadd(acc, tuple(xi * c for c in mat.apply(mvec)))
        return acc

    def coordinates(self) -> tuple:
        """theta row-major, then omega over ``i < j`` lexicographically, then
        nu by ``(i, column, row)``."""
        out = list(self.theta.flat())
        for key in index_pairs(self.n):
            out.extend(self.omega[key])
        for mat in self.nu:
            for c in range(self.m):
                out.extend(mat.column(c))
        return tuple(out)

    @classmethod
    def from_coordinates(cls, field: Field, dims, coords) -> "TwoCochain":
        n, m, v, w = dims
        coords = list(coords)
        if len(coords) != cochain_dim(n, m, v, w):
            raise ShapeError("coordinate vector has the wrong length")
        pos = 0
        theta = Matrix.from_rows(field, [coords[r * m:(r + 1) * m] for r in range(w)], m)
        pos = w * m
        omega = {}
        for key in index_pairs(n):
            omega[key] = coords[pos:pos + w]
            pos += w
        nu = []
        for _ in range(n):
            cols = []
            for _c in range(m):
                cols.append(coords[pos:pos + v])
                pos += v
            nu.append(Matrix.from_columns(field, cols, v) if m else Matrix.zeros(field, v, 0))
        return cls(field, n, m, v, w, theta, omega, tuple(nu))

    def _combine(self, other: "TwoCochain", sign: int) -> "TwoCochain":
        if self.dims != other.dims or self.field != other.field:
            raise ShapeError("cochains have different shapes")
        a, b = self.coordinates(), other.coordinates()
        return TwoCochain.from_coordinates(self.field, self.dims,
                                           [x + sign * y for x, y in zip(a, b)])

    def __add__(self, other: "TwoCochain") -> "TwoCochain":
        return self._combine(other, 1)

    def __sub__(self, other: "TwoCochain") -> "TwoCochain":
        return self._combine(other, -1)

    def scale(self, c) -> "TwoCochain":
        c = self.field(c)
        return TwoCochain.from_coordinates(self.field, self.dims, [c * x for x in self.coordinates()])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwoCochain):
            return NotImplemented
        return (self.field == other.field and self.dims == other.dims
                and self.coordinates() == other.coordinates())

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.coordinates())


@dataclass(frozen=True, eq=False)
class OneCochain:
    """``b0: M -> V`` (v x m) and ``b1: g -> W`` (w x n)."""

    field: Field
    n: int
    m: int
    v: int
    w: int
    b0: Matrix
    b1: Matrix

    def __post_init__(self):
        _coerce_matrix(self.field, self.b0, self.v, self.m, "b0")
        _coerce_matrix(self.field, self.b1, self.w, self.n, "b1")

    @classmethod
    def zero(cls, field: Field, n: int, m: int, v: int, w: int) -> "OneCochain":
        return cls(field, n, m, v, w, Matrix.zeros(field, v, m), Matrix.zeros(field, w, n))

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return (self.n, self.m, self.v, self.w)

    def coordinates(self) -> tuple:
        return self.b0.flat() + self.b1.flat()

    @classmethod
    def from_coordinates(cls, field: Field, dims, coords) -> "OneCochain":
        n, m, v, w = dims
        coords = list(coords)
        if len(coords) != v * m + w * n:
            raise ShapeError("coordinate vector has the wrong length")
        b0 = Matrix.from_rows(field, [coords[r * m:(r + 1) * m] for r in range(v)], m)
        off = v * m
        b1 = Matrix.from_rows(field, [coords[off + r * n:off + (r + 1) * n] for r in range(w)], n)
        return cls(field, n, m, v, w, b0, b1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OneCochain):
            return NotImplemented
        return (self.field == other.field and self.dims == other.dims
                and self.coordinates() == other.coordinates())

    __hash__ = None


def ambient_dims(et: EmbeddingTensor, er: EtRepresentation) -> tuple[int, int, int, int]:
    return (et.n, et.m, er.dim_v, er.dim_w)


def _require_shape(et, er, c):
    if er.base is not et and not (er.base.rep.same_as(et.rep) and er.base.T == et.T):
        raise ShapeError("the ET-representation is attached to a different embedding tensor")
    if c.dims != ambient_dims(et, er) or c.field != et.field:
        raise ShapeError(f"cochain dims {c.dims} do not match {ambient_dims(et, er)}")


class _Context:
    """Structure data of ``(et, er)`` evaluated once on basis elements."""

    def __init__(self, et: EmbeddingTensor, er: EtRepresentation):
        a, r = et.algebra, et.rep
        f = et.field
        n, m = et.n, et.m
        self.field = f
        self.n, self.m, self.v, self.w = n, m, er.dim_v, er.dim_w
        self.er = er
        self.e = [a.basis(i) for i in range(n)]
        self.fm = [unit_vector(f, m, k) for k in range(m)]
        self.br = [[a.bracket_basis(i, j) for j in range(n)] for i in range(n)]
        self.br3 = [[[a.bracket(self.br[i][j], self.e[k]) for k in range(n)]
                     for j in range(n)] for i in range(n)]
        self.R2br = [[er.r2(self.br[i][j]) for j in range(n)] for i in range(n)]
        self.R1br = [[er.r1(self.br[i][j]) for j in range(n)] for i in range(n)]
        self.Tcol = et.T.columns()
        self.R2T = [er.r2(t) for t in self.Tcol]
        self.rhoT = [r.of(t) for t in self.Tcol]
        # rho(e_i) f_k, rho(e_i) rho(e_j) f_k, rho([e_i, e_j]) f_k
        self.rf = [[r.rho[i].column(k) for k in range(m)] for i in range(n)]
        self.rrf = [[[r.rho[i].apply(self.rf[j][k]) for k in range(m)] for j in range(n)]
                    for i in range(n)]
        self.rbf = [[[r.act(self.br[i][j], self.fm[k]) for k in range(m)] for j in range(n)]
                    for i in range(n)]
        self.R3rf = [[er.r3(self.rf[i][k]) for k in range(m)] for i in range(n)]


def _context(et, er) -> _Context:
    ctx = er._cache.get("cohomology_context")
    if ctx is None:
        ctx = _Context(et, er)
        er._cache["cohomology_context"] = ctx
    return ctx


def _tensor_residuals(ctx: _Context, z: TwoCochain) -> Iterator[tuple[tuple, tuple]]:
    er = ctx.er
    Tp = er.Tprime
    th = z.theta
    for k, l in product(range(ctx.m), repeat=2):
        thk, thl = th.column(k), th.column(l)
        res = vsub(ctx.R2T[k].apply(thl), ctx.R2T[l].apply(thk))
        res = vadd(res, z.omega_eval(ctx.Tcol[k], ctx.Tcol[l]))
        res = vsub(res, Tp.apply(z.nu_apply(ctx.Tcol[k], ctx.fm[l])))
        res = vsub(res, th.apply(ctx.rhoT[k].column(l)))
        res = vadd(res, Tp.apply(er.rho3[l].apply(thk)))
        yield (k, l), res


def _bracket_residuals(ctx: _Context, z: TwoCochain, strict: bool) -> Iterator[tuple[tuple, tuple]]:
    er = ctx.er
    n = ctx.n
    E = ctx.e
    om = z.omega_at
    ev = z.omega_eval
    R2 = er.rho2
    for a, b, c, d in product(range(n), repeat=4):
        res = ev(ctx.br[a][c], ctx.br[b][d])
        res = vadd(res, ctx.R2br[a][c].apply(om(b, d)))
        res = vsub(res, ctx.R2br[b][d].apply(om(a, c)))
        for pos, (p, q, r, s) in enumerate(((a, b, c, d), (b, c, d, a), (c, d, a, b), (d, a, b, c))):
            if strict and pos == 2:
                # literal variant with the last two arguments of the first term swapped
                first = ev(ctx.br3[p][q][s], E[r])
            else:
                first = ev(ctx.br3[p][q][r], E[s])
            term = vsub(first, R2[s].apply(ev(ctx.br[p][q], E[r])))
            term = vadd(term, R2[s].apply(R2[r].apply(om(p, q))))
            res = vsub(res, term)
        yield (a, b, c, d), res


def _action_residuals(ctx: _Context, z: TwoCochain) -> Iterator[tuple[tuple, tuple]]:
    er = ctx.er
    n, m = ctx.n, ctx.m
    E, F = ctx.e, ctx.fm
    R1, R3 = er.rho1, er.rho3
    nu = z.nu
    om = z.omega_at
    ev = z.omega_eval
    for x, y, zz, k in product(range(n), range(n), range(n), range(m)):
        fk = F[k]
        lhs = z.nu_apply(ctx.br3[x][y][zz], fk)
        lhs = vsub(lhs, R3[k].apply(ev(ctx.br[x][y], E[zz])))
        lhs = vadd(lhs, R3[k].apply(er.rho2[zz].apply(om(x, y))))

        rhs = nu[x].apply(ctx.rrf[y][zz][k])
        rhs = vadd(rhs, R1[x].apply(nu[y].apply(ctx.rf[zz][k])))
        rhs = vadd(rhs, R1[x].apply(R1[y].apply(nu[zz].column(k))))
        rhs = vsub(rhs, nu[zz].apply(ctx.rrf[x][y][k]))
        rhs = vsub(rhs, R1[zz].apply(nu[x].apply(ctx.rf[y][k])))
        rhs = vsub(rhs, R1[zz].apply(R1[x].apply(nu[y].column(k))))
        rhs = vadd(rhs, nu[y].apply(ctx.rbf[zz][x][k]))
        rhs = vadd(rhs, R1[y].apply(z.nu_apply(ctx.br[zz][x], fk)))
        rhs = vsub(rhs, R1[y].apply(R3[k].apply(om(zz, x))))
        rhs = vsub(rhs, z.nu_apply(ctx.br[y][zz], ctx.rf[x][k]))
        rhs = vsub(rhs, ctx.R1br[y][zz].apply(nu[x].column(k)))
        rhs = vadd(rhs, ctx.R3rf[x][k].apply(om(y, zz)))
        yield (x, y, zz, k), vsub(lhs, rhs)


_GROUPS = ("tensor", "bracket", "action")


def _residuals(ctx, z, strict):
    yield "tensor", _tensor_residuals(ctx, z)
    yield "bracket", _bracket_residuals(ctx, z, strict)
    yield "action", _action_residuals(ctx, z)


def is_cocycle(et: EmbeddingTensor, er: EtRepresentation, z: TwoCochain,
               strict_printed: bool = False) -> VerificationReport:
    """The three cocycle conditions, on basis pairs of M (tensor), basis
    quadruples of g (bracket) and basis triples of g with a basis vector of M
    (action).  Each residual must vanish."""
    _require_shape(et, er, z)
    ctx = _context(et, er)
    rep = VerificationReport("cocycle")
    if strict_printed:
        rep.notes.append("bracket condition uses the alternative Sagle term order (--strict-printed)")
    for name, it in _residuals(ctx, z, strict_printed):
        chk = rep.add(name)
        for idx, res in it:
            chk.record(idx, res, zero_vector(et.field, len(res)))
    return rep


def coboundary(et: EmbeddingTensor, er: EtRepresentation, b: OneCochain,
               strict_printed: bool = False) -> TwoCochain:
    """``D(b0, b1)``:

    ``theta = T' b0 - b1 T``,
    ``omega(x, y) = rho2(x) b1(y) - rho2(y) b1(x) - b1([x, y])``,
    ``nu(x, m) = rho1(x) b0(m) - rho3(m) b1(x) - b0(rho(x) m)``.

    With ``strict_printed`` the literal variants are used: ``rho1`` in place of
    ``rho2`` in the omega part, and ``rho2(m)`` in place of ``rho3(m)`` in the nu
    part.  Those only make sense when the dimensions happen to coincide;
    otherwise IllTypedFormula is raised.
    """
    _require_shape(et, er, b)
    f = et.field
    a, r = et.algebra, et.rep
    n, m, v, w = ambient_dims(et, er)
    if strict_printed:
        if v != w:
            raise IllTypedFormula(f"rho1 acts on V (dim {v}) but is applied to W (dim {w})")
        if m != n:
            raise IllTypedFormula(f"rho2(m) needs m in g: dim M = {m}, dim g = {n}")
    theta = er.Tprime @ b.b0 - b.b1 @ et.T
    act = er.rho1 if strict_printed else er.rho2
    cols = b.b1.columns()
    omega = {}
    for i, j in index_pairs(n):
        val = vsub(act[i].apply(cols[j]), act[j].apply(cols[i]))
        omega[(i, j)] = vsub(val, b.b1.apply(a.bracket_basis(i, j)))
    nu = []
    for i in range(n):
        mat = er.rho1[i] @ b.b0 - b.b0 @ r.rho[i]
        corr = []
        for k in range(m):
            if strict_printed:
                corr.append(er.r2(unit_vector(f, n, k)).apply(cols[i]))
            else:
                corr.append(er.rho3[k].apply(cols[i]))
        nu.append(mat - Matrix.from_columns(f, corr, v) if m else mat)
    return TwoCochain(f, n, m, v, w, theta, omega, tuple(nu))


def _unit_one_cochains(et, er):
    dims = ambient_dims(et, er)
    n, m, v, w = dims
    total = v * m + w * n
    for k in range(total):
        yield OneCochain.from_coordinates(et.field, dims, unit_vector(et.field, total, k))


def coboundary_matrix(et: EmbeddingTensor, er: EtRepresentation,
                      strict_printed: bool = False) -> Matrix:
    """Matrix of D from 1-cochain coordinates to 2-cochain coordinates."""
    n, m, v, w = ambient_dims(et, er)
    cols = [coboundary(et, er, b, strict_printed).coordinates() for b in _unit_one_cochains(et, er)]
    return Matrix.from_columns(et.field, cols, cochain_dim(n, m, v, w)) if cols \
        else Matrix.zeros(et.field, cochain_dim(n, m, v, w), 0)


def cocycle_matrix(et: EmbeddingTensor, er: EtRepresentation,
                   strict_printed: bool = False) -> Matrix:
    """All cocycle residuals stacked, as a linear map on cochain coordinates."""
    key = ("cocycle_matrix", strict_printed)
    if key in er._cache:
        return er._cache[key]
    dims = ambient_dims(et, er)
    f = et.field
    total = cochain_dim(*dims)
    ctx = _context(et, er)
    cols = []
    for k in range(total):
        z = TwoCochain.from_coordinates(f, dims, unit_vector(f, total, k))
        col = []
        for _name, it in _residuals(ctx, z, strict_printed):
            for _idx, res in it:
                col.extend(res)
        cols.append(col)
    if cols:
        mat = Matrix.from_columns(f, cols, len(cols[0]))
    else:
        mat = Matrix.zeros(f, 0, 0)
    er._cache[key] = mat
    return mat


def cocycle_space(et: EmbeddingTensor, er: EtRepresentation,
                  strict_printed: bool = False) -> list[TwoCochain]:
    dims = ambient_dims(et, er)
    total = cochain_dim(*dims)
    if total == 0:
        return []
    mat = cocycle_matrix(et, er, strict_printed)
    if mat.rows == 0:
        basis = [unit_vector(et.field, total, k) for k in range(total)]
    else:
        basis = kernel_basis(mat)
    return [TwoCochain.from_coordinates(et.field, dims, vec) for vec in basis]


@dataclass
class H2Result:
    dims: tuple
    cochain_dim: int
    cocycle_dim: int
    coboundary_rank: Optional[int]
    dim: Optional[int]
    representatives: list
    contained: Optional[bool]
    strict_printed: bool = False
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        n, m, v, w = self.dims
        return {
            "dims": {"n": n, "m": m, "v": v, "w": w},
            "cochain_dim": self.cochain_dim,
            "cocycle_dim": self.cocycle_dim,
            "coboundary_rank": self.coboundary_rank,
            "dim_h2": self.dim,
            "coboundaries_are_cocycles": self.contained,
            "strict_printed": self.strict_printed,
            "representatives": [list(map(str, z.coordinates())) for z in self.representatives],
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        lines = []
        if self.dim is None:
            lines.append("dim H2 = undefined")
        else:
            lines.append(f"dim H2 = {self.dim}")
        lines.append(f"  cochains: {self.cochain_dim}, cocycles: {self.cocycle_dim}, "
                     f"coboundary rank: {self.coboundary_rank if self.coboundary_rank is not None else 'n/a'}")
        state = {True: "yes", False: "NO", None: "n/a"}[self.contained]
        lines.append(f"  coboundaries are cocycles: {state}")
        if self.strict_printed:
            lines.append("  mode: alternative formulas (--strict-printed)")
        for z in self.representatives:
            lines.append("  representative: [" + ", ".join(map(str, z.coordinates())) + "]")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


def h2(et: EmbeddingTensor, er: EtRepresentation, strict_printed: bool = False) -> H2Result:
    """``dim H^2 = dim Z^2 - rank D`` with representatives completing a basis of
    ``im D`` inside ``Z^2``.

    In the default mode a coboundary that fails a cocycle condition raises
    InternalInconsistency.  With ``strict_printed`` the failure is reported in
    the result instead, and ill-typed literal formulas are reported as such.
    """
    dims = ambient_dims(et, er)
    f = et.field
    total = cochain_dim(*dims)
    zbasis = cocycle_space(et, er, strict_printed)
    res = H2Result(dims, total, len(zbasis), None, None, [], None, strict_printed)
    try:
        dmat = coboundary_matrix(et, er, strict_printed)
    except IllTypedFormula as exc:
        res.notes.append(f"coboundary formula is ill-typed here: {exc}")
        return res
    dcols = [c for c in dmat.columns() if any(c)]
    cmat = cocycle_matrix(et, er, strict_printed)
    bad = [k for k, c in enumerate(dmat.columns()) if cmat.rows and any(cmat.apply(c))]
    res.contained = not bad
    if bad:
        msg = f"{len(bad)} of {dmat.cols} unit coboundaries fail the cocycle conditions"
        if not strict_printed:
            raise InternalInconsistency(msg)
        res.notes.append(msg)
        return res
    if total == 0:
        res.coboundary_rank = 0
        res.dim = 0
        return res
    combined = Matrix.from_columns(f, dcols + [z.coordinates() for z in zbasis], total) \
        if dcols or zbasis else Matrix.zeros(f, total, 0)
    _, rk, pivots = rref(combined)
    rank_d = sum(1 for p in pivots if p < len(dcols))
    res.coboundary_rank = rank_d
    res.representatives = [zbasis[p - len(dcols)] for p in pivots if p >= len(dcols)]
    res.dim = len(res.representatives)
    if res.dim != len(zbasis) - rank_d:
        raise InternalInconsistency("rank bookkeeping disagrees")
    return res


@dataclass(frozen=True, eq=False)
class Extension:
    """``0 -> (V, W) -> (Mhat, ghat) -> (M, g) -> 0`` as injection and projection matrices."""

    base: EmbeddingTensor
    hat: EmbeddingTensor
    i0: Matrix
    i1: Matrix
    p0: Matrix
    p1: Matrix

    def __post_init__(self):
        mh, gh = self.hat.m, self.hat.n
        if self.i0.rows != mh or self.p0.cols != mh or self.p0.rows != self.base.m:
            raise ShapeError("module-level maps have inconsistent shapes")
        if self.i1.rows != gh or self.p1.cols != gh or self.p1.rows != self.base.n:
            raise ShapeError("algebra-level maps have inconsistent shapes")

    @property
    def dim_v(self) -> int:
        return self.i0.cols

    @property
    def dim_w(self) -> int:
        return self.i1.cols


@dataclass(frozen=True)
class Splitting:
    sigma0: Matrix
    sigma1: Matrix


def extension_from_cocycle(et: EmbeddingTensor, er: EtRepresentation, z: TwoCochain) -> Extension:
    if not is_cocycle(et, er, z).passed:
        raise NotACocycle("the cochain fails the cocycle conditions")
    hat = twisted_semidirect(er, z.theta, z.omega, z.nu)
    f = et.field
    n, m, v, w = ambient_dims(et, er)
    i0 = Matrix.block(f, [[Matrix.zeros(f, m, v)], [Matrix.identity(f, v)]])
    i1 = Matrix.block(f, [[Matrix.zeros(f, n, w)], [Matrix.identity(f, w)]])
    p0 = Matrix.block(f, [[Matrix.identity(f, m), Matrix.zeros(f, m, v)]])
    p1 = Matrix.block(f, [[Matrix.identity(f, n), Matrix.zeros(f, n, w)]])
    return Extension(et, hat, i0, i1, p0, p1)


def check_extension(ext: Extension) -> VerificationReport:
    """Exactness at both levels, the projection being a morphism of
    embedding-tensor data, and the kernel carrying zero bracket and action."""
    base, hat = ext.base, ext.hat
    f = base.field
    rep = VerificationReport("extension")
    rep.add("hat_valid", note="Malcev algebra, representation and embedding tensor").record(
        (), is_embedding_tensor(hat), True)
    for lvl, i, p in (("module", ext.i0, ext.p0), ("algebra", ext.i1, ext.p1)):
        c = rep.add(f"{lvl}_exact")
        c.record(("injective",), rank(i), i.cols)
        c.record(("surjective",), rank(p), p.rows)
        c.record(("p.i",), (p @ i).is_zero(), True)
        c.record(("dims",), i.cols + p.rows, i.rows)
    ah, rh = hat.algebra, hat.rep
    P0, P1 = ext.p0, ext.p1
    c = rep.add("projection_bracket")
    for a, b in product(range(hat.n), repeat=2):
        c.record((a, b), P1.apply(ah.bracket_basis(a, b)),
                 base.algebra.bracket(P1.column(a), P1.column(b)))
    c = rep.add("projection_action")
    for a, k in product(range(hat.n), range(hat.m)):
        c.record((a, k), P0.apply(rh.rho[a].column(k)),
                 base.rep.act(P1.column(a), P0.column(k)))
    c = rep.add("projection_tensor")
    c.record((), P1 @ hat.T, base.T @ P0)
    c = rep.add("kernel_abelian")
    wcols, vcols = ext.i1.columns(), ext.i0.columns()
    for a, b in product(range(ext.dim_w), repeat=2):
        c.record(("bracket", a, b), ah.bracket(wcols[a], wcols[b]), zero_vector(f, hat.n))
    for a, k in product(range(ext.dim_w), range(ext.dim_v)):
        c.record(("action", a, k), rh.act(wcols[a], vcols[k]), zero_vector(f, hat.m))
    return rep


def canonical_splitting(ext: Extension) -> Splitting:
    """Right inverses of the projections chosen by the solver (free variables zero)."""
    f = ext.base.field
    cols0 = [solve(ext.p0, unit_vector(f, ext.base.m, k)) for k in range(ext.base.m)]
    cols1 = [solve(ext.p1, unit_vector(f, ext.base.n, k)) for k in range(ext.base.n)]
    if any(c is None for c in cols0 + cols1):
        raise InvalidSplitting("projection is not surjective")
    s0 = Matrix.from_columns(f, cols0, ext.hat.m) if cols0 else Matrix.zeros(f, ext.hat.m, 0)
    s1 = Matrix.from_columns(f, cols1, ext.hat.n) if cols1 else Matrix.zeros(f, ext.hat.n, 0)
    return Splitting(s0, s1)


def _validate_splitting(ext: Extension, s: Splitting):
    f = ext.base.field
    if (s.sigma0.rows, s.sigma0.cols) != (ext.hat.m, ext.base.m) or \
            (s.sigma1.rows, s.sigma1.cols) != (ext.hat.n, ext.base.n):
        raise InvalidSplitting("splitting maps have the wrong shape")
    if ext.p0 @ s.sigma0 != Matrix.identity(f, ext.base.m):
        raise InvalidSplitting("p0 . sigma0 is not the identity")
    if ext.p1 @ s.sigma1 != Matrix.identity(f, ext.base.n):
        raise InvalidSplitting("p1 . sigma1 is not the identity")


def _pull_back(inj: Matrix, vec, what: str) -> tuple:
    out = solve(inj, vec)
    if out is None:
        raise InvalidSplitting(f"{what} does not land in the kernel")
    return out


def cocycle_from_splitting(ext: Extension, s: Splitting) -> TwoCochain:
    """``theta(m) = That s0(m) - s1(T m)``, ``omega(x, y) = [s1 x, s1 y] - s1[x, y]``,
    ``nu(x, m) = rhohat(s1 x) s0(m) - s0(rho(x) m)``, read back through the injections."""
    _validate_splitting(ext, s)
    base, hat = ext.base, ext.hat
    f = base.field
    n, m, v, w = base.n, base.m, ext.dim_v, ext.dim_w
    S0, S1 = s.sigma0, s.sigma1
    Tcols = base.T.columns()
    theta_cols = []
    for k in range(m):
        val = vsub(hat.T.apply(S0.column(k)), S1.apply(Tcols[k]))
        theta_cols.append(_pull_back(ext.i1, val, "theta"))
    theta = Matrix.from_columns(f, theta_cols, w) if m else Matrix.zeros(f, w, 0)
    omega = {}
    for i, j in index_pairs(n):
        val = vsub(hat.algebra.bracket(S1.column(i), S1.column(j)),
                   S1.apply(base.algebra.bracket_basis(i, j)))
        omega[(i, j)] = _pull_back(ext.i1, val, "omega")
    nu = []
    for i in range(n):
        act = hat.rep.of(S1.column(i))
        cols = []
        for k in range(m):
            val = vsub(act.apply(S0.column(k)), S0.apply(base.rep.rho[i].column(k)))
            cols.append(_pull_back(ext.i0, val, "nu"))
        nu.append(Matrix.from_columns(f, cols, v) if m else Matrix.zeros(f, v, 0))
    return TwoCochain(f, n, m, v, w, theta, omega, tuple(nu))


def induced_et_representation(ext: Extension, s: Splitting) -> EtRepresentation:
    """The coefficient data an extension induces on its kernel via a splitting:
    ``T' = That`` restricted, ``rho1(x) = rhohat(s1 x)``, ``rho2(x) = [s1 x, -]``,
    ``rho3(m)(w) = -rhohat(w)(s0 m)``."""
    _validate_splitting(ext, s)
    base, hat = ext.base, ext.hat
    f = base.field
    n, m, v, w = base.n, base.m, ext.dim_v, ext.dim_w
    I0, I1 = ext.i0, ext.i1
    vcols, wcols = I0.columns(), I1.columns()

    def mat(cols, rows, inj, what):
        return Matrix.from_columns(f, [_pull_back(inj, c, what) for c in cols], rows) \
            if cols else Matrix.zeros(f, rows, 0)

    Tp = mat([hat.T.apply(c) for c in vcols], w, I1, "T'")
    rho1, rho2 = [], []
    for i in range(n):
        x = s.sigma1.column(i)
        act = hat.rep.of(x)
        rho1.append(mat([act.apply(c) for c in vcols], v, I0, "rho1"))
        rho2.append(mat([hat.algebra.bracket(x, c) for c in wcols], w, I1, "rho2"))
    rho3 = []
    for k in range(m):
        sm = s.sigma0.column(k)
        rho3.append(mat([tuple(-c for c in hat.rep.act(wc, sm)) for wc in wcols], v, I0, "rho3"))
    return EtRepresentation(base, v, w, Tp, tuple(rho1), tuple(rho2), tuple(rho3))


def extensions_equivalent(et: EmbeddingTensor, er: EtRepresentation,
                          z1: TwoCochain, z2: TwoCochain) -> Optional[OneCochain]:
    """A 1-cochain ``b`` with ``D(b) = z1 - z2``, or None if none exists."""
    for z in (z1, z2):
        if not is_cocycle(et, er, z).passed:
            raise NotACocycle("both inputs must be cocycles")
    dims = ambient_dims(et, er)
    diff = (z1 - z2).coordinates()
    dmat = coboundary_matrix(et, er)
    if dmat.cols == 0:
        return OneCochain.zero(et.field, *dims) if not any(diff) else None
    sol = solve(dmat, diff)
    if sol is None:
        return None
    return OneCochain.from_coordinates(et.field, dims, sol)
