"""Coefficient objects ``(V, W, T', rho1, rho2, rho3)`` for embedding tensors
and the semidirect-product embedding tensor they define."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Optional, Sequence

from .algebra import AlgebraData
from .embedding import EmbeddingTensor, is_embedding_tensor
from .errors import InvalidEtRepresentation, NotAnEmbeddingTensor, ShapeError
from .linalg import Matrix, linear_combination, unit_vector, zero_vector
from .report import VerificationReport
from .representations import Representation, representation_law


@dataclass(frozen=True, eq=False)
class EtRepresentation:
    """``Tprime: V -> W`` (w x v), ``rho1[i]`` (v x v), ``rho2[i]`` (w x w),
    ``rho3[k]`` (v x w) for algebra basis ``e_i`` and module basis ``f_k``."""

    base: EmbeddingTensor
    dim_v: int
    dim_w: int
    Tprime: Matrix
    rho1: tuple
    rho2: tuple
    rho3: tuple
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n, m = self.base.n, self.base.m
        v, w = self.dim_v, self.dim_w
        for name in ("rho1", "rho2", "rho3"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

        def shape(mat, r, c, what):
            if (mat.rows, mat.cols) != (r, c):
                raise ShapeError(f"{what} must be {r}x{c}, got {mat.rows}x{mat.cols}")
            if mat.field != self.base.field:
                raise ShapeError(f"{what} lives over a different field")

        shape(self.Tprime, w, v, "Tprime")
        if len(self.rho1) != n or len(self.rho2) != n or len(self.rho3) != m:
            raise ShapeError("wrong number of action matrices")
        for a in self.rho1:
            shape(a, v, v, "rho1")
        for a in self.rho2:
            shape(a, w, w, "rho2")
        for a in self.rho3:
            shape(a, v, w, "rho3")

    @property
    def field(self):
        return self.base.field

    @property
    def rep1(self) -> Representation:
        return Representation(self.base.algebra, self.dim_v, self.rho1)

    @property
    def rep2(self) -> Representation:
        return Representation(self.base.algebra, self.dim_w, self.rho2)

    def r1(self, x) -> Matrix:
        return linear_combination(self.field, x, self.rho1, self.dim_v, self.dim_v)

    def r2(self, x) -> Matrix:
        return linear_combination(self.field, x, self.rho2, self.dim_w, self.dim_w)

    def r3(self, mvec) -> Matrix:
        return linear_combination(self.field, mvec, self.rho3, self.dim_v, self.dim_w)


def adjoint_et_representation(et: EmbeddingTensor) -> EtRepresentation:
    """Coefficients in the embedding tensor itself: ``V = M``, ``W = g``,
    ``T' = T``, ``rho1 = rho``, ``rho2 = ad`` and ``rho3(m)(x) = -rho(x)(m)``."""
    a, r = et.algebra, et.rep
    n, m = et.n, et.m
    f = et.field
    rho3 = []
    for k in range(m):
        fk = unit_vector(f, m, k)
        cols = [tuple(-c for c in r.act(a.basis(i), fk)) for i in range(n)]
        rho3.append(Matrix.from_columns(f, cols, m))
    return EtRepresentation(et, m, n, et.T, r.rho, tuple(a.ad(i) for i in range(n)), tuple(rho3))


def check_et_representation(er: EtRepresentation) -> VerificationReport:
    et = er.base
    if not is_embedding_tensor(et):
        raise NotAnEmbeddingTensor("the base embedding tensor failed its check")
    a, r = et.algebra, et.rep
    f = et.field
    n, m, v, w = et.n, et.m, er.dim_v, er.dim_w
    e = [a.basis(i) for i in range(n)]
    fm = [unit_vector(f, m, k) for k in range(m)]
    rep = VerificationReport("et_representation")

    for name, rr in (("rep1", er.rep1), ("rep2", er.rep2)):
        chk = rep.add(name)
        for i, j, k in product(range(n), repeat=3):
            lhs, rhs = representation_law(rr, e[i], e[j], e[k])
            chk.record((i, j, k), lhs, rhs)

    chk = rep.add("equivariance", note="T' rho1(x) = rho2(x) T'")
    Tp = er.Tprime
    for i in range(n):
        chk.record((i,), Tp @ er.rho1[i], er.rho2[i] @ Tp)

    chk = rep.add("tensor_compatibility", note="rho2(T m) T'(v) = T' rho3(m) T'(v), on the image of T'")
    for k in range(m):
        Tm = et.T.column(k)
        chk.record((k,), er.r2(Tm) @ Tp, Tp @ er.rho3[k] @ Tp)

    # The representation law for the semidirect action with one slot in W,
    # read as maps W -> V; the slot holding W names the check.
    zero = Matrix.zeros(f, v, w)
    rho = r.of
    c12 = rep.add("w_middle")
    c13 = rep.add("w_last")
    c14 = rep.add("w_first")
    for i, j, k in product(range(n), range(n), range(m)):
        x, y, mk = e[i], e[j], fm[k]
        R1x, R1y = er.rho1[i], er.rho1[j]
        R2x, R2y = er.rho2[i], er.rho2[j]
        R3m = er.rho3[k]
        rx_m = r.act(x, mk)
        ry_m = r.act(y, mk)
        xy = a.bracket(x, y)
        lhs12 = (R3m @ R2x @ R2y - R1x @ R1y @ R3m + R1y @ er.r3(rx_m)
                 + er.r3(ry_m) @ R2x + er.r3(r.act(xy, mk)))
        c12.record((i, j, k), lhs12, zero)
        lhs13 = (R3m @ er.r2(xy) - R1x @ R1y @ R3m + er.r3(rho(x).apply(ry_m))
                 + R1y @ R3m @ R2x + er.r3(rx_m) @ R2y)
        c13.record((i, j, k), lhs13, zero)
        lhs14 = (R3m @ R2x @ R2y - er.r3(rho(y).apply(rx_m)) + R1x @ er.r3(ry_m)
                 - R1y @ R3m @ R2x + er.r1(a.bracket(y, x)) @ R3m)
        c14.record((i, j, k), lhs14, zero)
    return rep


def is_et_representation(er: EtRepresentation) -> bool:
    if "etrep" not in er._cache:
        er._cache["etrep"] = is_embedding_tensor(er.base) and check_et_representation(er).passed
    return er._cache["etrep"]


def twisted_semidirect(er: EtRepresentation,
                       theta: Optional[Matrix] = None,
                       omega: Optional[Mapping[tuple[int, int], Sequence]] = None,
                       nu: Optional[Sequence[Matrix]] = None) -> EmbeddingTensor:
    """Embedding-tensor data on ``(M + V, g + W)``:

    ``That(m+v) = T m + theta(m) + T' v``,
    ``[x+w, y+w'] = [x,y] + omega(x,y) + rho2(x)w' - rho2(y)w``,
    ``rhohat(x+w)(m+v) = rho(x)m + nu(x,m) + rho1(x)v - rho3(m)w``.

    With all twists absent this is the plain semidirect product.  The result
    is not verified here.
    """
    et = er.base
    a, r = et.algebra, et.rep
    f = et.field
    n, m, v, w = et.n, et.m, er.dim_v, er.dim_w
    theta = theta if theta is not None else Matrix.zeros(f, w, m)
    omega = omega or {}
    nu = tuple(nu) if nu is not None else tuple(Matrix.zeros(f, v, m) for _ in range(n))

    entries = []
    for i in range(n):
        for j in range(i + 1, n):
            g = a.bracket_basis(i, j)
            tw = tuple(omega.get((i, j), zero_vector(f, w)))
            if any(g) or any(tw):
                entries.append((i, j, g + tw))
        for b in range(w):
            col = er.rho2[i].column(b)
            if any(col):
                entries.append((i, n + b, zero_vector(f, n) + col))
    ghat = AlgebraData.from_constants(f, n + w, entries)

    zvm = Matrix.zeros(f, m, v)
    rho_hat = []
    for i in range(n):
        rho_hat.append(Matrix.block(f, [[r.rho[i], zvm], [nu[i], er.rho1[i]]]))
    for b in range(w):
        # column f_k -> (0, -rho3(f_k) w_b); V columns vanish
        cols = [zero_vector(f, m) + tuple(-c for c in er.rho3[k].column(b)) for k in range(m)]
        cols += [zero_vector(f, m + v) for _ in range(v)]
        rho_hat.append(Matrix.from_columns(f, cols, m + v))
    rep_hat = Representation(ghat, m + v, tuple(rho_hat))
    T_hat = Matrix.block(f, [[et.T, Matrix.zeros(f, n, v)], [theta, er.Tprime]])
    return EmbeddingTensor(rep_hat, T_hat)


def semidirect_et(er: EtRepresentation) -> EmbeddingTensor:
    if not is_et_representation(er):
        raise InvalidEtRepresentation("coefficient data failed check_et_representation")
    return twisted_semidirect(er)
