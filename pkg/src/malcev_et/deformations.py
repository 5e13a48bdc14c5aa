"""Deformations of an embedding tensor: the first-order conditions, formal
deformations of any order, Nijenhuis pairs and trivial deformations, and
rigidity through adjoint-coefficient H^2.

A deformation replaces ``(T, [,], rho)`` by ``T + l*theta``, ``[,] + l*omega``
and ``rho + l*nu`` (or by power series in ``l``).  The parameter ``l`` is
purely formal: every identity is checked coefficientwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .cohomology import OneCochain, TwoCochain, coboundary, h2, index_pairs
from .embedding import EmbeddingTensor
from .errors import NotACocycle, NotNijenhuis, ShapeError
from .etrep import adjoint_et_representation
from .linalg import Matrix, column_space_basis, linear_combination, unit_vector, vadd, vsub, zero_vector
from .report import VerificationReport
from .tensors import exact_arrays, matrices_array, matrix_array, record_block, table_array, zeros

DeformationTriple = TwoCochain


def triple_dims(et: EmbeddingTensor) -> tuple[int, int, int, int]:
    """Cochain dims for adjoint coefficients: ``V = M`` and ``W = g``."""
    return (et.n, et.m, et.m, et.n)


def zero_triple(et: EmbeddingTensor) -> DeformationTriple:
    return TwoCochain.zero(et.field, *triple_dims(et))


def _require_triple(et: EmbeddingTensor, d: TwoCochain):
    if d.dims != triple_dims(et) or d.field != et.field:
        raise ShapeError(f"deformation triple dims {d.dims} do not match {triple_dims(et)}")


@dataclass(frozen=True)
class NijenhuisPair:
    N0: Matrix
    N1: Matrix

    def check_shape(self, et: EmbeddingTensor):
        if (self.N0.rows, self.N0.cols) != (et.m, et.m) or (self.N1.rows, self.N1.cols) != (et.n, et.n):
            raise ShapeError("N0 must be m x m and N1 must be n x n")
        if self.N0.field != et.field or self.N1.field != et.field:
            raise ShapeError("Nijenhuis pair lives over a different field")


@dataclass(frozen=True)
class FormalDeformation:
    """Terms ``1..L``; term 0 is the base structure."""

    order: int
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if self.order < 0 or len(self.terms) != self.order:
            raise ShapeError(f"expected {self.order} terms, got {len(self.terms)}")


class DeformationReport(VerificationReport):
    """Checks named ``"order<k>.<kind>"``."""

    def group_passed(self, order: int) -> bool:
        prefix = f"order{order}."
        return all(c.passed for c in self.checks if c.name.startswith(prefix))

    def group_verdicts(self, order: int) -> dict[str, bool]:
        prefix = f"order{order}."
        return {c.name[len(prefix):]: c.passed for c in self.checks if c.name.startswith(prefix)}


def _cyclic(x, y, z, t):
    return ((x, y, z, t), (y, z, t, x), (z, t, x, y), (t, x, y, z))


def check_first_order(et: EmbeddingTensor, d: DeformationTriple,
                      orders: Sequence[int] = (1, 2, 3)) -> DeformationReport:
    """Coefficients of ``l^1, l^2, l^3`` in the embedding-tensor identity, the
    Sagle identity and the representation law for the linear family
    ``(T + l theta, [,] + l omega, rho + l nu)``, written out term by term."""
    _require_triple(et, d)
    a, r = et.algebra, et.rep
    f = et.field
    n, m = et.n, et.m
    b = a.bracket
    om = d.omega_eval
    R = r.of
    theta = d.theta

    def N(x) -> Matrix:
        return linear_combination(f, x, d.nu, m, m)

    rep = DeformationReport("first_order_deformation")
    E = [a.basis(i) for i in range(n)]
    Fm = [unit_vector(f, m, k) for k in range(m)]
    Tc = et.T.columns()
    Th = theta.columns()
    zn = zero_vector(f, n)
    zmm = Matrix.zeros(f, m, m)

    checks = {(o, kind): rep.add(f"order{o}.{kind}")
              for o in orders for kind in ("tensor", "bracket", "action")}

    for k, l in product(range(m), repeat=2):
        Tm, Tn, tm, tn, fn = Tc[k], Tc[l], Th[k], Th[l], Fm[l]
        if 1 in orders:
            res = vadd(om(Tm, Tn), vadd(b(tm, Tn), b(Tm, tn)))
            res = vsub(res, theta.apply(R(Tm).apply(fn)))
            res = vsub(res, et.T.apply(N(Tm).apply(fn)))
            res = vsub(res, et.T.apply(R(tm).apply(fn)))
            checks[1, "tensor"].record((k, l), res, zn)
        if 2 in orders:
            res = vadd(vadd(om(tm, Tn), om(Tm, tn)), b(tm, tn))
            res = vsub(res, theta.apply(N(Tm).apply(fn)))
            res = vsub(res, theta.apply(R(tm).apply(fn)))
            res = vsub(res, et.T.apply(N(tm).apply(fn)))
            checks[2, "tensor"].record((k, l), res, zn)
        if 3 in orders:
            res = vsub(om(tm, tn), theta.apply(N(tm).apply(fn)))
            checks[3, "tensor"].record((k, l), res, zn)

    # each cyclic term [[[p,q],s],u]-type expression is shared by four quadruples
    P = [[a.bracket_basis(x, y) for y in range(n)] for x in range(n)]
    O = [[d.omega_at(x, y) for y in range(n)] for x in range(n)]
    cyc = {o: {} for o in orders}
    for p, q, s, u in product(range(n), repeat=4):
        pq, opq, es, eu = P[p][q], O[p][q], E[s], E[u]
        if 1 in orders:
            cyc[1][p, q, s, u] = vadd(vadd(om(b(pq, es), eu), b(om(pq, es), eu)), b(b(opq, es), eu))
        if 2 in orders:
            cyc[2][p, q, s, u] = vadd(vadd(om(om(pq, es), eu), om(b(opq, es), eu)), b(om(opq, es), eu))
        if 3 in orders:
            cyc[3][p, q, s, u] = om(om(opq, es), eu)

    for x, y, z, t in product(range(n), repeat=4):
        xz, yt = P[x][z], P[y][t]
        oxz, oyt = O[x][z], O[y][t]
        rot = _cyclic(x, y, z, t)
        if 1 in orders:
            res = vadd(om(xz, yt), vadd(b(oxz, yt), b(xz, oyt)))
            for key in rot:
                res = vsub(res, cyc[1][key])
            checks[1, "bracket"].record((x, y, z, t), res, zn)
        if 2 in orders:
            res = vadd(om(oxz, yt), vadd(om(xz, oyt), b(oxz, oyt)))
            for key in rot:
                res = vsub(res, cyc[2][key])
            checks[2, "bracket"].record((x, y, z, t), res, zn)
        if 3 in orders:
            res = om(oxz, oyt)
            for key in rot:
                res = vsub(res, cyc[3][key])
            checks[3, "bracket"].record((x, y, z, t), res, zn)

    for x, y, z in product(range(n), repeat=3):
        ex, ey, ez = E[x], E[y], E[z]
        Rx, Ry, Rz = r.rho[x], r.rho[y], r.rho[z]
        Nx, Ny, Nz = d.nu[x], d.nu[y], d.nu[z]
        xy, zx, yz = b(ex, ey), b(ez, ex), b(ey, ez)
        oxy, ozx, oyz = om(ex, ey), om(ez, ex), om(ey, ez)
        if 1 in orders:
            lhs = N(b(xy, ez)) + R(om(xy, ez)) + R(b(oxy, ez))
            rhs = (Nx @ Ry @ Rz + Rx @ Ny @ Rz + Rx @ Ry @ Nz
                   - Nz @ Rx @ Ry - Rz @ Nx @ Ry - Rz @ Rx @ Ny
                   + Ny @ R(zx) + Ry @ N(zx) + Ry @ R(ozx)
                   - N(yz) @ Rx - R(oyz) @ Rx - R(yz) @ Nx)
            checks[1, "action"].record((x, y, z), lhs - rhs, zmm)
        if 2 in orders:
            lhs = N(om(xy, ez)) + N(b(oxy, ez)) + R(om(oxy, ez))
            rhs = (Nx @ Ny @ Rz + Nx @ Ry @ Nz + Rx @ Ny @ Nz
                   - Nz @ Nx @ Ry - Nz @ Rx @ Ny - Rz @ Nx @ Ny
                   + Ny @ N(zx) + Ny @ R(ozx) + Ry @ N(ozx)
                   - N(yz) @ Nx - R(oyz) @ Nx - N(oyz) @ Rx)
            checks[2, "action"].record((x, y, z), lhs - rhs, zmm)
        if 3 in orders:
            lhs = N(om(oxy, ez))
            rhs = Nx @ Ny @ Nz - Nz @ Nx @ Ny + Ny @ N(ozx) - N(oyz) @ Nx
            checks[3, "action"].record((x, y, z), lhs - rhs, zmm)
    return rep


@dataclass(frozen=True, eq=False)
class DeformedStructure:
    """Degree-indexed coefficients: ``tensors[i]`` (n x m), ``brackets[i]`` (an
    n x n table of n-vectors) and ``actions[i]`` (n matrices m x m)."""

    base: EmbeddingTensor
    tensors: tuple
    brackets: tuple
    actions: tuple

    @property
    def order(self) -> int:
        return len(self.tensors) - 1


def deform(et: EmbeddingTensor, fd: FormalDeformation) -> DeformedStructure:
    a, r = et.algebra, et.rep
    n = et.n
    tensors = [et.T]
    brackets = [tuple(tuple(a.bracket_basis(i, j) for j in range(n)) for i in range(n))]
    actions = [r.rho]
    for d in fd.terms:
        _require_triple(et, d)
        tensors.append(d.theta)
        brackets.append(tuple(tuple(d.omega_at(i, j) for j in range(n)) for i in range(n)))
        actions.append(d.nu)
    return DeformedStructure(et, tuple(tensors), tuple(brackets), tuple(actions))


def _compositions(total: int, top: int):
    """Triples ``(i, j, k)`` with entries in ``0..top`` summing to ``total``."""
    for i in range(min(total, top) + 1):
        for j in range(min(total - i, top) + 1):
            k = total - i - j
            if k <= top:
                yield i, j, k


def check_formal(et: EmbeddingTensor, fd: FormalDeformation,
                 degrees: Optional[Sequence[int]] = None) -> DeformationReport:
    """For each degree ``l``, the coefficient of ``l`` in the Sagle identity,
    the representation law and the embedding-tensor identity, as sums over
    ``i + j + k = l`` of products of the degree-``i, j, k`` coefficients."""
    ds = deform(et, fd)
    L = ds.order
    f = et.field
    n, m = et.n, et.m
    if degrees is None:
        degrees = range(3 * L + 1)
    C = [table_array(f, tab, n, n) for tab in ds.brackets]
    R = [matrices_array(acts, m, m) for acts in ds.actions]
    T = [matrix_array(t) for t in ds.tensors]
    k = len(C)
    arrays = exact_arrays(C + R + T, degree=3, summands=max(n, m) ** 2, terms=5 * (L + 1) ** 2)
    C, R, T = arrays[:k], arrays[k:2 * k], arrays[2 * k:]

    rep = DeformationReport("formal_deformation")
    ein = np.einsum
    for l in degrees:
        combos = list(_compositions(l, L))
        res = zeros(n, n, n, n, n)
        for i, j, k in combos:
            # mu_i(mu_j(x,z), mu_k(y,t)) minus the four rotations of mu_i(mu_j(mu_k(a,b),c),d)
            res = res + ein("xzp,ytq,pqc->xyztc", C[j], C[k], C[i])
            cyc = ein("abp,pcq,qdr->abcdr", C[k], C[j], C[i])
            res = res - cyc - ein("yztxr->xyztr", cyc) - ein("ztxyr->xyztr", cyc) - ein("txyzr->xyztr", cyc)
        record_block(rep.add(f"order{l}.bracket"), f, res, 4)

        res = zeros(n, n, n, m, m)
        for i, j, k in combos:
            res = res + ein("xya,azb,brc->xyzrc", C[k], C[j], R[i])
            res = res - ein("xra,yab,zbc->xyzrc", R[i], R[j], R[k])
            res = res + ein("zra,xab,ybc->xyzrc", R[i], R[j], R[k])
            res = res - ein("yra,zxq,qab->xyzrb", R[i], C[k], R[j])
            res = res + ein("yzq,qra,xab->xyzrb", C[j], R[i], R[k])
        record_block(rep.add(f"order{l}.action"), f, res, 3, matrix=True)

        res = zeros(m, m, n)
        for i, j, k in combos:
            res = res + ein("pa,qb,pqc->abc", T[j], T[k], C[i])
            res = res - ein("cr,qa,qrb->abc", T[i], T[k], R[j])
        record_block(rep.add(f"order{l}.tensor"), f, res, 2)
    return rep


def _nijenhuis_brackets(et: EmbeddingTensor, N: NijenhuisPair):
    """``[x, y]_N`` and ``[x, m]_N`` as functions of basis indices."""
    a, r = et.algebra, et.rep
    N0, N1 = N.N0, N.N1
    E = [a.basis(i) for i in range(et.n)]
    Fm = [unit_vector(et.field, et.m, k) for k in range(et.m)]

    def bracket_N(i, j):
        x, y = E[i], E[j]
        out = vadd(a.bracket(N1.apply(x), y), a.bracket(x, N1.apply(y)))
        return vsub(out, N1.apply(a.bracket(x, y)))

    def action_N(i, k):
        x, mv = E[i], Fm[k]
        out = vadd(r.act(N1.apply(x), mv), r.act(x, N0.apply(mv)))
        return vsub(out, N0.apply(r.act(x, mv)))

    return bracket_N, action_N


def _nijenhuis_checks(et: EmbeddingTensor, N: NijenhuisPair, rep: VerificationReport, prefix: str = ""):
    a, r = et.algebra, et.rep
    f = et.field
    N0, N1 = N.N0, N.N1
    bracket_N, action_N = _nijenhuis_brackets(et, N)
    c = rep.add(prefix + "kernel", note="image of T N0 - N1 T lies in ker N1")
    defect = et.T @ N0 - N1 @ et.T
    for idx, vec in enumerate(column_space_basis(defect)):
        c.record((idx,), N1.apply(vec), zero_vector(f, et.n))
    c = rep.add(prefix + "bracket", note="N1 [x,y]_N = [N1 x, N1 y]")
    for i, j in product(range(et.n), repeat=2):
        c.record((i, j), N1.apply(bracket_N(i, j)),
                 a.bracket(N1.column(i), N1.column(j)))
    c = rep.add(prefix + "action", note="N0 [x,m]_N = rho(N1 x) N0 m")
    for i, k in product(range(et.n), range(et.m)):
        c.record((i, k), N0.apply(action_N(i, k)), r.act(N1.column(i), N0.column(k)))


def is_nijenhuis(et: EmbeddingTensor, N: NijenhuisPair) -> VerificationReport:
    N.check_shape(et)
    rep = VerificationReport("nijenhuis")
    _nijenhuis_checks(et, N, rep)
    if et.T @ N.N0 != N.N1 @ et.T:
        rep.notes.append("T N0 != N1 T; the associated deformation has nonzero theta")
    return rep


def nijenhuis_to_deformation(et: EmbeddingTensor, N: NijenhuisPair) -> DeformationTriple:
    """``theta = T N0 - N1 T``, ``omega(x, y) = [x, y]_N``, ``nu(x, m) = [x, m]_N``."""
    if not is_nijenhuis(et, N).passed:
        raise NotNijenhuis("the pair fails the Nijenhuis conditions")
    f = et.field
    n, m = et.n, et.m
    bracket_N, action_N = _nijenhuis_brackets(et, N)
    theta = et.T @ N.N0 - N.N1 @ et.T
    omega = {(i, j): bracket_N(i, j) for i, j in index_pairs(n)}
    nu = tuple(Matrix.from_columns(f, [action_N(i, k) for k in range(m)], m) for i in range(n))
    return TwoCochain(f, n, m, m, n, theta, omega, nu)


def check_trivial_morphism(et: EmbeddingTensor, d: DeformationTriple, N: NijenhuisPair) -> VerificationReport:
    """Whether ``(id + l N0, id + l N1)`` maps the deformed structure onto the
    original one, coefficient by coefficient in ``l``, together with the
    constraints on ``N`` those coefficients force."""
    _require_triple(et, d)
    N.check_shape(et)
    a, r = et.algebra, et.rep
    f = et.field
    n, m = et.n, et.m
    N0, N1 = N.N0, N.N1
    T = et.T
    rep = VerificationReport("trivial_morphism")

    c = rep.add("tensor.order1", note="T N0 = N1 T + theta")
    c.record((), T @ N0, N1 @ T + d.theta)
    c = rep.add("tensor.order2", note="N1 theta = 0")
    c.record((), N1 @ d.theta, Matrix.zeros(f, n, m))

    c1 = rep.add("bracket.order1", note="N1[x,y] + omega(x,y) = [N1 x, y] + [x, N1 y]")
    c2 = rep.add("bracket.order2", note="N1 omega(x,y) = [N1 x, N1 y]")
    for i, j in product(range(n), repeat=2):
        x, y = a.basis(i), a.basis(j)
        c1.record((i, j), vadd(N1.apply(a.bracket(x, y)), d.omega_at(i, j)),
                  vadd(a.bracket(N1.column(i), y), a.bracket(x, N1.column(j))))
        c2.record((i, j), N1.apply(d.omega_at(i, j)), a.bracket(N1.column(i), N1.column(j)))

    c1 = rep.add("action.order1", note="N0 rho(x)m + nu(x,m) = rho(N1 x)m + rho(x) N0 m")
    c2 = rep.add("action.order2", note="N0 nu(x,m) = rho(N1 x) N0 m")
    for i, k in product(range(n), range(m)):
        x, mv = a.basis(i), unit_vector(f, m, k)
        c1.record((i, k), vadd(N0.apply(r.act(x, mv)), d.nu[i].column(k)),
                  vadd(r.act(N1.column(i), mv), r.act(x, N0.column(k))))
        c2.record((i, k), N0.apply(d.nu[i].column(k)), r.act(N1.column(i), N0.column(k)))

    _nijenhuis_checks(et, N, rep, prefix="nijenhuis.")
    return rep


def adjoint_coboundary(et: EmbeddingTensor, phi: Matrix, psi: Matrix) -> DeformationTriple:
    """``D(phi, psi)`` with coefficients in the embedding tensor itself."""
    er = adjoint_et_representation(et)
    return coboundary(et, er, OneCochain(et.field, et.n, et.m, et.m, et.n, phi, psi))


def first_order_cohomologous(et: EmbeddingTensor, d1: DeformationTriple, d2: DeformationTriple,
                             phi1: Matrix, psi1: Matrix) -> bool:
    """Whether ``d1 - d2 = D(phi1, psi1)`` exactly."""
    for d in (d1, d2):
        _require_triple(et, d)
        if not check_first_order(et, d, orders=(1,)).passed:
            raise NotACocycle("both triples must satisfy the first-order conditions")
    return (d1 - d2) == adjoint_coboundary(et, phi1, psi1)


@dataclass
class RigidityReport:
    dim_h2: int
    representatives: list
    notes: list = field(default_factory=list)

    @property
    def rigid(self) -> bool:
        """True only when the sufficient condition ``H^2 = 0`` holds."""
        return self.dim_h2 == 0

    @property
    def verdict(self) -> str:
        if self.rigid:
            return "rigid (sufficient condition met)"
        return f"dim H2 = {self.dim_h2} > 0; rigidity not concluded"

    def to_dict(self) -> dict:
        return {"dim_h2": self.dim_h2, "verdict": self.verdict,
                "representatives": [list(map(str, z.coordinates())) for z in self.representatives],
                "notes": list(self.notes)}

    def to_text(self) -> str:
        lines = [self.verdict]
        for z in self.representatives:
            lines.append("  representative: [" + ", ".join(map(str, z.coordinates())) + "]")
        return "\n".join(lines)


def rigidity_report(et: EmbeddingTensor) -> RigidityReport:
    res = h2(et, adjoint_et_representation(et))
    return RigidityReport(res.dim, res.representatives, list(res.notes))
