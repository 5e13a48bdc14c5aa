"""Representations of Malcev algebras and the semidirect-product algebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .algebra import AlgebraData, is_malcev
from .errors import ShapeError, UnverifiedAlgebra, UnverifiedRepresentation
from .linalg import Matrix, linear_combination, vadd, vsub, zero_vector
from .report import VerificationReport


@dataclass(frozen=True, eq=False)
class Representation:
    """``rho[i]`` is the matrix of ``rho(e_i)`` acting on an ``m``-dimensional module."""

    algebra: AlgebraData
    module_dim: int
    rho: tuple
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        a, m = self.algebra, self.module_dim
        object.__setattr__(self, "rho", tuple(self.rho))
        if len(self.rho) != a.dim:
            raise ShapeError(f"need {a.dim} action matrices, got {len(self.rho)}")
        for r in self.rho:
            if r.rows != m or r.cols != m:
                raise ShapeError(f"action matrices must be {m}x{m}")
            if r.field != a.field:
                raise ShapeError("action matrices live over a different field")

    @property
    def field(self):
        return self.algebra.field

    def of(self, x: Sequence) -> Matrix:
        """The matrix ``rho(x)`` for an algebra vector ``x``."""
        m = self.module_dim
        return linear_combination(self.field, x, self.rho, m, m)

    def act(self, x: Sequence, v: Sequence) -> tuple:
        out = zero_vector(self.field, self.module_dim)
        for c, r in zip(x, self.rho):
            if c:
                out = vadd(out, tuple(c * y for y in r.apply(v)))
        return out

    def same_as(self, other: "Representation") -> bool:
        return (self.algebra.same_as(other.algebra) and self.module_dim == other.module_dim
                and self.rho == other.rho)


def representation_law(r: Representation, x, y, z) -> tuple[Matrix, Matrix]:
    """Both sides of ``rho([[x,y],z]) = rho(x)rho(y)rho(z) - rho(z)rho(x)rho(y)
    + rho(y)rho([z,x]) - rho([y,z])rho(x)``."""
    b = r.algebra.bracket
    R = r.of
    rx, ry, rz = R(x), R(y), R(z)
    lhs = R(b(b(x, y), z))
    rhs = rx @ ry @ rz - rz @ rx @ ry + ry @ R(b(z, x)) - R(b(y, z)) @ rx
    return lhs, rhs


def check_representation(r: Representation) -> VerificationReport:
    if not is_malcev(r.algebra):
        raise UnverifiedAlgebra("the base algebra does not satisfy the Malcev identity")
    rep = VerificationReport("representation")
    chk = rep.add("representation_law")
    a = r.algebra
    e = [a.basis(i) for i in range(a.dim)]
    for i, j, k in product(range(a.dim), repeat=3):
        lhs, rhs = representation_law(r, e[i], e[j], e[k])
        chk.record((i, j, k), lhs, rhs)
    return rep


def is_representation(r: Representation) -> bool:
    if "rep" not in r._cache:
        r._cache["rep"] = is_malcev(r.algebra) and check_representation(r).passed
    return r._cache["rep"]


def adjoint_rep(a: AlgebraData) -> Representation:
    """The module ``g`` itself with ``rho(e_i) = ad(e_i)``."""
    return Representation(a, a.dim, tuple(a.ad(i) for i in range(a.dim)))


def semidirect_malcev(r: Representation) -> AlgebraData:
    """Algebra on ``g + M`` with ``[x+m, y+n] = [x,y] + rho(x)n - rho(y)m``.

    Basis order is ``e_1..e_n`` followed by ``f_1..f_m``.
    """
    if not is_representation(r):
        raise UnverifiedRepresentation("input is not a verified representation")
    a = r.algebra
    n, m = a.dim, r.module_dim
    f = a.field
    entries = []
    for (i, j), c in a.table.items():
        entries.append((i, j, tuple(c) + zero_vector(f, m)))
    for i, k in product(range(n), range(m)):
        col = r.rho[i].column(k)
        if any(col):
            entries.append((i, n + k, zero_vector(f, n) + col))
    return AlgebraData.from_constants(f, n + m, entries)


def self_paired_semidirect_bracket(r: Representation, u: Sequence, v: Sequence) -> tuple:
    """The pairing ``[x+m, y+n] = [x,y] + rho(x)(m) - rho(y)(n)`` evaluated literally.

    This pairs each action with the module part of its own argument, so the
    result is quadratic rather than bilinear in each slot; it is kept only to
    exhibit that defect.
    """
    n = r.algebra.dim
    x, mm = tuple(u[:n]), tuple(u[n:])
    y, nn = tuple(v[:n]), tuple(v[n:])
    g = r.algebra.bracket(x, y)
    mod = vsub(r.act(x, mm), r.act(y, nn))
    return g + mod
