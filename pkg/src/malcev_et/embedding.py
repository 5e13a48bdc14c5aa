"""Embedding tensors, the hemi-semidirect product and induced dialgebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Literal

from .algebra import AlgebraData
from .errors import NotAnEmbeddingTensor, ShapeError, UnverifiedRepresentation
from .linalg import Matrix, unit_vector, zero_vector
from .report import VerificationReport
from .representations import Representation, is_representation


@dataclass(frozen=True, eq=False)
class EmbeddingTensor:
    """A representation ``(g, M, rho)`` with a linear map ``T: M -> g``.

    Column ``k`` of ``T`` holds the coordinates of ``T(f_k)``.
    """

    rep: Representation
    T: Matrix
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n, m = self.rep.algebra.dim, self.rep.module_dim
        if self.T.rows != n or self.T.cols != m:
            raise ShapeError(f"T must be {n}x{m}, got {self.T.rows}x{self.T.cols}")
        if self.T.field != self.rep.field:
            raise ShapeError("T lives over a different field")

    @property
    def algebra(self) -> AlgebraData:
        return self.rep.algebra

    @property
    def field(self):
        return self.rep.field

    @property
    def n(self) -> int:
        return self.rep.algebra.dim

    @property
    def m(self) -> int:
        return self.rep.module_dim


def check_embedding_tensor(et: EmbeddingTensor) -> VerificationReport:
    """``[T(m), T(n)] = T(rho(T(m)) n)`` on module-basis pairs."""
    r = et.rep
    if not is_representation(r):
        raise UnverifiedRepresentation("the underlying representation failed its check")
    rep = VerificationReport("embedding_tensor")
    chk = rep.add("embedding_tensor")
    T = et.T
    images = T.columns()
    e = [unit_vector(et.field, et.m, k) for k in range(et.m)]
    for k, l in product(range(et.m), repeat=2):
        lhs = r.algebra.bracket(images[k], images[l])
        rhs = T.apply(r.act(images[k], e[l]))
        chk.record((k, l), lhs, rhs)
    return rep


def is_embedding_tensor(et: EmbeddingTensor) -> bool:
    if "et" not in et._cache:
        et._cache["et"] = is_representation(et.rep) and check_embedding_tensor(et).passed
    return et._cache["et"]


def hemi_semidirect(r: Representation) -> AlgebraData:
    """Non-skew bracket ``[x+m, y+n]_H = [x,y] + rho(x)(n)`` on ``g + M``."""
    if not is_representation(r):
        raise UnverifiedRepresentation("input is not a verified representation")
    a = r.algebra
    n, m = a.dim, r.module_dim
    f = a.field
    entries = []
    for i, j in product(range(n), repeat=2):
        c = a.bracket_basis(i, j)
        if any(c):
            entries.append((i, j, c + zero_vector(f, m)))
    for i, k in product(range(n), range(m)):
        col = r.rho[i].column(k)
        if any(col):
            entries.append((i, n + k, zero_vector(f, n) + col))
    return AlgebraData.from_constants(f, n + m, entries, skew=False)


def graph_subalgebra_check(et: EmbeddingTensor) -> bool:
    """Whether ``{(T m, m)}`` is closed under the hemi-semidirect bracket."""
    h = hemi_semidirect(et.rep)
    n, m = et.n, et.m
    f = et.field
    gens = [et.T.column(k) + unit_vector(f, m, k) for k in range(m)]
    for u, v in product(gens, repeat=2):
        w = h.bracket(u, v)
        if w[:n] != et.T.apply(w[n:]):
            return False
    return True


def induce_dialgebra(et: EmbeddingTensor, side: Literal["left", "right"] = "left") -> AlgebraData:
    """Bracket on ``M``: ``[m, n] = rho(T m) n`` (left) or ``rho(T n) m`` (right)."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if not is_embedding_tensor(et):
        raise NotAnEmbeddingTensor("T does not satisfy the embedding-tensor condition")
    r = et.rep
    m = et.m
    f = et.field
    images = et.T.columns()
    basis = [unit_vector(f, m, k) for k in range(m)]
    entries = []
    for k, l in product(range(m), repeat=2):
        if side == "left":
            c = r.act(images[k], basis[l])
        else:
            c = r.act(images[l], basis[k])
        if any(c):
            entries.append((k, l, c))
    return AlgebraData.from_constants(f, m, entries, skew=False)
