"""Standard algebras, representations and embedding tensors used as fixtures."""

from __future__ import annotations

from .algebra import AlgebraData
from .embedding import EmbeddingTensor
from .etrep import EtRepresentation, adjoint_et_representation
from .linalg import Field, Matrix, Q
from .representations import Representation, adjoint_rep


def abelian(dim: int, field: Field = Q) -> AlgebraData:
    return AlgebraData.abelian(field, dim)


def aff1(field: Field = Q) -> AlgebraData:
    """Two-dimensional non-abelian Lie algebra, ``[e1, e2] = e2``."""
    return AlgebraData.from_constants(field, 2, [(0, 1, (0, 1))])


def sl2(field: Field = Q) -> AlgebraData:
    """Basis ``(h, e, f)`` with ``[h,e] = 2e``, ``[h,f] = -2f``, ``[e,f] = h``."""
    return AlgebraData.from_constants(field, 3, [
        (0, 1, (0, 2, 0)),
        (0, 2, (0, 0, -2)),
        (1, 2, (1, 0, 0)),
    ])


def sl2_perturbed(field: Field = Q) -> AlgebraData:
    """sl2 with ``[e, f] = h + e``; not Malcev."""
    return AlgebraData.from_constants(field, 3, [
        (0, 1, (0, 2, 0)),
        (0, 2, (0, 0, -2)),
        (1, 2, (1, 1, 0)),
    ])


# Oriented Fano lines (a, b, c) with e_a e_b = e_c for the imaginary octonions;
# generated by e_i e_{i+1} = e_{i+3} with indices 1..7 taken mod 7.
OCTONION_TRIPLES = tuple(
    (i, (i % 7) + 1, ((i + 2) % 7) + 1) for i in range(1, 8)
)


def octonion_product_sign(a: int, b: int) -> tuple[int, int]:
    """``e_a e_b = sign * e_c`` for distinct imaginary units ``a, b`` in 1..7."""
    for t in OCTONION_TRIPLES:
        for k in range(3):
            x, y, z = t[k], t[(k + 1) % 3], t[(k + 2) % 3]
            if (a, b) == (x, y):
                return z, 1
            if (a, b) == (y, x):
                return z, -1
    raise ValueError(f"no Fano line through {a}, {b}")


def malcev7(field: Field = Q) -> AlgebraData:
    """Commutator algebra of the imaginary octonions: ``[e_a, e_b] = 2 e_a e_b``."""
    entries = []
    for a in range(1, 8):
        for b in range(a + 1, 8):
            c, s = octonion_product_sign(a, b)
            coeffs = [0] * 7
            coeffs[c - 1] = 2 * s
            entries.append((a - 1, b - 1, coeffs))
    return AlgebraData.from_constants(field, 7, entries)


def trivial_rep(a: AlgebraData, module_dim: int) -> Representation:
    z = Matrix.zeros(a.field, module_dim, module_dim)
    return Representation(a, module_dim, tuple(z for _ in range(a.dim)))


def aff1_character(field: Field = Q) -> Representation:
    """aff(1) acting on a line by ``rho(e1) = 1``, ``rho(e2) = 0``."""
    a = aff1(field)
    return Representation(a, 1, (Matrix.from_rows(field, [[1]]), Matrix.from_rows(field, [[0]])))


def zero_et(r: Representation) -> EmbeddingTensor:
    return EmbeddingTensor(r, Matrix.zeros(r.algebra.field, r.algebra.dim, r.module_dim))


def identity_et(a: AlgebraData) -> EmbeddingTensor:
    """``T = id`` on the adjoint representation."""
    return EmbeddingTensor(adjoint_rep(a), Matrix.identity(a.field, a.dim))


def aff1_character_et(field: Field = Q) -> EmbeddingTensor:
    """``T(f) = e2`` on the aff(1) character; a nonzero embedding tensor."""
    return EmbeddingTensor(aff1_character(field), Matrix.from_rows(field, [[0], [1]]))


def fully_abelian(n: int, m: int, v: int, w: int, field: Field = Q) -> EtRepresentation:
    """Zero brackets, zero actions and zero maps everywhere."""
    et = zero_et(trivial_rep(abelian(n, field), m))
    return EtRepresentation(
        et, v, w, Matrix.zeros(field, w, v),
        tuple(Matrix.zeros(field, v, v) for _ in range(n)),
        tuple(Matrix.zeros(field, w, w) for _ in range(n)),
        tuple(Matrix.zeros(field, v, w) for _ in range(m)),
    )


def _line_etrep(et: EmbeddingTensor, tprime, rho1, rho2, rho3) -> EtRepresentation:
    """One-dimensional V and W, every map given by a scalar."""
    f = et.field

    def s(x):
        return Matrix.from_rows(f, [[x]])

    return EtRepresentation(et, 1, 1, s(tprime), tuple(map(s, rho1)), tuple(map(s, rho2)),
                            tuple(map(s, rho3)))


def fixture_algebras(field: Field = Q) -> dict[str, AlgebraData]:
    out = {f"abelian{n}": abelian(n, field) for n in range(1, 5)}
    out["aff1"] = aff1(field)
    out["sl2"] = sl2(field)
    return out


def fixture_representations(field: Field = Q) -> dict[str, Representation]:
    out = {
        "abelian2_trivial2": trivial_rep(abelian(2, field), 2),
        "aff1_adjoint": adjoint_rep(aff1(field)),
        "aff1_character": aff1_character(field),
        "aff1_trivial1": trivial_rep(aff1(field), 1),
        "sl2_adjoint": adjoint_rep(sl2(field)),
    }
    if field.characteristic != 2:
        out["malcev7_adjoint"] = adjoint_rep(malcev7(field))
    return out


def fixture_ets(field: Field = Q) -> dict[str, EmbeddingTensor]:
    """Embedding tensors used across the test-suite (all valid)."""
    reps = fixture_representations(field)
    return {
        "abelian1_zero": zero_et(trivial_rep(abelian(1, field), 1)),
        "abelian1_id": identity_et(abelian(1, field)),
        "abelian2_zero": zero_et(reps["abelian2_trivial2"]),
        "aff1_adjoint_zero": zero_et(reps["aff1_adjoint"]),
        "aff1_adjoint_id": identity_et(aff1(field)),
        "aff1_character": aff1_character_et(field),
        "aff1_trivial_zero": zero_et(reps["aff1_trivial1"]),
        "sl2_adjoint_zero": zero_et(reps["sl2_adjoint"]),
        "sl2_adjoint_id": identity_et(sl2(field)),
    }


def fixture_et_representations(field: Field = Q) -> dict[str, EtRepresentation]:
    """Adjoint coefficients on every fixture embedding tensor, plus a few
    hand-picked line-sized coefficient objects (all valid)."""
    ets = fixture_ets(field)
    out = {f"{name}:adjoint": adjoint_et_representation(et) for name, et in ets.items()}
    out["abelian2_zero:fully_abelian"] = fully_abelian(2, 2, 1, 1, field)
    out["aff1_character:scalar"] = _line_etrep(ets["aff1_character"], 1, (1, 0), (1, 0), (0,))
    out["aff1_character:twisted"] = _line_etrep(ets["aff1_character"], 0, (1, 0), (0, 0), (1,))
    out["aff1_trivial_zero:w_action"] = _line_etrep(ets["aff1_trivial_zero"], 0, (0, 0), (1, 0), (0,))
    return out
