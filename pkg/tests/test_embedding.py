from __future__ import annotations

from itertools import product

import pytest

from malcev_et.algebra import AlgebraData, check_left_dialgebra, check_right_dialgebra
from malcev_et.embedding import (EmbeddingTensor, check_embedding_tensor, graph_subalgebra_check,
                                 hemi_semidirect, induce_dialgebra, is_embedding_tensor)
from malcev_et.errors import NotAnEmbeddingTensor
from malcev_et.fixtures import abelian, fixture_ets, fixture_representations, trivial_rep
from malcev_et.linalg import GF, Matrix, Q
from malcev_et.oracle import enumerate_ets
from malcev_et.representations import Representation

F3 = GF(3)


def all_maps(field, n, m):
    p = field.modulus
    for digits in product(range(p), repeat=n * m):
        yield Matrix.from_rows(field, [digits[r * m:(r + 1) * m] for r in range(n)], m)


@pytest.mark.parametrize("field", [Q, F3], ids=["Q", "F3"])
def test_fixture_ets_pass(field):
    for name, et in fixture_ets(field).items():
        assert check_embedding_tensor(et).passed, name
        assert graph_subalgebra_check(et), name


def test_scalar_action_line_admits_only_zero():
    a = AlgebraData.abelian(F3, 1)
    for scalar in (1, 2):
        r = Representation(a, 1, (Matrix.from_rows(F3, [[scalar]]),))
        passing = [T for T in all_maps(F3, 1, 1) if check_embedding_tensor(EmbeddingTensor(r, T)).passed]
        assert passing == [Matrix.zeros(F3, 1, 1)]
        assert enumerate_ets(r)[0] == 1


def test_abelian_trivial_every_map_passes():
    r = trivial_rep(abelian(2, F3), 1)
    assert all(check_embedding_tensor(EmbeddingTensor(r, T)).passed for T in all_maps(F3, 2, 1))


@pytest.mark.parametrize("field", [GF(2), F3], ids=["F2", "F3"])
def test_graph_criterion_matches_identity(field):
    for name, r in fixture_representations(field).items():
        n, m = r.algebra.dim, r.module_dim
        if n > 2 or m > 2:
            continue
        for T in all_maps(field, n, m):
            et = EmbeddingTensor(r, T)
            assert check_embedding_tensor(et).passed == graph_subalgebra_check(et), (name, T)


def test_hemi_semidirect_is_left_dialgebra():
    for name, r in fixture_representations(Q).items():
        if r.algebra.dim + r.module_dim > 6:
            continue
        assert check_left_dialgebra(hemi_semidirect(r)).passed, name


def test_induced_dialgebras():
    for name, et in fixture_ets(Q).items():
        assert check_left_dialgebra(induce_dialgebra(et, "left")).passed, name
        assert check_right_dialgebra(induce_dialgebra(et, "right")).passed, name


def test_induce_refuses_invalid_tensor():
    r = Representation(AlgebraData.abelian(F3, 1), 1, (Matrix.from_rows(F3, [[1]]),))
    et = EmbeddingTensor(r, Matrix.from_rows(F3, [[1]]))
    assert not is_embedding_tensor(et)
    with pytest.raises(NotAnEmbeddingTensor):
        induce_dialgebra(et)
