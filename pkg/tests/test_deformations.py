from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from malcev_et.cohomology import cocycle_space, is_cocycle
from malcev_et.deformations import (FormalDeformation, NijenhuisPair, adjoint_coboundary, check_first_order,
                                    check_formal, check_trivial_morphism, first_order_cohomologous,
                                    is_nijenhuis, nijenhuis_to_deformation, rigidity_report, triple_dims,
                                    zero_triple)
from malcev_et.errors import NotNijenhuis, ShapeError
from malcev_et.etrep import adjoint_et_representation
from malcev_et.fixtures import fixture_ets
from malcev_et.linalg import GF, Matrix, Q
from malcev_et.oracle import InstanceStream, enumerate_nijenhuis

F2 = GF(2)
GROUPS = [f"order{k}.{kind}" for k in (1, 2, 3) for kind in ("tensor", "bracket", "action")]


def trivial_pairs(et):
    f = et.field
    yield NijenhuisPair(Matrix.zeros(f, et.m, et.m), Matrix.zeros(f, et.n, et.n))
    yield NijenhuisPair(Matrix.identity(f, et.m), Matrix.identity(f, et.n))


def test_zero_triple_passes_every_order():
    for name, et in fixture_ets(Q).items():
        rep = check_first_order(et, zero_triple(et))
        assert rep.passed, name
        assert [c.name for c in rep.checks] == GROUPS


def test_first_order_group_is_the_cocycle_condition():
    for name, et in fixture_ets(Q).items():
        if et.n > 2:
            continue
        er = adjoint_et_representation(et)
        stream = InstanceStream(4)
        for _ in range(5):
            d = stream.two_cochain(Q, triple_dims(et), bound=1)
            assert check_first_order(et, d, orders=(1,)).passed == is_cocycle(et, er, d).passed, name


def test_cocycles_pass_the_linear_group():
    et = fixture_ets(Q)["aff1_adjoint_zero"]
    for d in cocycle_space(et, adjoint_et_representation(et)):
        assert check_first_order(et, d).group_passed(1)


@pytest.mark.parametrize("field", [Q, GF(3)], ids=["Q", "F3"])
def test_trivial_pairs_give_trivial_deformations(field):
    for name, et in fixture_ets(field).items():
        for N in trivial_pairs(et):
            assert is_nijenhuis(et, N).passed, name
            d = nijenhuis_to_deformation(et, N)
            assert check_first_order(et, d).passed, name
            assert check_trivial_morphism(et, d, N).passed, name


def test_census_pairs_give_trivial_deformations():
    et = fixture_ets(F2)["aff1_adjoint_id"]
    count, pairs = enumerate_nijenhuis(et)
    assert count == len(pairs) == 35
    for N in pairs:
        d = nijenhuis_to_deformation(et, N)
        assert check_first_order(et, d).passed
        assert check_trivial_morphism(et, d, N).passed


def test_non_nijenhuis_pair_refused():
    et = fixture_ets(Q)["aff1_adjoint_id"]
    N = NijenhuisPair(Matrix.identity(Q, 2), Matrix.from_rows(Q, [[0, 1], [0, 0]]))
    assert not is_nijenhuis(et, N).passed
    with pytest.raises(NotNijenhuis):
        nijenhuis_to_deformation(et, N)


def test_shape_mismatch():
    et = fixture_ets(Q)["aff1_adjoint_id"]
    with pytest.raises(ShapeError):
        is_nijenhuis(et, NijenhuisPair(Matrix.identity(Q, 3), Matrix.identity(Q, 2)))


@settings(max_examples=15)
@given(st.integers(0, 2 ** 32 - 1))
def test_formal_degree_one_matches_linear_group(seed):
    stream = InstanceStream(seed)
    for name, et in fixture_ets(Q).items():
        d = stream.two_cochain(Q, triple_dims(et), bound=1)
        if stream.coin():
            d = adjoint_coboundary(et, stream.matrix(Q, et.m, et.m), stream.matrix(Q, et.n, et.n))
        formal = check_formal(et, FormalDeformation(1, (d,)), degrees=[1])
        linear = check_first_order(et, d, orders=(1,))
        assert formal.group_verdicts(1) == linear.group_verdicts(1), name


def test_formal_degree_zero_is_the_base_structure():
    for name, et in fixture_ets(Q).items():
        rep = check_formal(et, FormalDeformation(0, ()))
        assert rep.passed and rep.group_passed(0), name


def test_formal_order_two_from_nijenhuis_pair():
    et = fixture_ets(Q)["aff1_adjoint_id"]
    d = nijenhuis_to_deformation(et, NijenhuisPair(Matrix.identity(Q, 2), Matrix.identity(Q, 2)))
    assert check_formal(et, FormalDeformation(1, (d,))).passed


def test_cohomologous_triples():
    et = fixture_ets(Q)["aff1_adjoint_zero"]
    phi, psi = Matrix.from_rows(Q, [[1, 2], [0, 1]]), Matrix.from_rows(Q, [[0, 1], [1, 0]])
    d = adjoint_coboundary(et, phi, psi)
    assert first_order_cohomologous(et, d, zero_triple(et), phi, psi)
    assert not first_order_cohomologous(et, d, zero_triple(et), psi, phi)


def test_rigidity_verdicts():
    ets = fixture_ets(Q)
    assert rigidity_report(ets["sl2_adjoint_id"]).rigid
    rep = rigidity_report(ets["aff1_adjoint_zero"])
    assert not rep.rigid
    assert rep.verdict == "dim H2 = 5 > 0; rigidity not concluded"
