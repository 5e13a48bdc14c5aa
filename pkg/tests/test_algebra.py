from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from malcev_et.algebra import (AlgebraData, check_jacobi, check_left_dialgebra, check_malcev,
                               check_right_dialgebra, check_sagle, is_malcev, verify_malcev)
from malcev_et.errors import ShapeError, UnsupportedField
from malcev_et.fixtures import abelian, aff1, malcev7, sl2, sl2_perturbed
from malcev_et.linalg import GF, Matrix, Q
from malcev_et.oracle import InstanceStream

H, E, F = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def test_sl2_bracket_of_sums():
    a = sl2()
    assert a.bracket((0, 1, 1), (0, 1, -1)) == (-2, 0, 0)


def test_sl2_adjoint_of_h_is_diagonal():
    assert sl2().ad(H) == Matrix.from_rows(Q, [[0, 0, 0], [0, 2, 0], [0, 0, -2]])


def test_bracket_is_antisymmetric():
    a = sl2()
    assert a.bracket(E, F) == H
    assert a.bracket(F, E) == (-1, 0, 0)


@pytest.mark.parametrize("alg", [abelian(3), aff1(), sl2()], ids=["abelian3", "aff1", "sl2"])
def test_lie_fixtures_pass_everything(alg):
    assert check_malcev(alg).passed
    assert check_sagle(alg).passed
    assert check_jacobi(alg).passed


def test_octonion_algebra_is_malcev_not_lie():
    a = malcev7()
    assert check_malcev(a).passed
    assert check_sagle(a).passed
    assert not check_jacobi(a).passed


def test_perturbed_sl2_fails_and_reports_witnesses():
    rep = check_malcev(sl2_perturbed())
    assert not rep.passed
    assert rep.check("malcev").violations


def test_diagonal_constant_rejected():
    with pytest.raises(ShapeError):
        AlgebraData.from_constants(Q, 2, [(0, 0, (1, 0))])


def test_malcev_check_refused_in_characteristic_two():
    a = aff1(GF(2))
    with pytest.raises(UnsupportedField):
        check_malcev(a)
    assert verify_malcev(a).passed
    assert is_malcev(a)


def test_dialgebra_identities_on_lie_algebra():
    d = sl2().as_dialgebra()
    assert check_left_dialgebra(d).passed
    assert check_right_dialgebra(d).passed


@given(st.integers(0, 2 ** 32 - 1))
def test_malcev_and_sagle_agree_on_random_tables(seed):
    a = InstanceStream(seed).skew_algebra(GF(3), 3)
    assert check_malcev(a).passed == check_sagle(a).passed


@given(st.integers(0, 2 ** 32 - 1))
def test_random_rational_tables_agree(seed):
    a = InstanceStream(seed).skew_algebra(Q, 3, bound=1)
    assert check_malcev(a).passed == check_sagle(a).passed


def test_identity_checks_need_a_skew_table():
    from malcev_et.errors import NonSkewInput
    with pytest.raises(NonSkewInput):
        check_malcev(sl2().as_dialgebra())


def _five_term_failures(a):
    """Reference evaluation of the left dialgebra identities, one quadruple at a time."""
    n, b = a.dim, a.bracket
    e = [a.basis(i) for i in range(n)]
    sym = [(x, y, z) for x in range(n) for y in range(n) for z in range(n)
           if any(b(tuple(p + q for p, q in zip(b(e[x], e[y]), b(e[y], e[x]))), e[z]))]
    five = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                for t in range(n):
                    lhs = b(e[x], b(e[y], b(e[z], e[t])))
                    terms = [b(e[y], b(e[z], b(e[x], e[t]))), b(e[z], b(b(e[x], e[y]), e[t])),
                             b(b(e[x], e[z]), b(e[y], e[t])), b(b(e[x], b(e[y], e[z])), e[t])]
                    rhs = tuple(sum(c) for c in zip(*terms))
                    if lhs != tuple(a.field(c) for c in rhs):
                        five.append((x, y, z, t))
    return sym, five


@given(st.integers(0, 2 ** 32 - 1), st.sampled_from([Q, GF(3)]))
def test_bulk_dialgebra_check_matches_reference(seed, field):
    stream = InstanceStream(seed)
    n = 2
    entries = [(i, j, stream.scalars(field, n, 1)) for i in range(n) for j in range(n) if stream.coin(0.4)]
    a = AlgebraData.from_constants(field, n, entries, skew=False)
    sym, five = _five_term_failures(a)
    rep = check_left_dialgebra(a)
    assert [v.index for v in rep.check("right_anticommutativity").violations] == sym
    assert [v.index for v in rep.check("five_term").violations] == five
    assert rep.check("five_term").evaluated == n ** 4


def test_dialgebra_violation_values_are_field_elements():
    a = AlgebraData.from_constants(Q, 1, [(0, 0, (1,))], skew=False)
    rep = check_left_dialgebra(a)
    v = rep.check("right_anticommutativity").violations[0]
    assert v.index == (0, 0, 0) and v.lhs == (2,) and type(v.lhs[0]) is int


def test_bulk_dialgebra_check_with_fractions():
    from fractions import Fraction
    half = Fraction(1, 2)
    a = AlgebraData.from_constants(Q, 2, [(0, 1, (half, 0)), (1, 0, (0, half)), (1, 1, (1, 0))], skew=False)
    sym, five = _five_term_failures(a)
    rep = check_left_dialgebra(a)
    assert [v.index for v in rep.check("five_term").violations] == five
    assert [v.index for v in rep.check("right_anticommutativity").violations] == sym
    assert sym or five
