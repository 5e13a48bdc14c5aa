from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from malcev_et.linalg import (GF, Matrix, Q, format_scalar, kernel_basis, parse_rational, rank, rref,
                              solve)

F5 = GF(5)


def test_rank_of_dependent_rows():
    m = Matrix.from_rows(Q, [[1, 2], [2, 4]])
    assert rank(m) == 1
    reduced, rk, pivots = rref(m)
    assert (rk, pivots) == (1, [0])
    assert reduced.row(0) == (1, 2)


def test_kernel_of_dependent_rows():
    m = Matrix.from_rows(Q, [[1, 2], [2, 4]])
    (k,) = kernel_basis(m)
    assert m.apply(k) == (0, 0)


def test_rationals_stay_exact():
    m = Matrix.from_rows(Q, [[3, 1], [1, 3]])
    x = solve(m, (1, 0))
    assert x == (Fraction(3, 8), Fraction(-1, 8))


def test_fp_arithmetic_reduces():
    assert F5(7) == F5(2)
    assert F5(2) * F5(3) == F5(1)
    assert F5.div(F5(1), F5(2)) == F5(3)
    with pytest.raises(ZeroDivisionError):
        F5.div(F5(1), F5(0))


def test_non_prime_modulus_rejected():
    with pytest.raises(ValueError):
        GF(4)


def test_parse_rational_grammar():
    assert parse_rational("-1/2") == Fraction(-1, 2)
    assert parse_rational("6/4") == Fraction(3, 2)
    for bad in ("2/-4", "1/0", "1.5", "", "+3"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_format_scalar_renders_integral_fractions_as_integers():
    assert format_scalar(Fraction(4, 2)) == "2"
    assert format_scalar(Fraction(-1, 3)) == "-1/3"
    assert format_scalar(F5(8)) == "3"


def test_field_mismatch_in_product():
    with pytest.raises(Exception):
        Matrix.identity(Q, 2) @ Matrix.identity(F5, 2)


small_ints = st.integers(-4, 4)


@st.composite
def matrices(draw, field=Q):
    r = draw(st.integers(0, 4))
    c = draw(st.integers(0, 4))
    rows = [[field(draw(small_ints)) for _ in range(c)] for _ in range(r)]
    return Matrix.from_rows(field, rows, c)


@given(matrices())
def test_rank_nullity(m):
    basis = kernel_basis(m)
    assert rank(m) + len(basis) == m.cols
    for v in basis:
        assert not any(m.apply(v))


@given(matrices(F5))
def test_rank_nullity_fp(m):
    assert rank(m) + len(kernel_basis(m)) == m.cols


@given(matrices(), st.data())
def test_solve_recovers_consistent_systems(m, data):
    x = tuple(data.draw(small_ints) for _ in range(m.cols))
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


@given(matrices())
def test_transpose_preserves_rank(m):
    assert rank(m) == rank(m.T)
