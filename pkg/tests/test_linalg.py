from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homlie.errors import DimensionMismatch
from homlie.linalg import (
    Mat,
    det,
    format_rational,
    inverse,
    kernel_basis,
    parse_rational,
    rank,
    rref,
    rref_with_transform,
    solve,
    span_basis,
)

import oracles
from strategies import matrices, rationals, square_matrices


@pytest.mark.parametrize("text,value", [("0", 0), ("-3", -3), ("1/2", Fraction(1, 2)), ("2/4", Fraction(1, 2)),
                                        ("-6/4", Fraction(-3, 2))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "1/-2", " 1", "1 /2", "1.5", "a", "--1", "1/", "/2", "+1"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_format_normalizes():
    assert format_rational(parse_rational("2/4")) == "1/2"
    assert format_rational(Fraction(-4, 2)) == "-2"


@given(rationals)
def test_format_parse_roundtrip(x):
    assert parse_rational(format_rational(x)) == x


def test_identity_and_products():
    m = Mat([[1, 2], [3, 4]], 2)
    assert Mat.identity(2) @ m == m
    assert m.apply((1, 1)) == (3, 7)
    assert m.T.rows == ((1, 3), (2, 4))
    assert m.trace() == 5
    with pytest.raises(DimensionMismatch):
        m @ Mat.identity(3)


@given(square_matrices(max_n=5))
def test_rank_matches_gauss(m):
    assert rank(m) == oracles.gauss_rank(m.rows)


@given(square_matrices(max_n=5))
def test_det_matches_leibniz(m):
    assert det(m) == oracles.leibniz_det(oracles.mat_of(m))


@given(square_matrices(max_n=4))
def test_inverse(m):
    if oracles.leibniz_det(oracles.mat_of(m)) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(m)
    else:
        assert inverse(m) @ m == Mat.identity(m.nrows)
        assert m @ inverse(m) == Mat.identity(m.nrows)


@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_kernel_basis(nr, nc, data):
    m = data.draw(matrices(nr, nc))
    ker = kernel_basis(m)
    assert len(ker) == nc - oracles.gauss_rank(m.rows)
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    if ker:
        assert oracles.gauss_rank([list(v) for v in ker]) == len(ker)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_solve(nr, nc, data):
    m = data.draw(matrices(nr, nc))
    rhs = data.draw(st.lists(rationals, min_size=nr, max_size=nr))
    res = solve(m, rhs)
    ref = oracles.gauss_solve(oracles.mat_of(m), rhs)
    assert (res is None) == (ref is None)
    if res is not None:
        x, hom = res
        assert list(m.apply(x)) == rhs
        assert len(hom) == nc - oracles.gauss_rank(m.rows)


@given(square_matrices(max_n=4))
def test_rref_is_reduced(m):
    red, pivots, r = rref(m)
    assert r == len(pivots) == oracles.gauss_rank(m.rows)
    for i, c in enumerate(pivots):
        assert red[i, c] == 1
        assert all(red[k, c] == 0 for k in range(red.nrows) if k != i)


@given(square_matrices(max_n=4))
def test_rref_transform(m):
    red, pivots, r, P = rref_with_transform(m)
    assert P @ m == red


def test_span_basis_canonical():
    a = span_basis([(1, 2, 0), (2, 4, 0), (0, 0, 3)], 3)
    b = span_basis([(0, 0, 1), (1, 2, 5)], 3)
    assert a == b
