from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homlie.construct import compute_hk
from homlie.errors import PreconditionError
from homlie.forms import check_invariant, is_derivation, is_inner, is_nondegenerate, is_skew_for
from homlie.lie import Subspace, is_nilpotent, is_solvable, jacobi_defect, killing_form, lower_central_series
from homlie.linalg import Mat, unit
from homlie.zoo import (
    ZOO_LIE_NAMES,
    example_bundle,
    example_g0,
    random_example_bundle,
    random_trivial_extension,
    stock,
)

import oracles

A1, A2, A3, B1, B2, B3, V1, V2, V3 = range(9)


@pytest.mark.parametrize("name", ZOO_LIE_NAMES)
def test_stock_entries_valid(name):
    e = stock(name)
    assert jacobi_defect(e.algebra) == []
    assert oracles.jacobi_ok(e.algebra.tensor)
    if e.form is not None:
        assert check_invariant(e.algebra, e.form) == []
        assert is_nondegenerate(e.form)


def test_stock_sl2_killing():
    assert killing_form(stock("sl2").algebra).gram[2, 2] == 8


def test_stock_osc4():
    g = stock("osc4").algebra
    assert is_solvable(g) and not is_nilpotent(g)


def test_stock_trivial_extension_h_is_projection():
    b = stock("trivial_extension", g0_name="sl2", r=1, B_V=[["1"]]).bundle
    pair = compute_hk(b)
    # B restricts to B0 on g0, so h is the projection
    for i in range(4):
        x = unit(4, i)
        assert pair.h.apply(x) == (x[:3] if i < 3 else (0, 0, 0))


def test_unknown_name():
    with pytest.raises(KeyError):
        stock("nope")
    with pytest.raises(KeyError):
        stock("trivial_extension", g0_name="heisenberg3")


def test_example_g0_properties():
    g0, B0, ds = example_g0()
    assert is_nilpotent(g0)
    assert [s.dim for s in lower_central_series(g0)] == [6, 3, 0]
    derived = Subspace.coordinate(6, [B1, B2, B3])
    for D in ds:
        assert is_derivation(g0, D) == []
        assert is_skew_for(B0, D) == []
        assert is_inner(g0, D) is None
        assert not all(derived.contains(c) for c in D.columns())


def test_example_bundle_properties(ex_bundle):
    b = ex_bundle
    assert [s.dim for s in lower_central_series(b.g)] == [9, 6, 3, 0]
    G = b.B.gram
    for i in range(3):
        for j in range(3):
            assert G[B1 + i, B1 + j] == int(i == j)
            assert G[A1 + i, V1 + j] == int(i == j)
            assert G[A1 + i, A1 + j] == 0 and G[V1 + i, V1 + j] == 0
            assert G[B1 + i, A1 + j] == 0 and G[B1 + i, V1 + j] == 0


@given(st.integers(0, 10**6))
def test_scalar_beta_family(seed):
    b = random_example_bundle(seed)
    assert check_invariant(b.g, b.B) == []
    assert check_invariant(b.g0, b.B0) == []
    assert is_nondegenerate(b.B)


@pytest.mark.parametrize("beta", [
    [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
    [[2, 0, 0], [0, 1, 0], [0, 0, 1]],
])
def test_non_scalar_beta_rejected(beta):
    with pytest.raises(PreconditionError):
        example_bundle(beta)


def test_singular_beta_rejected():
    with pytest.raises(PreconditionError):
        example_g0(Mat.zeros(3, 3))


def test_scalar_beta_matches_identity_up_to_scale():
    c = Fraction(3)
    g0, B0, _ = example_g0(Mat.identity(3).scale(c))
    g0i, B0i, _ = example_g0()
    assert g0.tensor == g0i.tensor
    assert B0.gram == B0i.gram.scale(c)


@given(st.integers(0, 10**6))
def test_random_trivial_extensions_valid(seed):
    b = random_trivial_extension(seed)
    assert b.theta.is_zero()
    assert 1 <= b.r <= 3
    assert check_invariant(b.g, b.B) == []
    assert is_nondegenerate(b.B)
