from fractions import Fraction

import pytest
from hypothesis import given

from homlie.errors import PreconditionError
from homlie.lie import (
    StructureConstants,
    Subspace,
    ad,
    bracket,
    center,
    derived_series,
    is_homomorphism,
    is_nilpotent,
    is_solvable,
    jacobi_defect,
    killing_form,
    lower_central_series,
    nilpotency_class,
)
from homlie.linalg import Mat, unit
from homlie.zoo import abelian, example_g0_algebra, heisenberg3, osc4, sl2, stock

import oracles
from strategies import change_basis, invertible_int_matrices, quadratic_lie

A1, A2, A3, B1, B2, B3, V1, V2, V3 = range(9)


def test_example_brackets(ex_bundle):
    g0, g = ex_bundle.g0, ex_bundle.g
    assert bracket(g0, unit(6, A1), unit(6, A2)) == unit(6, B3)
    assert bracket(g, unit(9, A1), unit(9, A2)) == tuple(a + b for a, b in zip(unit(9, B3), unit(9, V3)))


def test_skew_square_zero():
    g = sl2()
    x = (Fraction(1), Fraction(2), Fraction(-3))
    assert bracket(g, x, x) == (0, 0, 0)


def test_skew_violation_rejected():
    t = [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]
    with pytest.raises(PreconditionError):
        StructureConstants(2, t)


def test_jacobi_examples(ex_bundle):
    assert jacobi_defect(ex_bundle.g) == []
    solv = StructureConstants.from_products(3, {(0, 1): {0: 1}, (1, 2): {2: 1}})
    assert jacobi_defect(solv) == []
    assert oracles.jacobi_ok(solv.tensor)
    t = [[list(c) for c in row] for row in ex_bundle.g.tensor]
    t[A1][B1][A1] += 1
    t[B1][A1][A1] -= 1
    bad = StructureConstants(9, t)
    assert jacobi_defect(bad)
    assert not oracles.jacobi_ok(bad.tensor)


def test_sign_flip_of_b3_keeps_jacobi(ex_bundle):
    # b3 only brackets into the central V, so flipping its coefficient in
    # [a1,a2] leaves every cyclic sum zero; invariance of B is what breaks
    from homlie.forms import check_invariant

    t = [[list(c) for c in row] for row in ex_bundle.g.tensor]
    t[A1][A2][B3] = Fraction(-1)
    t[A2][A1][B3] = Fraction(1)
    flipped = StructureConstants(9, t)
    assert jacobi_defect(flipped) == []
    assert oracles.jacobi_ok(flipped.tensor)
    assert check_invariant(flipped, ex_bundle.B)


def test_ad_examples():
    g0 = example_g0_algebra()
    m = ad(g0, unit(6, A1))
    assert m.apply(unit(6, A2)) == unit(6, B3)
    assert m.apply(unit(6, A3)) == tuple(-a for a in unit(6, B2))
    for j in (A1, B1, B2, B3):
        assert m.apply(unit(6, j)) == (0,) * 6
    assert ad(abelian(3), (1, 2, 3)).is_zero()
    assert ad(sl2(), unit(3, 2)) == Mat.diag([2, -2, 0])


def test_killing_sl2_osc4():
    k = killing_form(sl2()).gram
    e, f, h = 0, 1, 2
    assert k[h, h] == 8 and k[e, f] == 4 and k[f, e] == 4
    assert k[e, e] == k[f, f] == k[e, h] == k[f, h] == 0
    ko = killing_form(osc4()).gram
    assert ko[0, 0] == -2
    assert sum(1 for i in range(4) for j in range(4) if ko[i, j]) == 1


@pytest.mark.parametrize("alg", [heisenberg3(), example_g0_algebra(), stock("example").algebra])
def test_nilpotent_killing_zero(alg):
    assert is_nilpotent(alg)
    assert killing_form(alg).is_zero()


def test_killing_matches_oracle():
    for alg in (sl2(), osc4(), heisenberg3()):
        assert [list(r) for r in killing_form(alg).gram.rows] == oracles.killing(alg.tensor)


def test_center_and_series(ex_bundle):
    g0 = ex_bundle.g0
    assert center(g0) == Subspace.coordinate(6, [B1, B2, B3])
    series = lower_central_series(ex_bundle.g)
    assert [s.dim for s in series] == [9, 6, 3, 0]
    assert nilpotency_class(ex_bundle.g) == 3
    assert nilpotency_class(g0) == 2
    ab = abelian(4)
    assert center(ab) == Subspace.full(4)
    assert is_nilpotent(ab) and is_solvable(ab)


def test_osc4_solvable_not_nilpotent():
    g = osc4()
    assert is_solvable(g)
    assert not is_nilpotent(g)
    assert derived_series(g)[-1].is_zero()


def test_sl2_not_solvable():
    assert not is_solvable(sl2())


@given(quadratic_lie())
def test_killing_invariant(data):
    _, alg, _ = data
    k = killing_form(alg)
    n = alg.dim
    for i in range(n):
        for j in range(n):
            for l in range(n):
                assert k.value(alg.tensor[i][j], unit(n, l)) == k.value(unit(n, i), alg.tensor[j][l])


@given(quadratic_lie())
def test_center_in_kernel_of_ad(data):
    _, alg, _ = data
    c = center(alg)
    for i in range(alg.dim):
        m = ad(alg, unit(alg.dim, i))
        assert all(not any(m.apply(v)) for v in c.basis)


@given(invertible_int_matrices(3))
def test_change_of_basis_is_homomorphism(P):
    g = sl2()
    h = change_basis(g, P)
    assert jacobi_defect(h) == []
    assert is_homomorphism(P, h, g) == []
