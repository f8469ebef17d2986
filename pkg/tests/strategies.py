"""Hypothesis strategies and seeded builders shared by the tests."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from homlie.forms import GramForm
from homlie.lie import StructureConstants
from homlie.linalg import Mat, inverse
from homlie.zoo import osc4, osc4_metric, sl2
from homlie.lie import killing_form

small_ints = st.integers(min_value=-4, max_value=4)
rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


def matrices(nrows, ncols, elements=rationals):
    return st.lists(st.lists(elements, min_size=ncols, max_size=ncols), min_size=nrows, max_size=nrows).map(
        lambda rows: Mat(rows, ncols)
    )


@st.composite
def square_matrices(draw, max_n=5, elements=rationals):
    n = draw(st.integers(1, max_n))
    return draw(matrices(n, n, elements))


@st.composite
def invertible_int_matrices(draw, n):
    """``L U`` with unit lower ``L`` and upper ``U`` with diagonal in {±1, ±2}."""
    entries = draw(st.lists(st.integers(-2, 2), min_size=n * n, max_size=n * n))
    diag = draw(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=n, max_size=n))
    L = Mat([[1 if i == j else (entries[i * n + j] if j < i else 0) for j in range(n)] for i in range(n)], n)
    U = Mat([[diag[i] if i == j else (entries[i * n + j] if j > i else 0) for j in range(n)] for i in range(n)], n)
    return L @ U


def change_basis(alg: StructureConstants, P: Mat) -> StructureConstants:
    """Structure constants in the basis given by the columns of ``P``."""
    n = alg.dim
    Pinv = inverse(P)
    cols = P.columns()
    t = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(Pinv.apply(alg.product(cols[i], cols[j])))
        t.append(row)
    return StructureConstants(n, t, (), alg.skew)


def transform_form(form: GramForm, P: Mat) -> GramForm:
    return GramForm(form.dim, P.T @ form.gram @ P, form.symmetric)


@st.composite
def quadratic_lie(draw):
    """``sl2`` or ``osc4`` with its metric, in a random integer basis."""
    name = draw(st.sampled_from(["sl2", "osc4"]))
    if name == "sl2":
        alg = sl2()
        form = killing_form(alg)
    else:
        alg, form = osc4(), osc4_metric()
    P = draw(invertible_int_matrices(alg.dim))
    return name, change_basis(alg, P), transform_form(form, P)
