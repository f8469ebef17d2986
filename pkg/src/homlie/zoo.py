"""Stock algebras, forms and bundles used as fixtures and examples.

The worked example lives on ``g0 = a + b`` with basis ``a1, a2, a3, b1, b2, b3``
(indices 0..5). With ``s`` the cyclic shift ``1 -> 2 -> 3 -> 1`` the bracket is
``[a_i, a_s(i)] = b_s2(i)`` and ``b`` is central. ``V`` adds ``v1, v2, v3``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cocycles import Cocycle, ExtensionBundle, central_extend, cocycle_from_derivations
from .errors import PreconditionError
from .forms import GramForm, check_invariant, skew_derivation_space
from .lie import StructureConstants, killing_form
from .linalg import Mat, det, frac

_ZERO = Fraction(0)
_ONE = Fraction(1)

A_LABELS = ("a1", "a2", "a3")
B_LABELS = ("b1", "b2", "b3")
V_LABELS = ("v1", "v2", "v3")
G0_LABELS = A_LABELS + B_LABELS


def _s(i: int) -> int:
    return (i + 1) % 3


def _s2(i: int) -> int:
    return (i + 2) % 3


def example_g0_algebra() -> StructureConstants:
    prods = {(i, _s(i)): {3 + _s2(i): 1} for i in range(3)}
    return StructureConstants.from_products(6, prods, G0_LABELS)


def example_derivations() -> list:
    """``D_1, D_2, D_3`` on the 6-dim ``g0``."""
    cols = [[[_ZERO] * 6 for _ in range(6)] for _ in range(3)]  # cols[d][input][output]
    for i in range(3):
        si, s2 = _s(i), _s2(i)
        # D_i(a_s(i)) = a_s2(i) + b_s2(i),  D_s(i)(a_i) = -(same)
        cols[i][si][s2] += 1
        cols[i][si][3 + s2] += 1
        cols[si][i][s2] -= 1
        cols[si][i][3 + s2] -= 1
        # D_i(b_s(i)) = b_s2(i),  D_s(i)(b_i) = -b_s2(i)
        cols[i][3 + si][3 + s2] += 1
        cols[si][3 + i][3 + s2] -= 1
    return [Mat.from_columns([tuple(c) for c in cols[d]], 6) for d in range(3)]


def _as_beta(beta) -> Mat:
    if beta is None:
        return Mat.identity(3)
    m = beta if isinstance(beta, Mat) else Mat(beta, 3)
    if m.shape != (3, 3):
        raise PreconditionError("beta must be 3x3")
    return m


def example_g0(beta=None):
    """``(g0, B0, [D1, D2, D3])`` with ``B0(a_j, b_k) = beta[j][k]``.

    Invariance of ``B0`` forces ``beta`` to be a nonzero multiple of the identity;
    any other choice raises :class:`PreconditionError`.
    """
    beta = _as_beta(beta)
    if det(beta) == 0:
        raise PreconditionError("beta must be invertible")
    g0 = example_g0_algebra()
    g = [[_ZERO] * 6 for _ in range(6)]
    for j in range(3):
        for k in range(3):
            g[j][3 + k] = g[3 + k][j] = beta[j, k]
    B0 = GramForm(6, Mat(g, 6), beta == beta.T)
    if not B0.symmetric or check_invariant(g0, B0):
        raise PreconditionError("B0 is not a symmetric invariant form for this beta (only scalar beta works)")
    return g0, B0, example_derivations()


def example_bundle(beta=None) -> ExtensionBundle:
    """The 9-dim extension with ``theta(x, y) = sum_i B0(D_i x, y) v_i``.

    For ``beta = c Id`` the metric on ``g`` is ``B(b_i, b_j) = delta_ij`` and
    ``B(a_i, v_j) = delta_ij / c``, all other basis pairings zero.
    """
    g0, B0, ds = example_g0(beta)
    c = B0.entry(0, 3)
    theta = cocycle_from_derivations(g0, B0, ds, V_LABELS)
    g = central_extend(g0, theta)
    G = [[_ZERO] * 9 for _ in range(9)]
    for i in range(3):
        G[3 + i][3 + i] = _ONE
        G[i][6 + i] = G[6 + i][i] = _ONE / c
    return ExtensionBundle(g0, B0, theta, g, GramForm(9, Mat(G, 9), True))


# ---------------------------------------------------------------- stock algebras

def abelian(n: int) -> StructureConstants:
    return StructureConstants.zero(n)


def heisenberg3() -> StructureConstants:
    return StructureConstants.from_products(3, {(0, 1): {2: 1}}, ("x", "y", "z"))


def sl2() -> StructureConstants:
    # basis e, f, h
    return StructureConstants.from_products(
        3, {(2, 0): {0: 2}, (2, 1): {1: -2}, (0, 1): {2: 1}}, ("e", "f", "h")
    )


def osc4() -> StructureConstants:
    # basis d, x, y, z
    return StructureConstants.from_products(
        4, {(0, 1): {2: 1}, (0, 2): {1: -1}, (1, 2): {3: 1}}, ("d", "x", "y", "z")
    )


def osc4_metric() -> GramForm:
    g = [[_ZERO] * 4 for _ in range(4)]
    g[0][3] = g[3][0] = g[1][1] = g[2][2] = _ONE
    return GramForm(4, Mat(g, 4), True)


def gl2_matrix_algebra() -> StructureConstants:
    """Associative 2x2 matrices, basis E11, E12, E21, E22."""
    idx = {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}
    t = [[[_ZERO] * 4 for _ in range(4)] for _ in range(4)]
    for (a, b), p in idx.items():
        for (c, d), q in idx.items():
            if b == c:
                t[p][q][idx[(a, d)]] = _ONE
    return StructureConstants(4, t, ("E11", "E12", "E21", "E22"), skew=False)


def field_sum2() -> StructureConstants:
    """``Q + Q`` with componentwise product."""
    t = [[[_ZERO] * 2 for _ in range(2)] for _ in range(2)]
    t[0][0][0] = t[1][1][1] = _ONE
    return StructureConstants(2, t, ("u1", "u2"), skew=False)


def trivial_extension(g0: StructureConstants, B0: GramForm, r: int, B_V=None, scale=1) -> ExtensionBundle:
    """Zero cocycle; ``B = scale * B0`` on ``g0`` and ``B_V`` on ``V``, block diagonal."""
    n = g0.dim
    scale = frac(scale)
    BV = Mat.identity(r) if B_V is None else (B_V if isinstance(B_V, Mat) else Mat(B_V, r))
    G = [[_ZERO] * (n + r) for _ in range(n + r)]
    for i in range(n):
        for j in range(n):
            G[i][j] = scale * B0.entry(i, j)
    for i in range(r):
        for j in range(r):
            G[n + i][n + j] = BV[i, j]
    theta = Cocycle.zero(g0, r)
    return ExtensionBundle(g0, B0, theta, central_extend(g0, theta), GramForm(n + r, Mat(G, n + r), True))


@dataclass(frozen=True)
class ZooEntry:
    name: str
    algebra: StructureConstants
    form: Optional[GramForm] = None
    bundle: Optional[ExtensionBundle] = None


def _lie_with_form(name: str) -> ZooEntry:
    if name == "sl2":
        a = sl2()
        return ZooEntry(name, a, killing_form(a))
    if name == "osc4":
        return ZooEntry(name, osc4(), osc4_metric())
    if name.startswith("abelian_"):
        n = int(name.split("_", 1)[1])
        return ZooEntry(name, abelian(n), GramForm.identity(n))
    if name == "heisenberg3":
        return ZooEntry(name, heisenberg3(), None)
    if name == "example_g0":
        g0, B0, _ = example_g0()
        return ZooEntry(name, g0, B0)
    raise KeyError(f"unknown zoo algebra {name!r}")


def stock(name: str, **params) -> ZooEntry:
    """Look up a fixture by name.

    Names: ``abelian_<n>``, ``heisenberg3``, ``sl2``, ``osc4``, ``gl2``,
    ``field_sum2``, ``example_g0``, ``example`` (the 9-dim bundle, optional
    ``beta``) and ``trivial_extension`` (``g0_name``, ``r``, optional ``B_V``
    and ``scale``).
    """
    if name == "gl2":
        return ZooEntry(name, gl2_matrix_algebra())
    if name == "field_sum2":
        return ZooEntry(name, field_sum2())
    if name == "example":
        b = example_bundle(params.get("beta"))
        return ZooEntry(name, b.g, b.B, b)
    if name == "trivial_extension":
        base = _lie_with_form(params.get("g0_name", "sl2"))
        if base.form is None:
            raise KeyError(f"{base.name} carries no metric")
        b = trivial_extension(base.algebra, base.form, int(params.get("r", 1)), params.get("B_V"), params.get("scale", 1))
        return ZooEntry(name, b.g, b.B, b)
    return _lie_with_form(name)


ZOO_LIE_NAMES = ("abelian_1", "abelian_2", "abelian_4", "heisenberg3", "sl2", "osc4", "example_g0", "example")


# ---------------------------------------------------------------- seeded generators

def random_nondegenerate_symmetric(rng: random.Random, n: int, bound: int = 3) -> Mat:
    while True:
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                g[i][j] = g[j][i] = rng.randint(-bound, bound)
        m = Mat(g, n)
        if det(m) != 0:
            return m


TRIVIAL_BASES = ("sl2", "osc4", "abelian_4")


def random_trivial_extension(seed: int, base: Optional[str] = None, r: Optional[int] = None) -> ExtensionBundle:
    """Trivial extension of sl2, osc4 or abelian_4 by V of dimension 1 to 3.

    ``base`` and ``r`` are drawn from the seed unless given.
    """
    rng = random.Random(seed)
    name = rng.choice(TRIVIAL_BASES)
    dim_v = rng.randint(1, 3)
    base = _lie_with_form(base or name)
    r = r or dim_v
    scale = rng.choice([-3, -2, -1, 1, 2, 3])
    B0 = base.form
    if base.name.startswith("abelian_"):
        B0 = GramForm(base.algebra.dim, random_nondegenerate_symmetric(rng, base.algebra.dim), True)
    return trivial_extension(base.algebra, B0, r, random_nondegenerate_symmetric(rng, r), scale)


def random_skew_derivations(seed: int, g0: StructureConstants, B0: GramForm, r: int, bound: int = 2) -> list:
    """``r`` random integer combinations of a basis of the B0-skew derivations."""
    rng = random.Random(seed)
    basis = skew_derivation_space(g0, B0)
    out = []
    for _ in range(r):
        m = Mat.zeros(g0.dim, g0.dim)
        for b in basis:
            c = rng.randint(-bound, bound)
            if c:
                m = m + b.scale(c)
        out.append(m)
    return out


def random_beta_scalar(seed: int) -> Fraction:
    rng = random.Random(seed)
    while True:
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        if c:
            return c


def random_example_bundle(seed: int) -> ExtensionBundle:
    c = random_beta_scalar(seed)
    return example_bundle(Mat.identity(3).scale(c))
