"""Hom-Lie structures induced on a quadratic central extension.

Given an :class:`~homlie.cocycles.ExtensionBundle` ``(g0, B0, theta, g, B)``,
the metrics define ``h: g -> g0`` and ``k: g0 -> g`` by

    h = B0^sharp . iota^* . B^flat,        k = B^sharp . pi^* . B0^flat,

and from them the product ``mu(x, y) = h([x, y])`` together with the twists
``alpha(x + v) = T(x) + v`` and ``alpha'(x + v) = k(x)``, where ``T = pi . k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import anchors as A
from .cocycles import (
    Cocycle,
    ExtensionBundle,
    bracket_image,
    central_extend,
    cocycle_radicals,
    derivations_from_cocycle,
)
from .errors import DimensionMismatch, PreconditionError, ValidationError
from .forms import (
    GramForm,
    is_derivation,
    is_inner,
    is_skew_for,
    orthogonal_complement,
    require_nondegenerate,
)
from .lie import StructureConstants, Subspace, ad, bracket, center, image, kernel
from .linalg import Mat, Vec, inverse, is_zero, solve, stack_rows, unit, vadd, vsub, zero_vec
from .report import Report

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------- h and k

def hk_matrices(B0: GramForm, B: GramForm):
    """Matrices of ``h`` (n0 x N) and ``k`` (N x n0); V is the trailing block."""
    require_nondegenerate(B0, "B0")
    require_nondegenerate(B, "B")
    n0, N = B0.dim, B.dim
    if N < n0:
        raise DimensionMismatch("g is smaller than g0")
    G0inv = inverse(B0.gram.T)
    # iota^* keeps the g0 coordinates of a functional on g
    h = G0inv @ Mat(B.gram.T.rows[:n0], N)
    padded = stack_rows(B0.gram.T, Mat.zeros(N - n0, n0))
    k = inverse(B.gram.T) @ padded
    return h, k


@dataclass(frozen=True)
class HKPair:
    h: Mat
    k: Mat
    T: Mat
    R_matrix: Mat
    a_elems: tuple

    @property
    def n0(self) -> int:
        return self.T.nrows

    @property
    def r(self) -> int:
        return self.R_matrix.nrows

    def h_on_g0(self) -> Mat:
        return self.h.block(0, self.n0, 0, self.n0)


@dataclass(frozen=True)
class OrthoBasisWitness:
    """Elements ``a_i + w_i`` of ``g0^perp`` with ``B(a_i + w_i, v_j) = delta_ij``."""

    elems: tuple
    w: tuple = ()


def compute_hk(bundle: ExtensionBundle) -> HKPair:
    h, k = hk_matrices(bundle.B0, bundle.B)
    n0, r = bundle.n0, bundle.r
    hk = h @ k
    if hk != Mat.identity(n0):
        raise ValidationError(A.HK_ID, [{"indices": [i, j], "residual": hk[i, j] - int(i == j)}
                                        for i in range(n0) for j in range(n0) if hk[i, j] != int(i == j)])
    T = k.block(0, n0, 0, n0)
    R = k.block(n0, n0 + r, 0, n0)
    # R(x)_l = B0(a_l, x)  <=>  B0^T a_l = R[l]
    G0T_inv = inverse(bundle.B0.gram.T)
    a_elems = tuple(G0T_inv.apply(R.row(l)) for l in range(r))
    return HKPair(h, k, T, R, a_elems)


def _embed(bundle: ExtensionBundle, x: Sequence) -> Vec:
    return tuple(x) + zero_vec(bundle.r)


def _proj(bundle: ExtensionBundle, x: Sequence) -> Vec:
    return tuple(x[: bundle.n0])


def _apply_k(bundle, pair, x) -> Vec:
    return pair.k.apply(x)


def ortho_basis_witness(bundle: ExtensionBundle, pair: HKPair) -> Optional[OrthoBasisWitness]:
    """Solve ``B(a_i + w_i, v_j) = delta_ij`` and ``h(a_i + w_i) = 0`` for ``w_i`` in V."""
    n0, r, N = bundle.n0, bundle.r, bundle.dim
    G = bundle.B.gram
    vs = list(bundle.v_indices())
    rows = [[G[n0 + l, vs[j]] for l in range(r)] for j in range(r)]
    rows += [[pair.h[p, n0 + l] for l in range(r)] for p in range(n0)]
    m = Mat(rows, r)
    elems, ws = [], []
    for i, a in enumerate(pair.a_elems):
        ae = _embed(bundle, a)
        rhs = [Fraction(int(i == j)) - bundle.B.value(ae, unit(N, vs[j])) for j in range(r)]
        rhs += [-c for c in pair.h.apply(ae)]
        sol = solve(m, rhs)
        if sol is None:
            return None
        w = sol[0]
        ws.append(w)
        elems.append(tuple(a) + tuple(w))
    return OrthoBasisWitness(tuple(elems), tuple(ws))


def rho_matrices(bundle: ExtensionBundle, pair: HKPair) -> list:
    """``rho(e_i)`` for every basis vector of ``g``: ``y -> h([e_i, y])`` on ``g0``."""
    g, n0 = bundle.g, bundle.n0
    out = []
    for i in range(bundle.dim):
        cols = [pair.h.apply(g.tensor[i][j]) for j in range(n0)]
        out.append(Mat.from_columns(cols, n0))
    return out


def rho_of(bundle: ExtensionBundle, pair: HKPair, x: Sequence) -> Mat:
    g, n0 = bundle.g, bundle.n0
    cols = [pair.h.apply(bracket(g, x, g.e(j))) for j in range(n0)]
    return Mat.from_columns(cols, n0)


def rho(bundle: ExtensionBundle, pair: HKPair) -> list:
    """Verified ``rho`` table; raises :class:`ValidationError` on any failure."""
    mats = rho_matrices(bundle, pair)
    rep = Report("rho")
    _check_rho(bundle, pair, mats, rep)
    for c in rep.failed():
        raise ValidationError(c.anchor, c.failures)
    return mats


def _check_rho(bundle, pair, mats, rep: Report):
    g0, B0, n0 = bundle.g0, bundle.B0, bundle.n0
    fails = []
    for i, m in enumerate(mats):
        for a, b, res in is_derivation(g0, m):
            fails.append({"indices": [i, a, b], "residual": res, "kind": "Leibniz"})
        for a, b, res in is_skew_for(B0, m):
            fails.append({"indices": [i, a, b], "residual": res, "kind": "skew"})
    rep.record(A.RHO_DER, fails)
    fails = []
    T = pair.T
    for i in range(n0):
        for j in range(i + 1, n0):
            lhs = rho_of(bundle, pair, bundle.g.tensor[i][j])
            rhs = mats[i] @ T @ mats[j] - mats[j] @ T @ mats[i]
            if lhs != rhs:
                fails.append({"indices": [i, j], "residual": lhs - rhs})
    rep.record(A.RHO_REP, fails)


# ---------------------------------------------------------------- Hom-Lie structures

def twisted_jacobi_defect(mu: StructureConstants, alpha: Mat) -> list:
    n = mu.dim
    acols = alpha.columns()
    t = mu.tensor
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                r = vadd(
                    vadd(bracket(mu, acols[i], t[j][k]), bracket(mu, acols[j], t[k][i])),
                    bracket(mu, acols[k], t[i][j]),
                )
                if not is_zero(r):
                    out.append((i, j, k, r))
    return out


@dataclass(frozen=True)
class HomLieStructure:
    """Skew product ``mu`` with twist ``alpha``.

    Twisted Jacobi is enforced unless ``candidate`` is set.
    """

    mu: StructureConstants
    alpha: Mat
    candidate: bool = False

    def __post_init__(self):
        if not self.mu.skew:
            raise PreconditionError("Hom-Lie product must be skew")
        if self.alpha.shape != (self.mu.dim, self.mu.dim):
            raise DimensionMismatch(f"twist of shape {self.alpha.shape} on a {self.mu.dim}-dim space")
        if not self.candidate:
            bad = twisted_jacobi_defect(self.mu, self.alpha)
            if bad:
                raise ValidationError(A.TWISTED_JACOBI, [{"indices": [i, j, k], "residual": r} for i, j, k, r in bad])

    @property
    def dim(self) -> int:
        return self.mu.dim

    @property
    def alg_dim(self) -> int:
        return self.mu.dim

    def product(self, x, y) -> Vec:
        return bracket(self.mu, x, y)

    def twist(self, x) -> Vec:
        return self.alpha.apply(tuple(x))


def check_twisted_jacobi(hl: HomLieStructure) -> list:
    return twisted_jacobi_defect(hl.mu, hl.alpha)


def check_homlie_ideal(hl: HomLieStructure, sub: Subspace):
    """``(is_subalgebra, is_ideal)``; both require ``alpha(sub)`` inside ``sub``."""
    n = hl.dim
    stable = all(sub.contains(hl.twist(s)) for s in sub.basis)
    if not stable:
        return False, False
    closed = all(sub.contains(hl.product(x, y)) for x in sub.basis for y in sub.basis)
    ideal = all(sub.contains(hl.product(x, hl.mu.e(j))) for x in sub.basis for j in range(n))
    return closed, ideal


def build_mu(bundle: ExtensionBundle, pair: HKPair) -> StructureConstants:
    """``mu(x, y) = h([x, y])`` embedded in ``g``; checks ``k(mu(x, y)) = [x, y]``."""
    g, N = bundle.g, bundle.dim
    t = [[None] * N for _ in range(N)]
    bad = []
    for i in range(N):
        for j in range(N):
            m0 = pair.h.apply(g.tensor[i][j])
            t[i][j] = _embed(bundle, m0)
            if j > i:
                res = vsub(pair.k.apply(m0), g.tensor[i][j])
                if not is_zero(res):
                    bad.append({"indices": [i, j], "residual": res})
    if bad:
        raise ValidationError(A.MU_LIFT, bad)
    return StructureConstants(N, tuple(tuple(row) for row in t), g.basis, True)


def alpha_matrix(bundle: ExtensionBundle, pair: HKPair) -> Mat:
    n0, r = bundle.n0, bundle.r
    rows = [list(pair.T.row(i)) + [_ZERO] * r for i in range(n0)]
    rows += [[_ZERO] * n0 + [Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    return Mat(rows, n0 + r)


def alpha_prime_matrix(bundle: ExtensionBundle, pair: HKPair) -> Mat:
    return pair.k @ bundle.pi()


def build_alpha(bundle: ExtensionBundle, pair: HKPair, mu: Optional[StructureConstants] = None) -> HomLieStructure:
    """``(g, mu, alpha)`` with ``alpha(x + v) = T(x) + v``."""
    mu = mu or build_mu(bundle, pair)
    return HomLieStructure(mu, alpha_matrix(bundle, pair))


def alpha_prime_report(bundle: ExtensionBundle, pair: HKPair, hl: HomLieStructure) -> Report:
    g, g0, B = bundle.g, bundle.g0, bundle.B
    N, n0 = bundle.dim, bundle.n0
    ap = hl.alpha
    cols = ap.columns()
    rep = Report("alpha_prime")
    f1, f2, f3 = [], [], []
    for i in range(N):
        for j in range(N):
            r = vsub(ap.apply(g.tensor[i][j]), bracket(g, cols[i], g.e(j)))
            if not is_zero(r):
                f1.append({"indices": [i, j], "residual": r})
            s = B.value(cols[i], g.e(j)) - B.value(g.e(i), cols[j])
            if s:
                f2.append({"indices": [i, j], "residual": s})
            r = vsub(ap.apply(hl.mu.tensor[i][j]), g.tensor[i][j])
            if not is_zero(r):
                f3.append({"indices": [i, j], "residual": r})
    rep.record(A.AP_CENTROID, f1)
    rep.record(A.AP_SYM, f2)
    rep.record(A.AP_DELTA1, f3)
    f4 = []
    for i in range(n0):
        for j in range(n0):
            r = vsub(hl.product(cols[i], g.e(j)), _embed(bundle, g0.tensor[i][j]))
            if not is_zero(r):
                f4.append({"indices": [i, j], "residual": r})
    rep.record(A.AP_DELTA2, f4)
    return rep


def build_alpha_prime(bundle: ExtensionBundle, pair: HKPair, mu: Optional[StructureConstants] = None) -> HomLieStructure:
    """``(g, mu, alpha')`` with ``alpha'(x + v) = k(x)``; all companion relations verified."""
    mu = mu or build_mu(bundle, pair)
    hl = HomLieStructure(mu, alpha_prime_matrix(bundle, pair))
    rep = alpha_prime_report(bundle, pair, hl)
    for c in rep.failed():
        raise ValidationError(c.anchor, c.failures)
    return hl


def restrict_report(bundle: ExtensionBundle, hl0: HomLieStructure) -> Report:
    g0, B0, n0 = bundle.g0, bundle.B0, bundle.n0
    T = hl0.alpha
    tc = T.columns()
    rep = Report("restriction")
    f_sym, f_inv, f_d3 = [], [], []
    for i in range(n0):
        for j in range(n0):
            s = B0.value(tc[i], g0.e(j)) - B0.value(g0.e(i), tc[j])
            if s:
                f_sym.append({"indices": [i, j], "residual": s})
            target = g0.tensor[i][j]
            r1 = vsub(T.apply(hl0.mu.tensor[i][j]), target)
            r2 = vsub(hl0.product(tc[i], g0.e(j)), target)
            if not is_zero(r1) or not is_zero(r2):
                f_d3.append({"indices": [i, j], "residual": [r1, r2]})
            for k in range(n0):
                s = B0.value(hl0.mu.tensor[i][j], g0.e(k)) - B0.value(g0.e(i), hl0.mu.tensor[j][k])
                if s:
                    f_inv.append({"indices": [i, j, k], "residual": s})
    rep.record(A.ALPHA0_SYM, f_sym)
    rep.record(A.MU0_INV, f_inv)
    rep.record(A.DELTA3, f_d3)
    return rep


def restrict_homlie(bundle: ExtensionBundle, pair: HKPair, mu: Optional[StructureConstants] = None) -> HomLieStructure:
    """``(g0, mu0, alpha0 = T)``; raises if any companion identity fails."""
    mu = mu or build_mu(bundle, pair)
    n0 = bundle.n0
    t = tuple(tuple(mu.tensor[i][j][:n0] for j in range(n0)) for i in range(n0))
    mu0 = StructureConstants(n0, t, bundle.g0.basis, True)
    hl0 = HomLieStructure(mu0, pair.T)
    rep = restrict_report(bundle, hl0)
    for c in rep.failed():
        raise ValidationError(c.anchor, c.failures)
    return hl0


def build_from_hk(g0: StructureConstants, theta: Cocycle, h: Mat, k: Mat, sigma: Mat) -> HomLieStructure:
    """Metric-free construction from maps ``h``, ``k`` and ``sigma: g -> V`` (r x N).

    ``alpha = alpha0 . pi + sigma`` with ``alpha0 = pi . k``.
    """
    g = central_extend(g0, theta)
    n0, r = g0.dim, theta.dim_v
    N = n0 + r
    if h.shape != (n0, N) or k.shape != (N, n0) or sigma.shape != (r, N):
        raise DimensionMismatch("h, k or sigma has the wrong shape")
    kcols = k.columns()
    for i in range(n0):
        for j in range(n0):
            res = vsub(k.apply(g0.tensor[i][j]), bracket(g, kcols[i], g.e(j)))
            if not is_zero(res):
                raise PreconditionError(f"{A.HK_COND_I} fails at ({i}, {j}), residual {res}")
    for i in range(N):
        for j in range(i + 1, N):
            res = vsub(k.apply(h.apply(g.tensor[i][j])), g.tensor[i][j])
            if not is_zero(res):
                raise PreconditionError(f"{A.HK_COND_II} fails at ({i}, {j}), residual {res}")
    mu_t = tuple(tuple(tuple(h.apply(g.tensor[i][j])) + zero_vec(r) for j in range(N)) for i in range(N))
    mu = StructureConstants(N, mu_t, g.basis, True)
    alpha0 = k.block(0, n0, 0, n0)
    rows = [list(alpha0.row(i)) + [_ZERO] * r for i in range(n0)]
    rows += [list(sigma.row(l)) for l in range(r)]
    hl = HomLieStructure(mu, Mat(rows, N))
    if sigma.block(0, r, 0, n0).is_zero():
        g0_sub = Subspace.coordinate(N, range(n0))
        v_sub = Subspace.coordinate(N, range(n0, N))
        if not check_homlie_ideal(hl, g0_sub)[1] or not check_homlie_ideal(hl, v_sub)[1]:
            raise ValidationError(A.G0_IDEAL, [{"indices": [], "residual": "g0 or V not an ideal"}])
    return hl


# ---------------------------------------------------------------- diagnostics

def hk_diagnostics(bundle: ExtensionBundle, pair: HKPair) -> Report:
    """Every identity relating ``h``, ``k``, ``T``, ``rho`` and the ``a_i``."""
    g, g0, B, B0 = bundle.g, bundle.g0, bundle.B, bundle.B0
    N, n0, r = bundle.dim, bundle.n0, bundle.r
    h, k, T = pair.h, pair.k, pair.T
    rep = Report("hk")
    e = [g.e(i) for i in range(N)]
    e0 = [g0.e(i) for i in range(n0)]

    hk = h @ k
    rep.record(A.HK_ID, [{"indices": [i, j], "residual": hk[i, j] - int(i == j)}
                         for i in range(n0) for j in range(n0) if hk[i, j] != int(i == j)])

    f = []
    for i in range(N):
        hi = h.apply(e[i])
        for j in range(n0):
            s = B.value(e[i], e[j]) - B0.value(hi, e0[j])
            if s:
                f.append({"indices": [i, j], "residual": s})
    rep.record(A.H_PAIRING, f)
    f = []
    for i in range(n0):
        ki = k.apply(e0[i])
        for j in range(N):
            target = B0.entry(i, j) if j < n0 else _ZERO
            s = target - B.value(ki, e[j])
            if s:
                f.append({"indices": [i, j], "residual": s})
    rep.record(A.K_PAIRING, f)

    g0_sub, v_sub = bundle.g0_subspace(), bundle.v_subspace()
    ker_h, im_k = kernel(h), image(k)
    g0_perp = orthogonal_complement(B, g0_sub)
    v_perp = orthogonal_complement(B, v_sub)
    rep.expect(A.KER_H, ker_h == g0_perp, {"indices": [], "residual": [ker_h.dim, g0_perp.dim]})
    rep.expect(A.IM_K, im_k == v_perp, {"indices": [], "residual": [im_k.dim, v_perp.dim]})
    total = ker_h + im_k
    rep.expect(A.SPLIT_G, total.dim == N and ker_h.dim + im_k.dim == N,
               {"indices": [], "residual": [ker_h.dim, im_k.dim, total.dim]})

    f = []
    kcols = k.columns()
    for i in range(n0):
        for j in range(n0):
            res = vsub(k.apply(g0.tensor[i][j]), bracket(g, kcols[i], e[j]))
            if not is_zero(res):
                f.append({"indices": [i, j], "residual": res})
    rep.record(A.K_BRACKET, f)

    f = []
    for i in range(n0):
        expect = _embed(bundle, T.col(i))
        expect = vadd(expect, zero_vec(N))
        extra = [_ZERO] * N
        for l, a in enumerate(pair.a_elems):
            extra[n0 + l] = B0.value(a, e0[i])
        res = vsub(kcols[i], vadd(expect, tuple(extra)))
        if not is_zero(res):
            f.append({"indices": [i], "residual": res})
    rep.record(A.K_FORMULA, f)

    # T in the symmetric centroid, checked entrywise
    f = []
    tcols = T.columns()
    for i in range(n0):
        for j in range(n0):
            res = vsub(T.apply(g0.tensor[i][j]), bracket(g0, tcols[i], e0[j]))
            if not is_zero(res):
                f.append({"indices": [i, j], "residual": res, "kind": "centroid"})
            s = B0.value(tcols[i], e0[j]) - B0.value(e0[i], tcols[j])
            if s:
                f.append({"indices": [i, j], "residual": s, "kind": "symmetry"})
    rep.record(A.T_CENTROID, f)
    c0 = center(g0)
    kT = kernel(T)
    rep.expect(A.KER_T, c0.contains_subspace(kT), {"indices": [], "residual": "Ker(T) not central"})

    wit = ortho_basis_witness(bundle, pair)
    if wit is None:
        rep.record(A.ORTHO_BASIS, [{"indices": [], "residual": "no w_i solves the system"}])
    else:
        f = []
        for i, x in enumerate(wit.elems):
            for j in range(r):
                s = B.value(x, e[n0 + j]) - int(i == j)
                if s:
                    f.append({"indices": [i, j], "residual": s})
        rep.record(A.ORTHO_BASIS, f)
        span = Subspace(N, wit.elems)
        rep.expect(A.ORTHO_SPAN, span == g0_perp and span.dim == r,
                   {"indices": [], "residual": [span.dim, g0_perp.dim]})
        rep.data["witness"] = [list(x) for x in wit.elems]

    f = []
    for x in range(n0):
        for y in range(N):
            for z in range(N):
                yz = g.tensor[y][z]
                lhs = h.apply(bracket(g, e[x], yz))
                rhs = bracket(g0, e0[x], h.apply(yz))
                res = vsub(lhs, rhs)
                if not is_zero(res):
                    f.append({"indices": [x, y, z], "residual": res})
    rep.record(A.H_DOUBLE, f)

    mats = rho_matrices(bundle, pair)
    _check_rho(bundle, pair, mats, rep)

    Ds = derivations_from_cocycle(g0, B0, bundle.theta)
    f = []
    for i, (a, D) in enumerate(zip(pair.a_elems, Ds)):
        ra = rho_of(bundle, pair, _embed(bundle, a))
        if ra != D:
            f.append({"indices": [i], "residual": ra - D})
    rep.record(A.RHO_A, f)

    f = []
    for i, (a, D) in enumerate(zip(pair.a_elems, Ds)):
        ae = _embed(bundle, a)
        brk = Mat.from_columns([bracket(g, ae, e[j]) for j in range(n0)], N)
        if kernel(D) != kernel(brk):
            f.append({"indices": [i], "residual": [kernel(D).dim, kernel(brk).dim]})
    rep.record(A.KER_D, f)

    f = []
    for i in range(N):
        rhs = T.apply(h.apply(e[i]))
        for l, a in enumerate(pair.a_elems):
            c = B.value(e[i], e[n0 + l])
            if c:
                rhs = vadd(rhs, tuple(c * t for t in a))
        res = vsub(_proj(bundle, e[i]), rhs)
        if not is_zero(res):
            f.append({"indices": [i], "residual": res})
    rep.record(A.RECONSTRUCT, f)

    f = []
    for x in range(n0):
        adx = ad(g0, e0[x])
        m = mats[x]
        if T @ m != adx or m @ T != adx:
            f.append({"indices": [x], "residual": [T @ m - adx, m @ T - adx]})
    rep.record(A.T_RHO, f)
    f = []
    for i, (a, D) in enumerate(zip(pair.a_elems, Ds)):
        ada = ad(g0, a)
        if T @ D != ada or D @ T != ada:
            f.append({"indices": [i], "residual": [T @ D - ada, D @ T - ada]})
    rep.record(A.T_D, f)

    abelian = all(is_zero(g0.tensor[i][j]) for i in range(n0) for j in range(n0))
    rep.expect(A.IM_T_ZERO, (not T.is_zero()) or abelian, {"indices": [], "residual": "T = 0 on a non-abelian g0"})
    return rep


def structure_diagnostics(bundle: ExtensionBundle, pair: HKPair, hl: HomLieStructure) -> Report:
    """Consequences of some ``D_i`` being outer."""
    rep = Report("structure")
    anchors = [A.CENTER_V, A.MU_SURJ, A.KER_T_CENTER, A.IM_T_DERIVED, A.RADICAL_ZERO]
    g0, g = bundle.g0, bundle.g
    N, n0 = bundle.dim, bundle.n0
    Ds = derivations_from_cocycle(g0, bundle.B0, bundle.theta)
    outer = [i for i, D in enumerate(Ds) if is_inner(g0, D) is None]
    rep.data["outer_derivations"] = outer
    if not outer:
        for a in anchors:
            rep.unmet(a, "every D_i is inner")
        return rep
    V = bundle.v_subspace()
    cg, cmu = center(g), center(hl.mu)
    rep.expect(A.CENTER_V, cg == V and cmu == V, {"indices": [], "residual": [cg.dim, cmu.dim, V.dim]})
    g0_sub = bundle.g0_subspace()
    derived = Subspace(N, tuple(g.tensor[i][j] for i in range(N) for j in range(i + 1, N)))
    h_img = image(pair.h, derived)
    mu_gg = Subspace(N, tuple(hl.mu.tensor[i][j] for i in range(N) for j in range(i + 1, N)))
    mu_00 = Subspace(N, tuple(hl.mu.tensor[i][j] for i in range(n0) for j in range(i + 1, n0)))
    ok = h_img.dim == n0 and mu_gg == g0_sub and mu_00 == g0_sub
    rep.expect(A.MU_SURJ, ok, {"indices": [], "residual": [h_img.dim, mu_gg.dim, mu_00.dim]})
    rep.expect(A.KER_T_CENTER, center(g0) == kernel(pair.T), {"indices": [], "residual": "C(g0) != Ker(T)"})
    rep.expect(A.IM_T_DERIVED, bracket_image(g0) == image(pair.T), {"indices": [], "residual": "[g0,g0] != Im(T)"})
    _, joint = cocycle_radicals(g0, bundle.theta)
    rep.expect(A.RADICAL_ZERO, joint.is_zero(), {"indices": [], "residual": [list(v) for v in joint.basis]})
    return rep


def v_is_isotropic(bundle: ExtensionBundle) -> bool:
    B = bundle.B
    return all(B.entry(i, j) == 0 for i in bundle.v_indices() for j in bundle.v_indices())


def lemma42_projections(bundle: ExtensionBundle, pair: HKPair):
    """``(E, F, report)`` for ``E = alpha0 . h|g0`` and ``F = h . alpha0``; needs V isotropic."""
    if not v_is_isotropic(bundle):
        raise PreconditionError("V is not isotropic for B")
    n0, r, N = bundle.n0, bundle.r, bundle.dim
    T, h = pair.T, pair.h
    h0 = pair.h_on_g0()
    E = T @ h0
    F = h @ (bundle.iota() @ T)
    rep = Report("projections")
    g0_full = Subspace.full(n0)
    a_sub = Subspace(n0, pair.a_elems)
    im_T, ker_T = image(T), kernel(T)
    a_perp = orthogonal_complement(bundle.B0, a_sub)

    ok = (E @ E == E and image(E) == im_T and kernel(E) == a_sub
          and im_T.dim + a_sub.dim == n0 and (im_T + a_sub) == g0_full)
    rep.expect(A.E_PROJ, ok, {"indices": [], "residual": [im_T.dim, a_sub.dim]})
    ok = (F @ F == F and kernel(F) == ker_T and image(F) == a_perp
          and ker_T.dim + a_perp.dim == n0 and (ker_T + a_perp) == g0_full)
    rep.expect(A.F_PROJ, ok, {"indices": [], "residual": [ker_T.dim, a_perp.dim]})

    hv = [h.apply(unit(N, n0 + l)) for l in range(r)]
    hv_sub = Subspace(n0, tuple(hv))
    rep.expect(A.INDEP, a_sub.dim == r and hv_sub.dim == r, {"indices": [], "residual": [a_sub.dim, hv_sub.dim]})
    h_a = Subspace(n0, tuple(h.apply(_embed(bundle, a)) for a in pair.a_elems))
    ok = hv_sub == ker_T and ker_T.dim == r and hv_sub.contains_subspace(h_a)
    rep.expect(A.H_V_BIJ, ok, {"indices": [], "residual": [hv_sub.dim, ker_T.dim]})

    f = []
    for i in range(n0):
        ti = _embed(bundle, T.col(i))
        for l in range(r):
            s = bundle.B.value(ti, unit(N, n0 + l))
            if s:
                f.append({"indices": [i, n0 + l], "residual": s})
    rep.record(A.IM_ALPHA0_V, f)
    reg = T @ h0 @ T
    rep.expect(A.ALPHA0_REG, reg == T, {"indices": [], "residual": reg - T})

    f = []
    for i in range(n0):
        x = unit(n0, i)
        rhs = F.apply(x)
        for a, hvi in zip(pair.a_elems, hv):
            c = bundle.B0.value(a, x)
            if c:
                rhs = vadd(rhs, tuple(c * t for t in hvi))
        res = vsub(x, rhs)
        if not is_zero(res):
            f.append({"indices": [i], "residual": res})
    rep.record(A.L1, f)
    return E, F, rep


def homlie_variants_report(
    bundle: ExtensionBundle,
    pair: HKPair,
    hl: HomLieStructure,
    hlp: HomLieStructure,
    hl0: HomLieStructure,
) -> Report:
    """Relations among ``(g, mu, alpha)``, ``(g, mu, alpha')`` and ``(g0, mu0, alpha0)``."""
    g, N, n0 = bundle.g, bundle.dim, bundle.n0
    mu = hl.mu
    rep = Report("Hom-Lie variants")
    f = []
    for i in range(N):
        for j in range(i + 1, N):
            res = vsub(pair.k.apply(mu.tensor[i][j][:n0]), g.tensor[i][j])
            if not is_zero(res) or any(mu.tensor[i][j][n0:]):
                f.append({"indices": [i, j], "residual": res})
    rep.record(A.MU_LIFT, f)
    g0_sub, v_sub = bundle.g0_subspace(), bundle.v_subspace()
    rep.record(A.MU_IMAGE, [{"indices": [i, j], "residual": mu.tensor[i][j]}
                            for i in range(N) for j in range(N) if not g0_sub.contains(mu.tensor[i][j])])
    rep.record(A.MU_V, [{"indices": [l, j], "residual": mu.tensor[l][j]}
                        for l in bundle.v_indices() for j in range(N) if not is_zero(mu.tensor[l][j])])
    rep.record(A.ALPHA_V, [{"indices": [l], "residual": vsub(hl.alpha.col(l), unit(N, l))}
                           for l in bundle.v_indices() if hl.alpha.col(l) != unit(N, l)])
    pi = bundle.pi()
    f = []
    for i in range(n0):
        a, b, t = pi.apply(hl.alpha.col(i)), pi.apply(hlp.alpha.col(i)), pair.T.col(i)
        if a != t or b != t:
            f.append({"indices": [i], "residual": [vsub(a, t), vsub(b, t)]})
    rep.record(A.SAME_T, f)
    rep.merge(alpha_prime_report(bundle, pair, hlp))
    rep.merge(restrict_report(bundle, hl0))
    closed, ideal = check_homlie_ideal(hl, g0_sub)
    rep.expect(A.G0_IDEAL, ideal and check_homlie_ideal(hl, v_sub)[1],
               {"indices": [], "residual": "g0 or V is not a Hom-Lie ideal"})
    _, ideal_p = check_homlie_ideal(hlp, g0_sub)
    theta_zero = bundle.theta.is_zero()
    rep.expect(A.G0_NOT_IDEAL_AP, ideal_p == theta_zero, {"indices": [], "residual": [ideal_p, theta_zero]})
    rep.data["g0_ideal_for_alpha_prime"] = ideal_p
    # the metric-free construction with sigma = 0 must reproduce (g, mu, alpha)
    try:
        rebuilt = build_from_hk(bundle.g0, bundle.theta, pair.h, pair.k, Mat.zeros(bundle.r, N))
    except PreconditionError as exc:
        anchor = A.HK_COND_I if A.HK_COND_I in str(exc) else A.HK_COND_II
        rep.record(anchor, [{"indices": [], "residual": str(exc)}])
    else:
        rep.record(A.HK_COND_I, [])
        rep.record(A.HK_COND_II, [])
        same = rebuilt.mu.tensor == mu.tensor and rebuilt.alpha.block(0, n0, 0, N) == hl.alpha.block(0, n0, 0, N)
        rep.expect(A.HK_COND_II, same, {"indices": [], "residual": "rebuilt structure differs"})
    return rep
