"""The connection product on ``g``, the unital algebra ``G`` and its simplicity.

The connection product ``xy`` is the unique bilinear map with

    2 B(xy, z) = B(mu(x, y), z) + B(mu(z, x), y) + B(mu(z, y), x)

for all ``z``. ``G = Q + g`` carries
``nu((s, x), (t, y)) = (st + B(x, y), sy + tx + xy)`` with unit ``(1, 0)``.
Products are stored as non-skew :class:`StructureConstants`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from . import _kernels
from . import anchors as A
from .cocycles import ExtensionBundle, derivations_from_cocycle
from .construct import HKPair, HomLieStructure, build_mu, twisted_jacobi_defect
from .errors import PreconditionError, SingularFormError, ValidationError
from .forms import GramForm, is_nondegenerate, sharp
from .lie import StructureConstants, Subspace, bracket, image, kernel
from .linalg import Mat, Vec, dot, is_zero, solve, unit, vadd, vscale, vsub, zero_vec
from .report import Report

_ZERO = Fraction(0)
_ONE = Fraction(1)
_HALF = Fraction(1, 2)

BilinearProduct = StructureConstants

DEFAULT_PRIME = 2147483629  # largest prime below 2**31


def check_mu_invariance_of_B(bundle: ExtensionBundle, hl: HomLieStructure) -> bool:
    """Whether ``B`` is ``mu``-invariant; raises if that disagrees with all ``D_i = 0``."""
    B, N = bundle.B, bundle.dim
    mu = hl.mu.tensor
    invariant = True
    for i in range(N):
        for j in range(N):
            for k in range(N):
                if dot(mu[i][j], B.gram.col(k)) != dot(B.gram.rows[i], mu[j][k]):
                    invariant = False
                    break
            if not invariant:
                break
        if not invariant:
            break
    ds = derivations_from_cocycle(bundle.g0, bundle.B0, bundle.theta)
    all_zero = all(d.is_zero() for d in ds)
    if invariant != all_zero:
        raise ValidationError(A.MU_INV_B, [{"indices": [], "residual": [invariant, all_zero]}])
    return invariant


def connection_product(g: StructureConstants, B: GramForm, hl: HomLieStructure) -> StructureConstants:
    """Solve the pairing system for every basis pair and substitute back."""
    if not is_nondegenerate(B):
        raise SingularFormError("B is degenerate; the connection product is undefined")
    n = g.dim
    mu = hl.mu.tensor
    Bv = B.value
    e = [g.e(i) for i in range(n)]
    t = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            phi = tuple(
                _HALF * (Bv(mu[i][j], e[z]) + Bv(mu[z][i], e[j]) + Bv(mu[z][j], e[i])) for z in range(n)
            )
            xy = sharp(B, phi)
            if any(Bv(xy, e[z]) != phi[z] for z in range(n)):
                raise ValidationError(A.CONN_DEF, [{"indices": [i, j], "residual": xy}])
            t[i][j] = xy
    return StructureConstants(n, tuple(tuple(r) for r in t), g.basis, skew=False)


def _sq(conn: StructureConstants, y: Sequence) -> Vec:
    return bracket(conn, y, y)


def _random_vectors(n: int, count: int, seed: int, bound: int = 9) -> list:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        v = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))
        if any(v):
            out.append(v)
    return out


def _squares_vanish(conn: StructureConstants, sub: Subspace) -> list:
    """Failures of ``x x = 0`` on ``sub``: basis squares and symmetrized pairs."""
    bad = []
    b = sub.basis
    for p in range(len(b)):
        s = _sq(conn, b[p])
        if not is_zero(s):
            bad.append({"indices": [p], "residual": s})
        for q in range(p + 1, len(b)):
            s = vadd(bracket(conn, b[p], b[q]), bracket(conn, b[q], b[p]))
            if not is_zero(s):
                bad.append({"indices": [p, q], "residual": s})
    return bad


def thm44_report(
    bundle: ExtensionBundle,
    pair: HKPair,
    conn: StructureConstants,
    alpha_prime: Mat,
    mu: Optional[StructureConstants] = None,
    seed: int = 1,
    random_count: int = 50,
) -> Report:
    g, B, N = bundle.g, bundle.B, bundle.dim
    mu = mu or build_mu(bundle, pair)
    e = [g.e(i) for i in range(N)]
    rep = Report("connection")
    f1, f3 = [], []
    hcols = [bundle.embed(pair.h.apply(x)) for x in e]
    for i in range(N):
        for j in range(N):
            xy, yx = conn.tensor[i][j], conn.tensor[j][i]
            r = vsub(mu.tensor[i][j], vsub(xy, yx))
            if not is_zero(r):
                f1.append({"indices": [i, j], "residual": r})
            rhs = vadd(vsub(mu.tensor[i][j], bracket(g, hcols[i], e[j])), bracket(g, e[i], hcols[j]))
            r = vsub(vscale(2, xy), rhs)
            if not is_zero(r):
                f3.append({"indices": [i, j], "residual": r})
    rep.record(A.CONN_I, f1)
    f2 = []
    for i in range(N):
        for j in range(N):
            for k in range(N):
                s = B.value(conn.tensor[i][j], e[k]) + B.value(e[j], conn.tensor[i][k])
                if s:
                    f2.append({"indices": [i, j, k], "residual": s})
    rep.record(A.CONN_II, f2)
    rep.record(A.CONN_III, f3)

    ker_h = kernel(pair.h)
    im_ap = image(alpha_prime)
    f = [dict(x, subspace="Ker(h)") for x in _squares_vanish(conn, ker_h)]
    f += [dict(x, subspace="Im(α′)") for x in _squares_vanish(conn, im_ap)]
    rep.record(A.CONN_IV_SQ, f)
    f = []
    for p, a in enumerate(ker_h.basis):
        for j in range(N):
            y = vadd(a, alpha_prime.col(j))
            y2 = _sq(conn, y)
            ax = bracket(g, a, e[j])
            if y2 != ax or not im_ap.contains(ax):
                f.append({"indices": [p, j], "residual": vsub(y2, ax)})
    rep.record(A.CONN_IV_Y2, f)
    f = []
    samples = [("basis", i, e[i]) for i in range(N)]
    samples += [("random", i, y) for i, y in enumerate(_random_vectors(N, random_count, seed))]
    for kind, i, y in samples:
        y4 = _sq(conn, _sq(conn, y))
        if not is_zero(y4):
            f.append({"indices": [i], "sample": kind, "residual": y4})
    rep.record(A.CONN_IV_Y4, f)

    skew = all(
        is_zero(vadd(conn.tensor[i][j], conn.tensor[j][i])) for i in range(N) for j in range(i, N)
    )
    theta_zero = bundle.theta.is_zero()
    rep.expect(A.CONN_V, skew == theta_zero, {"indices": [], "residual": [skew, theta_zero]})
    rep.data["skew"] = skew
    rep.data["commutative"] = all(
        conn.tensor[i][j] == conn.tensor[j][i] for i in range(N) for j in range(i + 1, N)
    )
    return rep


# ---------------------------------------------------------------- the algebra G

@dataclass(frozen=True)
class UnitalAlgebraG:
    base: StructureConstants
    unit_index: int = 0

    @property
    def dim(self) -> int:
        return self.base.dim


def build_G(g: StructureConstants, B: GramForm, conn: StructureConstants, mu: Optional[StructureConstants] = None) -> UnitalAlgebraG:
    """``nu`` on ``Q + g``; index 0 is the unit. The unit law and, when ``mu`` is
    given, the commutator ``[(s,x),(t,y)] = (0, mu(x,y))`` are verified."""
    n = g.dim
    M = n + 1
    t = [[None] * M for _ in range(M)]
    for a in range(M):
        t[0][a] = unit(M, a)
        t[a][0] = unit(M, a)
    for i in range(n):
        for j in range(n):
            t[i + 1][j + 1] = (B.entry(i, j),) + tuple(conn.tensor[i][j])
    alg = StructureConstants(M, tuple(tuple(r) for r in t), ("1",) + tuple(g.basis), skew=False)
    bad = [a for a in range(M) if bracket(alg, unit(M, 0), unit(M, a)) != unit(M, a)
           or bracket(alg, unit(M, a), unit(M, 0)) != unit(M, a)]
    if bad:
        raise ValidationError(A.G_UNIT, [{"indices": [a], "residual": "unit law fails"} for a in bad])
    if mu is not None:
        f = []
        for a in range(M):
            for b in range(M):
                comm = vsub(alg.tensor[a][b], alg.tensor[b][a])
                want = (_ZERO,) + (tuple(mu.tensor[a - 1][b - 1]) if a and b else zero_vec(n))
                if comm != want:
                    f.append({"indices": [a, b], "residual": vsub(comm, want)})
        if f:
            raise ValidationError(A.G_COMM, f)
    return UnitalAlgebraG(alg, 0)


def _int_row(v: Sequence[Fraction]) -> list:
    d = 1
    for a in v:
        if a.denominator != 1:
            d = lcm(d, a.denominator)
    return [int(a * d) for a in v]


def ideal_closure(alg: StructureConstants, sub: Subspace) -> Subspace:
    """Smallest two-sided ideal containing ``sub``.

    Each round multiplies the new vectors on the left by every basis element,
    then on the right, until no new direction appears.
    """
    n = alg.dim
    span = _kernels.IntSpan(n)
    frontier = []
    for v in sub.basis:
        if span.insert(_int_row(v)):
            frontier.append(v)
    lefts = [alg.left_mult(i) for i in range(n)]
    rights = [alg.right_mult(i) for i in range(n)]
    while frontier and span.rank < n:
        nxt = []
        for ops in (lefts, rights):
            for v in frontier:
                for m in ops:
                    w = m.apply(v)
                    if any(w) and span.insert(_int_row(w)):
                        nxt.append(w)
        frontier = nxt
    if span.rank == n:
        return Subspace.full(n)
    return Subspace(n, tuple(tuple(Fraction(a) for a in r) for r in span.rows()))


def find_unit(alg: StructureConstants) -> Optional[Vec]:
    n = alg.dim
    rows, rhs = [], []
    for j in range(n):
        for k in range(n):
            rows.append([alg.tensor[i][j][k] for i in range(n)])
            rhs.append(Fraction(int(j == k)))
            rows.append([alg.tensor[j][i][k] for i in range(n)])
            rhs.append(Fraction(int(j == k)))
    sol = solve(Mat(rows, n), rhs)
    return None if sol is None else sol[0]


@dataclass
class ProbeResult:
    seed: int
    probes: int
    bound: int
    failures: list = field(default_factory=list)

    @property
    def all_generate(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        from .report import to_jsonable

        return {"seed": self.seed, "probes": self.probes, "bound": self.bound,
                "failures": to_jsonable(self.failures)}


def _mod_matrix(m: Mat, p: int) -> list:
    out = []
    for r in m.rows:
        for a in r:
            out.append(a.numerator * pow(a.denominator, -1, p) % p)
    return out


def _matmul_mod(a: list, b: list, n: int, p: int) -> list:
    out = [0] * (n * n)
    for i in range(n):
        ai = a[i * n:(i + 1) * n]
        row = [0] * n
        for k, x in enumerate(ai):
            if x:
                bk = b[k * n:(k + 1) * n]
                for j in range(n):
                    row[j] += x * bk[j]
        out[i * n:(i + 1) * n] = [v % p for v in row]
    return out


def multiplication_algebra_dim_modp(alg: StructureConstants, p: int = DEFAULT_PRIME) -> Optional[int]:
    """Dimension over GF(p) of the algebra generated by Id and all L_i, R_i.

    This never exceeds the rational dimension. Returns None when ``p`` divides
    a denominator of the structure constants.
    """
    n = alg.dim
    if any(a.denominator % p == 0 for row in alg.tensor for cell in row for a in cell):
        return None
    gens = [alg.left_mult(i) for i in range(n)] + [alg.right_mult(i) for i in range(n)]
    gens = [_mod_matrix(m, p) for m in gens]
    span = _kernels.ModPSpan(n * n, p)
    ident = _mod_matrix(Mat.identity(n), p)
    queue = []
    for m in [ident] + gens:
        if span.insert(m):
            queue.append(m)
    target = n * n
    while queue and span.rank < target:
        m = queue.pop(0)
        for gm in gens:
            w = _matmul_mod(gm, m, n, p)
            if span.insert(w):
                queue.append(w)
                if span.rank == target:
                    break
    return span.rank


def multiplication_algebra_dim_exact(alg: StructureConstants) -> int:
    n = alg.dim
    gens = [alg.left_mult(i) for i in range(n)] + [alg.right_mult(i) for i in range(n)]
    span = _kernels.IntSpan(n * n)
    queue = []
    for m in [Mat.identity(n)] + gens:
        if span.insert(_int_row(m.flatten())):
            queue.append(m)
    while queue and span.rank < n * n:
        m = queue.pop(0)
        for gm in gens:
            w = gm @ m
            if span.insert(_int_row(w.flatten())):
                queue.append(w)
    return span.rank


def multiplication_algebra_dim(alg: StructureConstants, p: int = DEFAULT_PRIME) -> int:
    """Exact dimension of the multiplication algebra.

    A full-rank result modulo ``p`` already certifies ``n^2``; otherwise the
    closure is recomputed over Q.
    """
    d = multiplication_algebra_dim_modp(alg, p)
    if d == alg.dim * alg.dim:
        return d
    return multiplication_algebra_dim_exact(alg)


@dataclass
class SimplicityResult:
    dim: int
    mult_algebra_dim: int
    absolutely_simple: bool
    probe: ProbeResult
    status: str

    def __iter__(self):
        return iter((self.mult_algebra_dim, self.absolutely_simple, self.probe))

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "mult_algebra_dim": self.mult_algebra_dim,
            "absolutely_simple": self.absolutely_simple,
            "status": self.status,
            "probe_failures": self.probe.to_dict()["failures"],
        }


def burnside_simplicity(alg: StructureConstants, seed: int = 1, probes: int = 200, bound: int = 9) -> SimplicityResult:
    """Certificate ``dim Mult(alg) = n^2`` plus a seeded ideal-generation probe."""
    if find_unit(alg) is None:
        raise PreconditionError("algebra has no unit element")
    n = alg.dim
    md = multiplication_algebra_dim(alg)
    simple = md == n * n
    rng = random.Random(seed)
    probe = ProbeResult(seed, probes, bound)
    for k in range(probes):
        while True:
            x = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))
            if any(x):
                break
        cl = ideal_closure(alg, Subspace(n, (x,)))
        if cl.dim < n:
            probe.failures.append({"probe": k, "element": x, "ideal_dim": cl.dim})
    status = "absolutely simple" if simple else "undetermined over the algebraic closure"
    return SimplicityResult(n, md, simple, probe, status)


def quotient_homlie(G: UnitalAlgebraG, alpha_prime: Mat, mu: StructureConstants):
    """Hom-Lie structure induced on ``G / Q 1_G`` identified with ``g``.

    Returns ``(structure, iso_ok)``; ``iso_ok`` compares the induced bracket with
    ``mu`` and the induced twist with ``alpha_prime`` entrywise.
    """
    alg = G.base
    M = alg.dim
    n = M - 1
    # 1_G is central for the commutator, so the commutator descends
    central = all(is_zero(vsub(alg.tensor[0][a], alg.tensor[a][0])) for a in range(M))
    t = tuple(
        tuple(tuple(vsub(alg.tensor[i + 1][j + 1], alg.tensor[j + 1][i + 1])[1:]) for j in range(n))
        for i in range(n)
    )
    qbr = StructureConstants(n, t, alg.basis[1:], True)
    # the twist (s, x) -> (s, alpha'(x)) fixes 1_G and descends to alpha'
    lifted = Mat([[_ONE] + [_ZERO] * n] + [[_ZERO] + list(alpha_prime.row(i)) for i in range(n)], M)
    induced = lifted.block(1, M, 1, M)
    candidate = bool(twisted_jacobi_defect(qbr, induced))
    hl = HomLieStructure(qbr, induced, candidate=candidate)
    iso_ok = central and not candidate and qbr.tensor == mu.tensor and induced == alpha_prime
    return hl, iso_ok


def g0_connection(
    bundle: ExtensionBundle,
    conn: StructureConstants,
    pair: HKPair,
    mu: Optional[StructureConstants] = None,
    seed: int = 1,
    random_count: int = 50,
):
    """``x . y = pi(xy)`` on ``g0`` with its report."""
    g0, n0 = bundle.g0, bundle.n0
    mu = mu or build_mu(bundle, pair)
    t = tuple(tuple(tuple(conn.tensor[i][j][:n0]) for j in range(n0)) for i in range(n0))
    dotp = StructureConstants(n0, t, g0.basis, skew=False)
    e0 = [g0.e(i) for i in range(n0)]
    h0 = pair.h_on_g0()
    hc = [h0.apply(x) for x in e0]
    mu0 = [[tuple(mu.tensor[i][j][:n0]) for j in range(n0)] for i in range(n0)]
    rep = Report("g0 connection")
    f1, f2 = [], []
    for i in range(n0):
        for j in range(n0):
            xy, yx = t[i][j], t[j][i]
            r = vsub(mu0[i][j], vsub(xy, yx))
            if not is_zero(r):
                f1.append({"indices": [i, j], "residual": r})
            rhs = vadd(vsub(mu0[i][j], bracket(g0, hc[i], e0[j])), bracket(g0, e0[i], hc[j]))
            r = vsub(vscale(2, xy), rhs)
            if not is_zero(r):
                f2.append({"indices": [i, j], "residual": r})
    rep.record(A.DOT_I, f1)
    rep.record(A.DOT_II, f2)
    ker_h0, im_t = kernel(h0), image(pair.T)
    f = _squares_vanish(dotp, ker_h0) + _squares_vanish(dotp, im_t)
    for p, a in enumerate(ker_h0.basis):
        for j in range(n0):
            y = vadd(a, pair.T.col(j))
            r = vsub(_sq(dotp, y), bracket(g0, a, e0[j]))
            if not is_zero(r):
                f.append({"indices": [p, j], "residual": r, "kind": "(a+T(x))^2"})
    for i, y in enumerate(e0 + _random_vectors(n0, random_count, seed)):
        y4 = _sq(dotp, _sq(dotp, y))
        if not is_zero(y4):
            f.append({"indices": [i], "residual": y4, "kind": "y^4"})
    rep.record(A.DOT_III, f)
    return dotp, rep
