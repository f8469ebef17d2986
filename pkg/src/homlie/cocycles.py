"""Two-cocycles with values in a trivial module V, and central extensions.

A cocycle on an ``n``-dimensional ``g0`` with values in ``V = Q^r`` is a
tensor ``theta[i][j]`` of V-coordinate vectors. The central extension puts
``g0`` first and ``V`` as the trailing ``r`` coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import anchors as A
from .errors import DimensionMismatch, PreconditionError, ValidationError
from .forms import (
    GramForm,
    check_invariant,
    is_derivation,
    is_nondegenerate,
    is_skew_for,
    require_nondegenerate,
    sharp_matrix,
)
from .lie import StructureConstants, Subspace, _require_lie, center, jacobi_defect, kernel
from .linalg import Mat, Vec, frac, is_zero, solve, vadd, zero_vec

_ZERO = Fraction(0)


def default_v_labels(r: int) -> tuple:
    return tuple(f"v{i + 1}" for i in range(r))


@dataclass(frozen=True)
class Cocycle:
    """Skew bilinear map ``g0 x g0 -> V`` stored as ``tensor[i][j]`` in V-coordinates."""

    dim_g0: int
    dim_v: int
    tensor: tuple
    basis_g0: tuple = ()
    basis_v: tuple = ()

    def __post_init__(self):
        n, r = self.dim_g0, self.dim_v
        t = tuple(tuple(tuple(frac(a) for a in cell) for cell in row) for row in self.tensor)
        if len(t) != n or any(len(row) != n for row in t) or any(len(c) != r for row in t for c in row):
            raise DimensionMismatch(f"cocycle tensor is not {n}x{n}x{r}")
        for i in range(n):
            for j in range(i, n):
                if any(a + b for a, b in zip(t[i][j], t[j][i])):
                    raise PreconditionError(f"cocycle is not skew at ({i}, {j})")
        object.__setattr__(self, "tensor", t)
        if not self.basis_g0:
            object.__setattr__(self, "basis_g0", tuple(f"e{i + 1}" for i in range(n)))
        if not self.basis_v:
            object.__setattr__(self, "basis_v", default_v_labels(r))
        if len(self.basis_g0) != n or len(self.basis_v) != r:
            raise DimensionMismatch("cocycle basis labels do not match its dimensions")

    @classmethod
    def zero(cls, g0: StructureConstants, r: int, basis_v: Sequence[str] = ()) -> "Cocycle":
        z = zero_vec(r)
        n = g0.dim
        return cls(n, r, tuple(tuple(z for _ in range(n)) for _ in range(n)), g0.basis, tuple(basis_v))

    @classmethod
    def from_values(cls, n: int, r: int, values: dict, basis_g0=(), basis_v=()) -> "Cocycle":
        """Build from ``{(i, j): {l: coeff}}`` listing one orientation per pair."""
        t = [[[_ZERO] * r for _ in range(n)] for _ in range(n)]
        for (i, j), res in values.items():
            for l, c in res.items():
                c = frac(c)
                t[i][j][l] += c
                t[j][i][l] -= c
        return cls(n, r, tuple(tuple(tuple(c) for c in row) for row in t), tuple(basis_g0), tuple(basis_v))

    def __call__(self, x: Sequence, y: Sequence) -> Vec:
        out = [_ZERO] * self.dim_v
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    for l, c in enumerate(self.tensor[i][j]):
                        if c:
                            out[l] += a * b * c
        return tuple(out)

    def component(self, l: int) -> Mat:
        """Matrix ``[p][q] = theta_l(e_p, e_q)``."""
        n = self.dim_g0
        return Mat([[self.tensor[p][q][l] for q in range(n)] for p in range(n)], n)

    def is_zero(self) -> bool:
        return not any(a for row in self.tensor for c in row for a in c)

    def scale(self, s) -> "Cocycle":
        s = frac(s)
        t = tuple(tuple(tuple(s * a for a in c) for c in row) for row in self.tensor)
        return Cocycle(self.dim_g0, self.dim_v, t, self.basis_g0, self.basis_v)


def _check_shapes(g0: StructureConstants, theta: Cocycle):
    if g0.dim != theta.dim_g0:
        raise DimensionMismatch(f"cocycle on a {theta.dim_g0}-dim space paired with a {g0.dim}-dim algebra")


def check_cocycle(g0: StructureConstants, theta: Cocycle) -> list:
    """Triples ``i<j<k`` where the cyclic sum ``theta(x,[y,z]) + ...`` is nonzero."""
    _check_shapes(g0, theta)
    _require_lie(g0, "check_cocycle")
    n = g0.dim
    e = [g0.e(i) for i in range(n)]
    c = g0.tensor
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                r = vadd(vadd(theta(e[i], c[j][k]), theta(e[j], c[k][i])), theta(e[k], c[i][j]))
                if not is_zero(r):
                    out.append((i, j, k, r))
    return out


def cocycle_from_derivations(g0: StructureConstants, B0: GramForm, ds: Sequence[Mat], basis_v=()) -> Cocycle:
    """``theta(x, y) = sum_i B0(D_i x, y) v_i`` for skew derivations ``D_i``."""
    _require_lie(g0, "cocycle_from_derivations")
    n = g0.dim
    for idx, d in enumerate(ds):
        if d.shape != (n, n):
            raise DimensionMismatch(f"derivation {idx} has shape {d.shape}")
        bad = is_derivation(g0, d)
        if bad:
            raise ValidationError(A.LEIBNIZ, [{"derivation": idx, "indices": [i, j], "residual": r} for i, j, r in bad])
        bad = is_skew_for(B0, d)
        if bad:
            raise ValidationError(A.SKEW, [{"derivation": idx, "indices": [i, j], "residual": r} for i, j, r in bad])
    r = len(ds)
    G = B0.gram
    cols = [d.columns() for d in ds]
    t = tuple(
        tuple(tuple(sum((cols[l][p][s] * G[s, q] for s in range(n)), _ZERO) for l in range(r)) for q in range(n))
        for p in range(n)
    )
    return Cocycle(n, r, t, g0.basis, tuple(basis_v))


def derivations_from_cocycle(g0: StructureConstants, B0: GramForm, theta: Cocycle) -> list:
    """Inverse of :func:`cocycle_from_derivations`: ``D_l(x) = sharp(theta_l(x, .))``."""
    _check_shapes(g0, theta)
    require_nondegenerate(B0, "B0")
    s = sharp_matrix(B0)
    return [s @ theta.component(l).T for l in range(theta.dim_v)]


def bracket_image(g0: StructureConstants) -> Subspace:
    n = g0.dim
    return Subspace(n, tuple(g0.tensor[i][j] for i in range(n) for j in range(i + 1, n)))


def canonical_complement(sub: Subspace) -> list:
    """Indices of the non-pivot coordinates; their unit vectors complement ``sub``."""
    piv = set()
    for v in sub.basis:
        piv.add(next(i for i, a in enumerate(v) if a))
    return [i for i in range(sub.ambient_dim) if i not in piv]


def is_coboundary(g0: StructureConstants, theta: Cocycle) -> Optional[Mat]:
    """The unique ``tau`` (r x n) with ``theta(x, y) = tau([x, y])`` vanishing on the
    canonical complement of ``[g0, g0]``, or None when ``theta`` is not a coboundary."""
    _check_shapes(g0, theta)
    n, r = g0.dim, theta.dim_v
    free = canonical_complement(bracket_image(g0))
    rows = []
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for i, j in pairs:
        rows.append(list(g0.tensor[i][j]))
    for f in free:
        rows.append([Fraction(int(q == f)) for q in range(n)])
    if not rows:
        return Mat.zeros(r, n)
    m = Mat(rows, n)
    tau_rows = []
    for l in range(r):
        rhs = [theta.tensor[i][j][l] for i, j in pairs] + [_ZERO] * len(free)
        sol = solve(m, rhs)
        if sol is None:
            return None
        tau_rows.append(sol[0])
    return Mat(tau_rows, n)


def central_extend(g0: StructureConstants, theta: Cocycle) -> StructureConstants:
    """``[x + u, y + w] = [x, y]_0 + theta(x, y)`` on ``g0 + V``."""
    _check_shapes(g0, theta)
    bad = check_cocycle(g0, theta)
    if bad:
        raise ValidationError(
            A.COCYCLE, [{"indices": [i, j, k], "residual": r} for i, j, k, r in bad]
        )
    n, r = g0.dim, theta.dim_v
    N = n + r
    z = zero_vec(N)
    t = [[z] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            t[i][j] = tuple(g0.tensor[i][j]) + tuple(theta.tensor[i][j])
    basis = tuple(g0.basis) + tuple(theta.basis_v)
    return StructureConstants(N, tuple(tuple(row) for row in t), basis, True)


def cocycle_radicals(g0: StructureConstants, theta: Cocycle):
    """Radical of each component ``theta_l`` and their intersection."""
    _check_shapes(g0, theta)
    n = g0.dim
    per = []
    stacked = []
    for l in range(theta.dim_v):
        m = theta.component(l).T  # row q: x -> theta_l(x, e_q)
        per.append(kernel(m))
        stacked.extend(m.rows)
    joint = kernel(Mat(stacked, n)) if stacked else Subspace.full(n)
    return per, joint


# ---------------------------------------------------------------- bundles

def _fail(anchor, items):
    return anchor, list(items)


def bundle_defects(g0, B0, theta, g, B) -> list:
    """Ordered ``(anchor, failures)`` for every violated standing hypothesis.

    Order: Jacobi, invariance, non-degeneracy and symmetry, the extension
    cross-check, and centrality of V.
    """
    out = []
    n0, r = g0.dim, theta.dim_v
    if g.dim != n0 + r or B.dim != g.dim or B0.dim != n0 or theta.dim_g0 != n0:
        raise DimensionMismatch(
            f"bundle dimensions disagree: g0={n0}, V={r}, g={g.dim}, B0={B0.dim}, B={B.dim}"
        )
    for alg in (g0, g):
        if not alg.skew:
            out.append(_fail(A.JACOBI, [{"indices": [], "residual": "product is not skew"}]))
            return out
    for alg in (g0, g):
        bad = jacobi_defect(alg)
        if bad:
            out.append(_fail(A.JACOBI, ({"algebra": "g0" if alg is g0 else "g", "indices": [i, j, k], "residual": v}
                                        for i, j, k, v in bad)))
    for alg, form, name in ((g0, B0, "B0"), (g, B, "B")):
        bad = check_invariant(alg, form)
        if bad:
            out.append(_fail(A.INVARIANT, ({"form": name, "indices": [i, j, k], "residual": v} for i, j, k, v in bad)))
    for form, name in ((B0, "B0"), (B, "B")):
        if not form.symmetric or form.gram != form.gram.T:
            out.append(_fail(A.METRIC, [{"form": name, "indices": [], "residual": "not symmetric"}]))
        elif not is_nondegenerate(form):
            out.append(_fail(A.METRIC, [{"form": name, "indices": [], "residual": form.determinant}]))
    if out:
        return out
    # h o k = Id holds identically once both forms are invertible; still recheck.
    from .construct import hk_matrices

    h, k = hk_matrices(B0, B)
    hk = h @ k
    if hk != Mat.identity(n0):
        out.append(_fail(A.HK_ID, ({"indices": [i, j], "residual": hk[i, j] - int(i == j)}
                                   for i in range(n0) for j in range(n0) if hk[i, j] != int(i == j))))
    if not check_cocycle(g0, theta):
        ext = central_extend(g0, theta)
        diffs = []
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                if ext.tensor[i][j] != g.tensor[i][j]:
                    diffs.append({"indices": [i, j],
                                  "residual": tuple(a - b for a, b in zip(g.tensor[i][j], ext.tensor[i][j]))})
        if diffs:
            out.append(_fail(A.EXTENSION, diffs))
    else:
        out.append(_fail(A.COCYCLE, ({"indices": [i, j, k], "residual": v} for i, j, k, v in check_cocycle(g0, theta))))
    cen = center(g)
    noncentral = [n0 + l for l in range(r) if not cen.contains(g.e(n0 + l))]
    if noncentral:
        out.append(_fail(A.V_CENTRAL, ({"indices": [i], "residual": "not central"} for i in noncentral)))
    return out


@dataclass(frozen=True)
class ExtensionBundle:
    """Quadratic ``(g0, B0)``, a cocycle, the extension ``g`` and its metric ``B``.

    Construction validates every standing hypothesis and raises
    :class:`ValidationError` naming the first that fails.
    """

    g0: StructureConstants
    B0: GramForm
    theta: Cocycle
    g: StructureConstants
    B: GramForm

    def __post_init__(self):
        bad = bundle_defects(self.g0, self.B0, self.theta, self.g, self.B)
        if bad:
            anchor, failures = bad[0]
            raise ValidationError(anchor, failures)

    @classmethod
    def build(cls, g0, B0, theta, B) -> "ExtensionBundle":
        return cls(g0, B0, theta, central_extend(g0, theta), B)

    @property
    def n0(self) -> int:
        return self.g0.dim

    @property
    def r(self) -> int:
        return self.theta.dim_v

    @property
    def dim(self) -> int:
        return self.g.dim

    @property
    def v_basis_offset(self) -> int:
        return self.g0.dim

    def g0_indices(self) -> range:
        return range(self.n0)

    def v_indices(self) -> range:
        return range(self.n0, self.dim)

    def g0_subspace(self) -> Subspace:
        return Subspace.coordinate(self.dim, self.g0_indices())

    def v_subspace(self) -> Subspace:
        return Subspace.coordinate(self.dim, self.v_indices())

    def pi(self) -> Mat:
        """Projection ``g -> g0``."""
        return Mat([[Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.n0)], self.dim)

    def pi_v(self) -> Mat:
        return Mat([[Fraction(int(self.n0 + i == j)) for j in range(self.dim)] for i in range(self.r)], self.dim)

    def iota(self) -> Mat:
        """Inclusion ``g0 -> g``."""
        return self.pi().T

    def iota_v(self) -> Mat:
        return self.pi_v().T

    def embed(self, x: Sequence) -> Vec:
        return tuple(frac(a) for a in x) + zero_vec(self.r)


__all__ = [
    "Cocycle",
    "ExtensionBundle",
    "bracket_image",
    "bundle_defects",
    "canonical_complement",
    "central_extend",
    "check_cocycle",
    "cocycle_from_derivations",
    "cocycle_radicals",
    "derivations_from_cocycle",
    "is_coboundary",
]
