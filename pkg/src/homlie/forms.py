"""Bilinear forms, musical maps, and the linear spaces attached to a metric.

Derivations, centroids and invariant forms are all found the same way: write
the defining identity on basis elements as a homogeneous linear system in the
unknown matrix entries and read a basis off the kernel.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .errors import DimensionMismatch, PreconditionError, SingularFormError
from .lie import StructureConstants, Subspace, _require_lie, ad, kernel
from .linalg import Mat, Vec, det, dot, frac, inverse, kernel_basis, solve

_ZERO = Fraction(0)


@dataclass(frozen=True)
class GramForm:
    """Bilinear form ``B(x, y) = x^T gram y`` on Q^dim."""

    dim: int
    gram: Mat
    symmetric: bool = True

    def __post_init__(self):
        if not isinstance(self.gram, Mat):
            object.__setattr__(self, "gram", Mat(self.gram, self.dim))
        if self.gram.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"Gram matrix of shape {self.gram.shape} for dimension {self.dim}")
        if self.symmetric and self.gram != self.gram.T:
            raise PreconditionError("form flagged symmetric but its Gram matrix is not")

    @classmethod
    def zero(cls, n: int) -> "GramForm":
        return cls(n, Mat.zeros(n, n), True)

    @classmethod
    def identity(cls, n: int) -> "GramForm":
        return cls(n, Mat.identity(n), True)

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        return self.value(x, y)

    def value(self, x: Sequence, y: Sequence) -> Fraction:
        return dot(tuple(x), self.gram.apply(tuple(y)))

    def entry(self, i: int, j: int) -> Fraction:
        return self.gram[i, j]

    def scale(self, s) -> "GramForm":
        return GramForm(self.dim, self.gram.scale(s), self.symmetric)

    def is_zero(self) -> bool:
        return self.gram.is_zero()

    @cached_property
    def determinant(self) -> Fraction:
        return det(self.gram)

    @cached_property
    def _sharp_matrix(self) -> Mat:
        if self.determinant == 0:
            raise SingularFormError("form is degenerate; sharp is undefined")
        return inverse(self.gram.T)

    def restrict(self, indices: Sequence[int]) -> "GramForm":
        idx = list(indices)
        return GramForm(len(idx), Mat([[self.gram[i, j] for j in idx] for i in idx], len(idx)), self.symmetric)


def is_nondegenerate(form: GramForm) -> bool:
    return form.determinant != 0


def require_nondegenerate(form: GramForm, what: str = "form"):
    if not is_nondegenerate(form):
        raise SingularFormError(f"{what} is degenerate")


def flat(form: GramForm, x: Sequence) -> Vec:
    """Coordinates of the functional ``y -> B(x, y)``."""
    return form.gram.T.apply(tuple(frac(a) for a in x))


def sharp(form: GramForm, phi: Sequence) -> Vec:
    """The unique ``x`` with ``B(x, y) = phi(y)`` for all ``y``."""
    return form._sharp_matrix.apply(tuple(frac(a) for a in phi))


def flat_matrix(form: GramForm) -> Mat:
    return form.gram.T


def sharp_matrix(form: GramForm) -> Mat:
    return form._sharp_matrix


def check_invariant(alg: StructureConstants, form: GramForm) -> list:
    """Triples where ``B(e_i e_j, e_k) != B(e_i, e_j e_k)``."""
    if alg.dim != form.dim:
        raise DimensionMismatch(f"{alg.dim}-dim algebra with a {form.dim}-dim form")
    n = alg.dim
    G = form.gram
    out = []
    for i in range(n):
        for j in range(n):
            left = G.T.apply(alg.tensor[i][j])  # k -> B(e_i e_j, e_k)
            for k in range(n):
                r = left[k] - dot(G.rows[i], alg.tensor[j][k])
                if r:
                    out.append((i, j, k, r))
    return out


# ---------------------------------------------------------------- linear spaces of maps

def _solve_maps(n: int, rows: list) -> list:
    if not rows:
        basis = [tuple(Fraction(int(t == s)) for t in range(n * n)) for s in range(n * n)]
    else:
        basis = kernel_basis(Mat(rows, n * n))
    return [Mat.unflatten(b, n, n) for b in basis]


def _leibniz_rows(alg: StructureConstants) -> list:
    # unknown D[p][q] sits at p*n + q
    n = alg.dim
    c = alg.tensor
    rows = []
    pairs = ((i, j) for i in range(n) for j in range(i if alg.skew else 0, n))
    for i, j in pairs:
        for k in range(n):
            row = [_ZERO] * (n * n)
            for q, a in enumerate(c[i][j]):
                if a:
                    row[k * n + q] += a
            for p in range(n):
                if c[p][j][k]:
                    row[p * n + i] -= c[p][j][k]
                if c[i][p][k]:
                    row[p * n + j] -= c[i][p][k]
            if any(row):
                rows.append(row)
    return rows


def _skew_rows(form: GramForm, sign: int) -> list:
    # B(Dx, y) + sign * B(x, Dy) = 0 on basis pairs
    n = form.dim
    G = form.gram
    rows = []
    for i in range(n):
        for j in range(i, n):
            row = [_ZERO] * (n * n)
            for p in range(n):
                row[p * n + i] += G[p, j]
                row[p * n + j] += sign * G[i, p]
            if any(row):
                rows.append(row)
    return rows


def derivation_space(alg: StructureConstants) -> list:
    """Basis of ``Der(alg)`` as matrices."""
    _require_lie(alg, "derivation_space")
    return _solve_maps(alg.dim, _leibniz_rows(alg))


def skew_derivation_space(alg: StructureConstants, form: GramForm) -> list:
    """Derivations that are skew for ``form``."""
    _require_lie(alg, "skew_derivation_space")
    require_nondegenerate(form)
    return _solve_maps(alg.dim, _leibniz_rows(alg) + _skew_rows(form, 1))


def _centroid_rows(alg: StructureConstants) -> list:
    # T(e_i e_j) = T(e_i) e_j, and for non-skew products also = e_i T(e_j)
    n = alg.dim
    c = alg.tensor
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                base = [_ZERO] * (n * n)
                for q, a in enumerate(c[i][j]):
                    if a:
                        base[k * n + q] += a
                left = list(base)
                for p in range(n):
                    if c[p][j][k]:
                        left[p * n + i] -= c[p][j][k]
                if any(left):
                    rows.append(left)
                if not alg.skew:
                    right = list(base)
                    for p in range(n):
                        if c[i][p][k]:
                            right[p * n + j] -= c[i][p][k]
                    if any(right):
                        rows.append(right)
    return rows


def centroid(alg: StructureConstants) -> list:
    """Basis of the maps commuting with every multiplication operator."""
    if alg.skew:
        _require_lie(alg, "centroid")
    return _solve_maps(alg.dim, _centroid_rows(alg))


def symmetric_centroid(alg: StructureConstants, form: GramForm) -> list:
    """Centroid elements that are self-adjoint for ``form``."""
    _require_lie(alg, "symmetric_centroid")
    return _solve_maps(alg.dim, _centroid_rows(alg) + _skew_rows(form, -1))


def is_invertible_member(t: Mat) -> bool:
    return t.is_square() and det(t) != 0


def in_span(m: Mat, basis: Sequence[Mat]) -> bool:
    """Whether ``m`` is a linear combination of ``basis``."""
    n2 = m.nrows * m.ncols
    if not basis:
        return m.is_zero()
    cols = [b.flatten() for b in basis]
    return solve(Mat.from_columns(cols, n2), m.flatten()) is not None


def is_derivation(alg: StructureConstants, d: Mat) -> list:
    """Independent Leibniz check; returns failing ``(i, j, residual)``."""
    from .lie import bracket
    from .linalg import is_zero, vsub

    n = alg.dim
    cols = d.columns()
    e = [alg.e(i) for i in range(n)]
    bad = []
    for i in range(n):
        for j in range(n):
            lhs = d.apply(bracket(alg, e[i], e[j]))
            rhs = [a + b for a, b in zip(bracket(alg, cols[i], e[j]), bracket(alg, e[i], cols[j]))]
            r = vsub(lhs, tuple(rhs))
            if not is_zero(r):
                bad.append((i, j, r))
    return bad


def is_skew_for(form: GramForm, d: Mat) -> list:
    """Pairs where ``B(Dx, y) + B(x, Dy) != 0``."""
    n = form.dim
    cols = d.columns()
    bad = []
    for i in range(n):
        for j in range(n):
            r = dot(cols[i], form.gram.col(j)) + dot(form.gram.rows[i], cols[j])
            if r:
                bad.append((i, j, r))
    return bad


def is_inner(alg: StructureConstants, d: Mat) -> Optional[Vec]:
    """Some ``a`` with ``ad(a) = D``, or None; free (central) coordinates are zero."""
    _require_lie(alg, "is_inner")
    n = alg.dim
    if d.shape != (n, n):
        raise DimensionMismatch("derivation has the wrong shape")
    rows = [[alg.tensor[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    rhs = [d[k, j] for j in range(n) for k in range(n)]
    sol = solve(Mat(rows, n), rhs)
    if sol is None:
        return None
    a = sol[0]
    assert ad(alg, a) == d
    return a


# ---------------------------------------------------------------- invariant forms

def _sym_index(n: int):
    idx = {}
    t = 0
    for p in range(n):
        for q in range(p, n):
            idx[(p, q)] = idx[(q, p)] = t
            t += 1
    return idx, t


def _forms_from_coords(n: int, coords: Sequence[Vec]) -> list:
    idx, _ = _sym_index(n)
    return [GramForm(n, Mat([[v[idx[(p, q)]] for q in range(n)] for p in range(n)], n), True) for v in coords]


def invariant_form_space(alg: StructureConstants) -> list:
    """Basis of the symmetric forms with ``B(xy, z) = B(x, yz)``."""
    _require_lie(alg, "invariant_form_space")
    n = alg.dim
    idx, m = _sym_index(n)
    c = alg.tensor
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [_ZERO] * m
                for q in range(n):
                    if c[i][j][q]:
                        row[idx[(q, k)]] += c[i][j][q]
                    if c[j][k][q]:
                        row[idx[(i, q)]] -= c[j][k][q]
                if any(row):
                    rows.append(row)
    if rows:
        coords = kernel_basis(Mat(rows, m))
    else:
        coords = [tuple(Fraction(int(s == t)) for s in range(m)) for t in range(m)]
    return _forms_from_coords(n, coords)


def _coefficient_tuples(d: int, bound: int):
    """Integer tuples in ``[-bound, bound]^d`` minus zero, ordered by max-norm,
    then support size, then support position, then value order 1, -1, 2, -2, ...
    """
    for s in range(1, bound + 1):
        values = [v for a in range(1, s + 1) for v in (a, -a)]
        for size in range(1, d + 1):
            for support in itertools.combinations(range(d), size):
                for vals in itertools.product(values, repeat=size):
                    if max(abs(v) for v in vals) != s:
                        continue
                    out = [0] * d
                    for p, v in zip(support, vals):
                        out[p] = v
                    yield tuple(out)


def find_metric_isotropic(alg: StructureConstants, sub: Subspace, search_bound: int = 2) -> Optional[GramForm]:
    """Search for a non-degenerate invariant form vanishing on ``sub``.

    Isotropy is imposed exactly first; the remaining coefficient space is then
    enumerated deterministically. None means nothing was found within the bound.
    """
    forms = invariant_form_space(alg)
    if not forms:
        return None
    n = alg.dim
    pairs = [(a, b) for a in range(sub.dim) for b in range(a, sub.dim)]
    if pairs:
        rows = [[f.value(sub.basis[a], sub.basis[b]) for f in forms] for a, b in pairs]
        allowed = kernel_basis(Mat(rows, len(forms)))
    else:
        allowed = [tuple(Fraction(int(s == t)) for s in range(len(forms))) for t in range(len(forms))]
    if not allowed:
        return None
    gens = []
    for u in allowed:
        g = Mat.zeros(n, n)
        for c, f in zip(u, forms):
            if c:
                g = g + f.gram.scale(c)
        gens.append(g)
    for coeffs in _coefficient_tuples(len(gens), search_bound):
        g = Mat.zeros(n, n)
        for c, m in zip(coeffs, gens):
            if c:
                g = g + m.scale(c)
        if det(g) != 0:
            return GramForm(n, g, True)
    return None


def orthogonal_complement(form: GramForm, sub: Subspace) -> Subspace:
    """``{x : B(x, s) = 0 for all s in sub}``."""
    require_nondegenerate(form)
    if sub.ambient_dim != form.dim:
        raise DimensionMismatch("subspace and form live in different dimensions")
    if sub.is_zero():
        return Subspace.full(form.dim)
    rows = [form.gram.apply(s) for s in sub.basis]
    return kernel(Mat(rows, form.dim))


def is_isotropic(form: GramForm, sub: Subspace) -> bool:
    return all(form.value(x, y) == 0 for x in sub.basis for y in sub.basis)


def gram_from_pairs(n: int, pairs: dict, symmetric: bool = True) -> GramForm:
    """Form from ``{(i, j): value}``; symmetric forms mirror each entry."""
    g = [[_ZERO] * n for _ in range(n)]
    for (i, j), v in pairs.items():
        g[i][j] = frac(v)
        if symmetric:
            g[j][i] = frac(v)
    return GramForm(n, Mat(g, n), symmetric)


__all__ = [
    "GramForm",
    "centroid",
    "check_invariant",
    "derivation_space",
    "find_metric_isotropic",
    "flat",
    "gram_from_pairs",
    "in_span",
    "invariant_form_space",
    "is_derivation",
    "is_inner",
    "is_invertible_member",
    "is_isotropic",
    "is_nondegenerate",
    "is_skew_for",
    "orthogonal_complement",
    "sharp",
    "skew_derivation_space",
    "symmetric_centroid",
]
