"""Algebras given by structure constants, and the basic Lie-theoretic tools.

An algebra of dimension ``n`` stores a dense tensor ``c`` with
``e_i * e_j = sum_k c[i][j][k] e_k``. The same class also carries non-skew
products (the connection product, the unital algebra); only the Lie-specific
operations insist on ``skew``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from .errors import DimensionMismatch, PreconditionError
from .linalg import (
    Mat,
    Vec,
    frac,
    is_zero,
    kernel_basis,
    rank_of_vectors,
    span_basis,
    unit,
    vadd,
    vsub,
    zero_vec,
)

_ZERO = Fraction(0)


def default_labels(n: int, prefix: str = "e") -> tuple:
    return tuple(f"{prefix}{i + 1}" for i in range(n))


@dataclass(frozen=True)
class StructureConstants:
    """Finite-dimensional algebra over Q given by its multiplication table."""

    dim: int
    tensor: tuple  # tensor[i][j] is the coordinate vector of e_i * e_j
    basis: tuple = ()
    skew: bool = True

    def __post_init__(self):
        n = self.dim
        t = tuple(tuple(tuple(frac(a) for a in cell) for cell in row) for row in self.tensor)
        if len(t) != n or any(len(row) != n for row in t) or any(
            len(cell) != n for row in t for cell in row
        ):
            raise DimensionMismatch(f"structure tensor is not {n}x{n}x{n}")
        object.__setattr__(self, "tensor", t)
        labels = tuple(self.basis) if self.basis else default_labels(n)
        if len(labels) != n or len(set(labels)) != n:
            raise DimensionMismatch("basis labels must be distinct and match the dimension")
        object.__setattr__(self, "basis", labels)
        if self.skew:
            for i in range(n):
                if not is_zero(t[i][i]):
                    raise PreconditionError(f"skew algebra has nonzero square e_{i}*e_{i}")
                for j in range(i + 1, n):
                    if any(a + b for a, b in zip(t[i][j], t[j][i])):
                        raise PreconditionError(f"skew algebra violates skewness at ({i}, {j})")

    @classmethod
    def zero(cls, n: int, basis: Sequence[str] = (), skew: bool = True) -> "StructureConstants":
        z = zero_vec(n)
        return cls(n, tuple(tuple(z for _ in range(n)) for _ in range(n)), tuple(basis), skew)

    @classmethod
    def from_products(
        cls,
        n: int,
        products: Mapping[Tuple[int, int], Mapping[int, object]],
        basis: Sequence[str] = (),
        skew: bool = True,
    ) -> "StructureConstants":
        """Build from ``{(i, j): {k: coeff}}``.

        With ``skew`` the opposite orientation of each listed pair is filled in;
        listing both orientations is an error.
        """
        t = [[[_ZERO] * n for _ in range(n)] for _ in range(n)]
        seen = set()
        for (i, j), result in products.items():
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionMismatch(f"product index ({i}, {j}) out of range")
            if skew and (j, i) in seen:
                raise PreconditionError(f"both orientations of ({i}, {j}) given for a skew algebra")
            seen.add((i, j))
            for k, c in result.items():
                if not 0 <= k < n:
                    raise DimensionMismatch(f"result index {k} out of range")
                c = frac(c)
                t[i][j][k] += c
                if skew:
                    t[j][i][k] -= c
        return cls(n, tuple(tuple(tuple(cell) for cell in row) for row in t), tuple(basis), skew)

    def index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def product(self, x: Sequence, y: Sequence) -> Vec:
        return bracket(self, x, y)

    def e(self, i: int) -> Vec:
        return unit(self.dim, i)

    def with_tensor(self, tensor, skew: Optional[bool] = None) -> "StructureConstants":
        return StructureConstants(self.dim, tensor, self.basis, self.skew if skew is None else skew)

    def left_mult(self, i: int) -> Mat:
        """Matrix of y -> e_i * y."""
        return Mat.from_columns([self.tensor[i][j] for j in range(self.dim)], self.dim)

    def right_mult(self, i: int) -> Mat:
        """Matrix of y -> y * e_i."""
        return Mat.from_columns([self.tensor[j][i] for j in range(self.dim)], self.dim)


# ---------------------------------------------------------------- products

def bracket(alg: StructureConstants, x: Sequence, y: Sequence) -> Vec:
    """Bilinear expansion of ``x * y`` through the structure tensor."""
    n = alg.dim
    if len(x) != n or len(y) != n:
        raise DimensionMismatch(f"vectors of sizes {len(x)}, {len(y)} in a {n}-dim algebra")
    out = [_ZERO] * n
    ynz = [(j, b) for j, b in enumerate(y) if b]
    for i, a in enumerate(x):
        if not a:
            continue
        row = alg.tensor[i]
        for j, b in ynz:
            ab = a * b
            for k, c in enumerate(row[j]):
                if c:
                    out[k] += ab * c
    return tuple(out)


def ad(alg: StructureConstants, x: Sequence) -> Mat:
    """Left multiplication by ``x``; column j is ``x * e_j``."""
    n = alg.dim
    if len(x) != n:
        raise DimensionMismatch(f"vector of size {len(x)} in a {n}-dim algebra")
    cols = []
    for j in range(n):
        col = [_ZERO] * n
        for i, a in enumerate(x):
            if a:
                for k, c in enumerate(alg.tensor[i][j]):
                    if c:
                        col[k] += a * c
        cols.append(tuple(col))
    return Mat.from_columns(cols, n) if n else Mat.zeros(0, 0)


def ad_basis(alg: StructureConstants) -> list:
    return [alg.left_mult(i) for i in range(alg.dim)]


def _require_skew(alg: StructureConstants, what: str):
    if not alg.skew:
        raise PreconditionError(f"{what} needs a skew-symmetric product")


def jacobi_defect(alg: StructureConstants) -> list:
    """All triples ``i<j<k`` whose cyclic Jacobi sum is nonzero, with the residual."""
    _require_skew(alg, "jacobi_defect")
    n = alg.dim
    e = [alg.e(i) for i in range(n)]
    prod = [[alg.tensor[i][j] for j in range(n)] for i in range(n)]
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                r = vadd(
                    vadd(bracket(alg, e[i], prod[j][k]), bracket(alg, e[j], prod[k][i])),
                    bracket(alg, e[k], prod[i][j]),
                )
                if not is_zero(r):
                    out.append((i, j, k, r))
    return out


def is_lie(alg: StructureConstants) -> bool:
    return alg.skew and not jacobi_defect(alg)


def _require_lie(alg: StructureConstants, what: str):
    _require_skew(alg, what)
    bad = jacobi_defect(alg)
    if bad:
        i, j, k, _ = bad[0]
        raise PreconditionError(f"{what} needs a Lie algebra; Jacobi fails at ({i}, {j}, {k})")


def killing_form(alg: StructureConstants):
    """Gram matrix of ``kappa(x, y) = Tr(ad x ad y)``."""
    from .forms import GramForm

    _require_lie(alg, "killing_form")
    ads = ad_basis(alg)
    n = alg.dim
    g = [[_ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = (ads[i] @ ads[j]).trace()
    return GramForm(n, Mat(g, n), True)


# ---------------------------------------------------------------- subspaces

@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n held by its reduced row-echelon basis."""

    ambient_dim: int
    basis: tuple = field(default=())

    def __post_init__(self):
        vecs = [tuple(frac(a) for a in v) for v in self.basis]
        if any(len(v) != self.ambient_dim for v in vecs):
            raise DimensionMismatch("subspace generator of the wrong size")
        object.__setattr__(self, "basis", span_basis(vecs, self.ambient_dim))

    @classmethod
    def span(cls, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        return cls(n, tuple(vectors))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit(n, i) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls(n, tuple(unit(n, i) for i in indices))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, v: Sequence) -> bool:
        v = tuple(frac(a) for a in v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector size does not match the ambient space")
        if is_zero(v):
            return True
        return rank_of_vectors(list(self.basis) + [v], self.ambient_dim) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        # x = sum a_i u_i = sum b_j w_j  <=>  [U | -W] (a, b) = 0
        cols = list(self.basis) + [tuple(-c for c in w) for w in other.basis]
        m = Mat.from_columns(cols, self.ambient_dim)
        vecs = []
        for z in kernel_basis(m):
            coeffs = z[: self.dim]
            v = [_ZERO] * self.ambient_dim
            for c, u in zip(coeffs, self.basis):
                if c:
                    for t, a in enumerate(u):
                        v[t] += c * a
            vecs.append(tuple(v))
        return Subspace(self.ambient_dim, tuple(vecs))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim})"


def image(m: Mat, sub: Optional[Subspace] = None) -> Subspace:
    vecs = m.columns() if sub is None else [m.apply(v) for v in sub.basis]
    return Subspace(m.nrows, tuple(vecs))


def kernel(m: Mat) -> Subspace:
    return Subspace(m.ncols, tuple(kernel_basis(m)))


def product_span(alg: StructureConstants, left: Subspace, right: Subspace) -> Subspace:
    """Span of ``x * y`` for ``x`` in ``left`` and ``y`` in ``right``."""
    vecs = [bracket(alg, x, y) for x in left.basis for y in right.basis]
    return Subspace(alg.dim, tuple(vecs))


def center(alg: StructureConstants) -> Subspace:
    """``{x : x * y = 0 for all y}``."""
    n = alg.dim
    # row (j, k) of the system: sum_i x_i c[i][j][k] = 0
    rows = [[alg.tensor[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    if not rows:
        return Subspace.zero(n)
    return kernel(Mat(rows, n))


def lower_central_series(alg: StructureConstants) -> list:
    """``[g, [g,g], [g,[g,g]], ...]`` up to and including the first repeat."""
    _require_lie(alg, "lower_central_series")
    g = Subspace.full(alg.dim)
    series = [g]
    while True:
        nxt = product_span(alg, g, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.is_zero():
            return series


def derived_series(alg: StructureConstants) -> list:
    _require_lie(alg, "derived_series")
    series = [Subspace.full(alg.dim)]
    while True:
        cur = series[-1]
        nxt = product_span(alg, cur, cur)
        if nxt == cur:
            return series
        series.append(nxt)
        if nxt.is_zero():
            return series


def is_nilpotent(alg: StructureConstants) -> bool:
    return lower_central_series(alg)[-1].is_zero()


def is_solvable(alg: StructureConstants) -> bool:
    return derived_series(alg)[-1].is_zero()


def nilpotency_class(alg: StructureConstants) -> Optional[int]:
    """Number of nonzero terms after ``g`` itself in the lower central series, or None."""
    s = lower_central_series(alg)
    if not s[-1].is_zero():
        return None
    return len(s) - 1


def relabel(alg: StructureConstants, labels: Sequence[str]) -> StructureConstants:
    return StructureConstants(alg.dim, alg.tensor, tuple(labels), alg.skew)


def is_homomorphism(f: Mat, src: StructureConstants, dst: StructureConstants) -> list:
    """Basis pairs where ``f(x*y) != f(x)*f(y)``."""
    cols = f.columns()
    bad = []
    for i in range(src.dim):
        for j in range(src.dim):
            r = vsub(f.apply(src.tensor[i][j]), bracket(dst, cols[i], cols[j]))
            if not is_zero(r):
                bad.append((i, j, r))
    return bad
