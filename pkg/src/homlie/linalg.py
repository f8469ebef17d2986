"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`, vectors are tuples of fractions and
linear maps are :class:`Mat` instances. Throughout the package a matrix acts on
column vectors: entry ``[i][j]`` is the coefficient of output basis vector
``i`` in the image of input basis vector ``j``.

Elimination is fraction-free (Bareiss-style Gauss-Jordan on integer rows);
the inner loops live in :mod:`homlie._kernels`.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from . import _kernels
from .errors import DimensionMismatch

Vec = tuple  # tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (no whitespace, q > 0)."""
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string, got {text!r}")
    num, sep, den = text.partition("/")
    if not _is_int_literal(num) or (sep and (not den.isdigit() or not den.isascii())):
        raise ValueError(f"malformed rational {text!r}")
    if sep and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if sep else 1)


def _is_int_literal(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    return bool(body) and body.isascii() and body.isdigit()


def format_rational(x: Fraction) -> str:
    x = frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- vectors

def vec(*entries) -> Vec:
    if len(entries) == 1 and not isinstance(entries[0], (int, Fraction, str)):
        entries = tuple(entries[0])
    return tuple(frac(x) for x in entries)


def zero_vec(n: int) -> Vec:
    return (_ZERO,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(_ONE if j == i else _ZERO for j in range(n))


def vadd(x: Vec, y: Vec) -> Vec:
    if len(x) != len(y):
        raise DimensionMismatch(f"cannot add vectors of sizes {len(x)} and {len(y)}")
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Vec, y: Vec) -> Vec:
    if len(x) != len(y):
        raise DimensionMismatch(f"cannot subtract vectors of sizes {len(x)} and {len(y)}")
    return tuple(a - b for a, b in zip(x, y))


def vscale(s, x: Vec) -> Vec:
    s = frac(s)
    return tuple(s * a for a in x)


def dot(x: Vec, y: Vec) -> Fraction:
    if len(x) != len(y):
        raise DimensionMismatch(f"cannot pair vectors of sizes {len(x)} and {len(y)}")
    return sum((a * b for a, b in zip(x, y) if a and b), _ZERO)


def lin_comb(coeffs: Sequence, vectors: Sequence[Vec], dim: Optional[int] = None) -> Vec:
    if dim is None:
        if not vectors:
            raise ValueError("dimension required for an empty combination")
        dim = len(vectors[0])
    out = [_ZERO] * dim
    for c, v in zip(coeffs, vectors):
        c = frac(c)
        if not c:
            continue
        for i, a in enumerate(v):
            if a:
                out[i] += c * a
    return tuple(out)


def is_zero(x: Vec) -> bool:
    return not any(x)


def _int_row(row: Sequence[Fraction]) -> list:
    den = 1
    for a in row:
        if a.denominator != 1:
            den = lcm(den, a.denominator)
    return [int(a * den) for a in row]


# ---------------------------------------------------------------- matrices

class Mat:
    """Immutable dense matrix of fractions."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: Optional[int] = None):
        rows = tuple(tuple(frac(a) for a in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Mat":
        return cls([[_ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([unit(n, i) for i in range(n)], n)

    @classmethod
    def diag(cls, entries) -> "Mat":
        entries = [frac(a) for a in entries]
        n = len(entries)
        return cls([[entries[i] if i == j else _ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Vec], nrows: Optional[int] = None) -> "Mat":
        columns = [tuple(frac(a) for a in c) for c in columns]
        if nrows is None:
            if not columns:
                raise ValueError("row count required for a matrix without columns")
            nrows = len(columns[0])
        if any(len(c) != nrows for c in columns):
            raise DimensionMismatch("columns of unequal length")
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> Vec:
        return self.rows[i]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Mat":
        return Mat([self.col(j) for j in range(self.ncols)], self.nrows)

    def apply(self, x: Sequence) -> Vec:
        if len(x) != self.ncols:
            raise DimensionMismatch(f"matrix with {self.ncols} columns applied to a {len(x)}-vector")
        nz = [(j, a) for j, a in enumerate(x) if a]
        return tuple(sum((r[j] * a for j, a in nz), _ZERO) for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
            ocols = other.columns()
            cols = [self.apply(c) for c in ocols]
            return Mat.from_columns(cols, self.nrows) if cols else Mat.zeros(self.nrows, 0)
        return self.apply(other)

    def _check_same(self, other):
        if not isinstance(other, Mat) or self.shape != other.shape:
            raise DimensionMismatch("matrix shapes differ")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        return Mat([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        return Mat([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, s) -> "Mat":
        s = frac(s)
        return Mat([[s * a for a in r] for r in self.rows], self.ncols)

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def trace(self) -> Fraction:
        if not self.is_square():
            raise DimensionMismatch("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), _ZERO)

    def flatten(self) -> Vec:
        return tuple(a for r in self.rows for a in r)

    @classmethod
    def unflatten(cls, entries: Sequence, nrows: int, ncols: int) -> "Mat":
        return cls([entries[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        return Mat([r[c0:c1] for r in self.rows[r0:r1]], c1 - c0)

    def to_strings(self) -> list:
        return [[format_rational(a) for a in r] for r in self.rows]

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(a) for a in r) for r in self.rows)
        return f"Mat({self.nrows}x{self.ncols}: {body})"


def stack_rows(*mats: Mat) -> Mat:
    ncols = mats[0].ncols
    return Mat([r for m in mats for r in m.rows], ncols)


def stack_cols(*mats: Mat) -> Mat:
    nrows = mats[0].nrows
    if any(m.nrows != nrows for m in mats):
        raise DimensionMismatch("row counts differ")
    return Mat([sum((m.rows[i] for m in mats), ()) for i in range(nrows)])


# ---------------------------------------------------------------- elimination

def _rref_rows(rows: Sequence[Sequence[Fraction]], ncols: int):
    int_rows = [_int_row(r) for r in rows]
    reduced, pivots = _kernels.rref_int(int_rows, ncols)
    out = []
    for r, c in zip(reduced, pivots):
        p = r[c]
        out.append(tuple(Fraction(a, p) for a in r))
    return out, pivots


def rref(m: Mat):
    """Return ``(reduced, pivots, rank)``; ``reduced`` keeps the input shape."""
    rows, pivots = _rref_rows(m.rows, m.ncols)
    rank = len(pivots)
    rows += [zero_vec(m.ncols)] * (m.nrows - rank)
    return Mat(rows, m.ncols), pivots, rank


def rref_with_transform(m: Mat):
    """Return ``(reduced, pivots, rank, P)`` with ``P`` invertible and ``P @ m == reduced``.

    ``P`` records the accumulated elementary row operations.
    """
    aug = stack_cols(m, Mat.identity(m.nrows))
    red, pivots, _ = rref(aug)
    left_piv = [c for c in pivots if c < m.ncols]
    reduced = red.block(0, m.nrows, 0, m.ncols)
    transform = red.block(0, m.nrows, m.ncols, m.ncols + m.nrows)
    return reduced, left_piv, len(left_piv), transform


def rank(m: Mat) -> int:
    return len(_rref_rows(m.rows, m.ncols)[1])


def rank_of_vectors(vectors: Sequence[Vec], dim: int) -> int:
    if not vectors:
        return 0
    return len(_rref_rows(vectors, dim)[1])


def kernel_basis(m: Mat) -> list:
    """Basis of the right null space, one vector per free column."""
    rows, pivots = _rref_rows(m.rows, m.ncols)
    n = m.ncols
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [_ZERO] * n
        v[f] = _ONE
        for r, c in zip(rows, pivots):
            v[c] = -r[f]
        basis.append(tuple(v))
    return basis


def solve(m: Mat, rhs: Sequence):
    """Solve ``m x = rhs``.

    Returns ``(particular, homogeneous)`` or ``None`` when inconsistent. The
    particular solution sets every free variable to zero.
    """
    rhs = vec(rhs)
    if len(rhs) != m.nrows:
        raise DimensionMismatch(f"right-hand side has {len(rhs)} entries, matrix has {m.nrows} rows")
    aug_rows = [r + (b,) for r, b in zip(m.rows, rhs)]
    rows, pivots = _rref_rows(aug_rows, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [_ZERO] * m.ncols
    for r, c in zip(rows, pivots):
        x[c] = r[m.ncols]
    return tuple(x), kernel_basis(m)


def det(m: Mat) -> Fraction:
    """Exact determinant via fraction-free elimination."""
    if not m.is_square():
        raise DimensionMismatch(f"determinant of a {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    if n == 0:
        return _ONE
    dens = []
    int_rows = []
    for r in m.rows:
        d = 1
        for a in r:
            if a.denominator != 1:
                d = lcm(d, a.denominator)
        dens.append(d)
        int_rows.append([int(a * d) for a in r])
    # Bareiss keeps the determinant on the diagonal; track row swaps for the sign.
    a = [row[:] for row in int_rows]
    sign = 1
    prev = 1
    for k in range(n):
        p = k
        while p < n and a[p][k] == 0:
            p += 1
        if p == n:
            return _ZERO
        if p != k:
            a[p], a[k] = a[k], a[p]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            ai = a[i]
            f = ai[k]
            a[i] = [(piv * x - f * y) // prev if j > k else 0
                    for j, (x, y) in enumerate(zip(ai, a[k]))]
        prev = piv
    total = 1
    for d in dens:
        total *= d
    return Fraction(sign * a[n - 1][n - 1], total)


def inverse(m: Mat) -> Mat:
    if not m.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    red, piv, rk, transform = rref_with_transform(m)
    if rk != m.nrows:
        raise ZeroDivisionError("matrix is singular")
    return transform


def span_basis(vectors: Sequence[Vec], dim: int) -> tuple:
    """Canonical (reduced row-echelon) basis of the span."""
    if not vectors:
        return ()
    rows, _ = _rref_rows(vectors, dim)
    return tuple(rows)
