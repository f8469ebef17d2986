"""Pure-Python implementations of the elimination kernels.

Every function here has a drop-in twin in ``_ckernels.pyx``; the two must
agree exactly on every input.
"""
from math import gcd

BACKEND = "python"


def rref_int(rows, ncols):
    """Fraction-free Gauss-Jordan elimination over the integers.

    Returns ``(rows, pivots)``: the reduced integer rows (zero rows dropped)
    and the pivot columns. Every pivot row has the same pivot value, the
    determinant of the leading pivot minor, so dividing each row by its pivot
    entry yields the reduced row-echelon form. All divisions are exact.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
        prow = m[r]
        piv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = m[i]
            f = row[c]
            if f == 0:
                if piv != prev:
                    m[i] = [(piv * x) // prev for x in row]
                continue
            m[i] = [(piv * x - f * y) // prev for x, y in zip(row, prow)]
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


class IntSpan:
    """Incrementally grown row-echelon basis of a subspace of Q^n.

    Vectors are inserted as integer rows; rows are kept primitive so the
    coefficient growth stays bounded by the data, not by the number of
    insertions.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self._rows = []  # (pivot, row) sorted by pivot
        self._pivots = set()

    @property
    def rank(self):
        return len(self._rows)

    def reduce(self, row):
        cand = list(row)
        if len(cand) != self.ncols:
            raise ValueError("row length does not match span dimension")
        for p, r in self._rows:
            f = cand[p]
            if f:
                a = r[p]
                cand = [a * x - f * y for x, y in zip(cand, r)]
                cand = _primitive(cand)
        return cand

    def insert(self, row):
        """Add ``row``; return True when it enlarged the span."""
        cand = self.reduce(row)
        lead = next((j for j, x in enumerate(cand) if x), None)
        if lead is None:
            return False
        if cand[lead] < 0:
            cand = [-x for x in cand]
        cand = _primitive(cand)
        self._rows.append((lead, cand))
        self._rows.sort(key=lambda pr: pr[0])
        self._pivots.add(lead)
        return True

    def contains(self, row):
        return not any(self.reduce(row))

    def rows(self):
        return [list(r) for _, r in self._rows]


class ModPSpan:
    """Incremental row-echelon basis over the prime field GF(p)."""

    def __init__(self, ncols, p):
        self.ncols = ncols
        self.p = p
        self._rows = []
        self._by_pivot = {}

    @property
    def rank(self):
        return len(self._rows)

    def _reduce(self, row):
        p = self.p
        cand = [x % p for x in row]
        for piv, r in self._rows:
            f = cand[piv]
            if f:
                cand = [(x - f * y) % p for x, y in zip(cand, r)]
        return cand

    def insert(self, row):
        if len(row) != self.ncols:
            raise ValueError("row length does not match span dimension")
        cand = self._reduce(row)
        lead = next((j for j, x in enumerate(cand) if x), None)
        if lead is None:
            return False
        inv = pow(cand[lead], self.p - 2, self.p)
        cand = [(x * inv) % self.p for x in cand]
        self._rows.append((lead, cand))
        self._rows.sort(key=lambda pr: pr[0])
        return True

    def contains(self, row):
        return not any(self._reduce(row))
