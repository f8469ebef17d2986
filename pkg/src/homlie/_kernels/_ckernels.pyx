# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels; semantics identical to ``_pykernels``."""
from libc.stdlib cimport malloc, free
from math import gcd

BACKEND = "cython"


def rref_int(rows, Py_ssize_t ncols):
    cdef list m = [list(src) for src in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef list pivots = []
    cdef list prow, row, new
    cdef object prev = 1, piv, f
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and (<list>m[p])[c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
        prow = <list>m[r]
        piv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>m[i]
            f = row[c]
            if f == 0:
                if piv != prev:
                    new = [None] * ncols
                    for j in range(ncols):
                        new[j] = (piv * row[j]) // prev
                    m[i] = new
                continue
            new = [None] * ncols
            for j in range(ncols):
                new[j] = (piv * row[j] - f * prow[j]) // prev
            m[i] = new
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


cdef list _primitive(list row):
    cdef object g = 0
    cdef object x
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


cdef class IntSpan:
    cdef public Py_ssize_t ncols
    cdef list _rows
    cdef list _piv

    def __init__(self, Py_ssize_t ncols):
        self.ncols = ncols
        self._rows = []
        self._piv = []

    @property
    def rank(self):
        return len(self._rows)

    cpdef list reduce(self, row):
        cdef list cand = list(row)
        cdef Py_ssize_t k, j, p, n = self.ncols
        cdef list r
        cdef object a, f
        if len(cand) != n:
            raise ValueError("row length does not match span dimension")
        for k in range(len(self._rows)):
            p = self._piv[k]
            f = cand[p]
            if f:
                r = <list>self._rows[k]
                a = r[p]
                for j in range(n):
                    cand[j] = a * cand[j] - f * r[j]
                cand = _primitive(cand)
        return cand

    def insert(self, row):
        cdef list cand = self.reduce(row)
        cdef Py_ssize_t lead = -1, j, k
        for j in range(self.ncols):
            if cand[j]:
                lead = j
                break
        if lead < 0:
            return False
        if cand[lead] < 0:
            cand = [-x for x in cand]
        cand = _primitive(cand)
        k = 0
        while k < len(self._piv) and <Py_ssize_t>self._piv[k] < lead:
            k += 1
        self._rows.insert(k, cand)
        self._piv.insert(k, lead)
        return True

    def contains(self, row):
        return not any(self.reduce(row))

    def rows(self):
        return [list(r) for r in self._rows]


cdef class ModPSpan:
    cdef public Py_ssize_t ncols
    cdef public long long p
    cdef long long *buf
    cdef Py_ssize_t *piv
    cdef Py_ssize_t nrows
    cdef long long *work

    def __cinit__(self, Py_ssize_t ncols, long long p):
        if p >= (1LL << 31) or p < 2:
            raise ValueError("prime must lie in [2, 2**31)")
        self.ncols = ncols
        self.p = p
        self.nrows = 0
        self.buf = <long long *>malloc(ncols * ncols * sizeof(long long) + 1)
        self.piv = <Py_ssize_t *>malloc(ncols * sizeof(Py_ssize_t) + 1)
        self.work = <long long *>malloc(ncols * sizeof(long long) + 1)
        if not self.buf or not self.piv or not self.work:
            raise MemoryError()

    def __dealloc__(self):
        free(self.buf)
        free(self.piv)
        free(self.work)

    @property
    def rank(self):
        return self.nrows

    cdef void _load(self, row) except *:
        cdef Py_ssize_t j
        if len(row) != self.ncols:
            raise ValueError("row length does not match span dimension")
        for j in range(self.ncols):
            self.work[j] = <long long>(row[j] % self.p)

    cdef Py_ssize_t _reduce(self) nogil:
        cdef Py_ssize_t k, j, pc, n = self.ncols
        cdef long long f, P = self.p
        cdef long long *r
        for k in range(self.nrows):
            pc = self.piv[k]
            f = self.work[pc]
            if f:
                r = self.buf + k * n
                for j in range(pc, n):
                    if r[j]:
                        self.work[j] = (self.work[j] - f * r[j]) % P
                        if self.work[j] < 0:
                            self.work[j] += P
        for j in range(n):
            if self.work[j]:
                return j
        return -1

    def insert(self, row):
        cdef Py_ssize_t lead, j, k, n = self.ncols
        cdef long long inv, P = self.p
        self._load(row)
        lead = self._reduce()
        if lead < 0:
            return False
        inv = pow(self.work[lead], P - 2, P)
        for j in range(n):
            self.work[j] = (self.work[j] * inv) % P
        # keep rows sorted by pivot column
        k = self.nrows
        while k > 0 and self.piv[k - 1] > lead:
            for j in range(n):
                self.buf[k * n + j] = self.buf[(k - 1) * n + j]
            self.piv[k] = self.piv[k - 1]
            k -= 1
        for j in range(n):
            self.buf[k * n + j] = self.work[j]
        self.piv[k] = lead
        self.nrows += 1
        return True

    def contains(self, row):
        self._load(row)
        return self._reduce() < 0
