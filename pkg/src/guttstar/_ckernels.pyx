# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled PBW normal-ordering kernel; mirrors _kernels_py.py."""

from fractions import Fraction

IMPLEMENTATION = "cython"


def _integral_view(table, zval):
    """Swap Fractions for ints when every constant (and zval) is integral."""
    flat = [c for row in table for cell in row for _, c in cell]
    if zval is not None:
        flat.append(zval)
    if all(Fraction(c).denominator == 1 for c in flat):
        tab = tuple(tuple(tuple((k, int(c)) for k, c in cell) for cell in row) for row in table)
        return tab, (None if zval is None else int(zval)), 1
    return table, zval, Fraction(1)


cdef inline void _acc(dict d, object key, object val):
    cdef object old = d.get(key)
    if old is None:
        d[key] = val
    else:
        d[key] = old + val


cdef dict _prune(dict d):
    return {k: c for k, c in d.items() if c}


cdef class OrderingEngine:
    cdef public object table
    cdef public object zval
    cdef public object one
    cdef dict _insert
    cdef bint _formal

    def __init__(self, table, zval=None):
        self.table, self.zval, self.one = _integral_view(table, zval)
        self._formal = zval is None
        self._insert = {}

    def cache_size(self):
        return len(self._insert)

    cpdef dict insert(self, tuple word, Py_ssize_t x):
        cdef tuple key = (word, x)
        cdef object hit = self._insert.get(key)
        if hit is not None:
            return <dict>hit
        cdef dict res
        cdef Py_ssize_t n = len(word)
        if n == 0 or <Py_ssize_t>word[n - 1] <= x:
            res = {(word + (x,), 0): self.one}
            self._insert[key] = res
            return res
        cdef Py_ssize_t y = word[n - 1]
        cdef tuple v = word[:n - 1]
        cdef tuple s, s2
        cdef Py_ssize_t zp, zp2, dz, k
        cdef object c, c2, f, ck
        res = {}
        for (s, zp), c in self.insert(v, x).items():
            for (s2, zp2), c2 in self.insert(s, y).items():
                _acc(res, (s2, zp + zp2), c * c2)
        dz = 1 if self._formal else 0
        for k, ck in self.table[y][x]:
            f = ck if self._formal else ck * self.zval
            for (s, zp), c in self.insert(v, k).items():
                _acc(res, (s, zp + dz), f * c)
        res = _prune(res)
        self._insert[key] = res
        return res

    cpdef dict mul_letter(self, dict terms, Py_ssize_t x):
        cdef dict out = {}
        cdef tuple w, s
        cdef Py_ssize_t zp, zp2
        cdef object c, c2
        for (w, zp), c in terms.items():
            for (s, zp2), c2 in self.insert(w, x).items():
                _acc(out, (s, zp + zp2), c * c2)
        return _prune(out)

    cpdef dict mul_word(self, dict terms, tuple word):
        cdef Py_ssize_t x
        for x in word:
            terms = self.mul_letter(terms, x)
        return terms

    def normal_order(self, word):
        return self.mul_word({((), 0): self.one}, tuple(word))

    def mul(self, dict a, dict b):
        cdef dict out = {}
        cdef dict part
        cdef tuple wb, w
        cdef Py_ssize_t jb, j
        cdef object cb, c
        for (wb, jb), cb in b.items():
            part = self.mul_word(a, wb)
            for (w, j), c in part.items():
                _acc(out, (w, j + jb), c * cb)
        return _prune(out)
