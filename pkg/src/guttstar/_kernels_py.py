"""Pure-Python PBW normal-ordering kernel.

Elements are plain dicts ``{(word, zpow): coefficient}`` with ``word`` a
nondecreasing tuple of basis indices.  ``_ckernels.pyx`` mirrors this file
line for line with static types; keep the two in sync.
"""

from fractions import Fraction

IMPLEMENTATION = "python"


def _integral_view(table, zval):
    """Swap Fractions for ints when every constant (and zval) is integral.

    Memoized insertions then run on machine-sized ints; callers multiply
    the results into Fractions so outputs stay exact either way.
    """
    flat = [c for row in table for cell in row for _, c in cell]
    if zval is not None:
        flat.append(zval)
    if all(Fraction(c).denominator == 1 for c in flat):
        tab = tuple(tuple(tuple((k, int(c)) for k, c in cell) for cell in row) for row in table)
        return tab, (None if zval is None else int(zval)), 1
    return table, zval, Fraction(1)


class OrderingEngine:
    """Right multiplication of PBW words by letters modulo the z-deformed ideal.

    ``table[i][j]`` lists ``(k, c)`` with ``[e_i, e_j] = sum c e_k``.  With
    ``zval`` None the deformation parameter stays formal and is tracked as a
    power; otherwise it is multiplied in numerically.
    """

    def __init__(self, table, zval=None):
        self.table, self.zval, self.one = _integral_view(table, zval)
        self._insert = {}

    def cache_size(self):
        return len(self._insert)

    def insert(self, word, x):
        key = (word, x)
        hit = self._insert.get(key)
        if hit is not None:
            return hit
        if not word or word[-1] <= x:
            res = {(word + (x,), 0): self.one}
            self._insert[key] = res
            return res
        y = word[-1]
        v = word[:-1]
        res = {}
        # v y x = (v x) y + z v [y, x]
        for (s, zp), c in self.insert(v, x).items():
            for (s2, zp2), c2 in self.insert(s, y).items():
                k2 = (s2, zp + zp2)
                res[k2] = res.get(k2, 0) + c * c2
        formal = self.zval is None
        for k, ck in self.table[y][x]:
            f = ck if formal else ck * self.zval
            dz = 1 if formal else 0
            for (s, zp), c in self.insert(v, k).items():
                k2 = (s, zp + dz)
                res[k2] = res.get(k2, 0) + f * c
        res = {k2: c for k2, c in res.items() if c}
        self._insert[key] = res
        return res

    def mul_letter(self, terms, x):
        out = {}
        for (w, zp), c in terms.items():
            for (s, zp2), c2 in self.insert(w, x).items():
                k2 = (s, zp + zp2)
                out[k2] = out.get(k2, 0) + c * c2
        return {k2: c for k2, c in out.items() if c}

    def mul_word(self, terms, word):
        for x in word:
            terms = self.mul_letter(terms, x)
        return terms

    def normal_order(self, word):
        return self.mul_word({((), 0): self.one}, word)

    def mul(self, a, b):
        out = {}
        for (wb, jb), cb in b.items():
            part = self.mul_word(a, wb)
            for (w, j), c in part.items():
                k2 = (w, j + jb)
                out[k2] = out.get(k2, 0) + c * cb
        return {k2: c for k2, c in out.items() if c}
