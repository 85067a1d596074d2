"""Incremental exact row reduction over the rationals.

Vectors are sparse ``{coordinate: Fraction}`` dicts whose coordinates are
totally ordered (basis elements).  Every stored row also carries a
``combo``: the linear combination of inserted input vectors it equals, which
is what lets callers certify membership and extract kernel relations.
"""

from fractions import Fraction


def _axpy(y, a, x):
    """y += a * x in place, dropping zeros."""
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class RowSpace:
    """Fully reduced row echelon basis of a growing subspace."""

    def __init__(self):
        self.rows = {}  # pivot -> (row, combo); each row is 1 at its pivot, 0 at other pivots

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec, combo=None):
        vec = {k: Fraction(v) for k, v in dict(vec).items() if v}
        combo = dict(combo or {})
        for p in [p for p in vec if p in self.rows]:
            c = vec.get(p)
            if c:
                row, rcombo = self.rows[p]
                _axpy(vec, -c, row)
                _axpy(combo, -c, rcombo)
        return vec, combo

    def contains(self, vec):
        return not self.reduce(vec)[0]

    def insert(self, vec, combo=None):
        """Add ``vec``; return None if it was independent, else the relation.

        The relation is a combo (over the inserted inputs) summing to zero.
        """
        vec, combo = self.reduce(vec, combo)
        if not vec:
            return combo
        # largest |numerator| pivot, ties to the largest coordinate
        pivot = max(vec, key=lambda k: (abs(vec[k].numerator), k))
        inv = 1 / vec[pivot]
        vec = {k: v * inv for k, v in vec.items()}
        combo = {k: v * inv for k, v in combo.items()}
        for p, (row, rcombo) in self.rows.items():
            c = row.get(pivot)
            if c:
                _axpy(row, -c, vec)
                _axpy(rcombo, -c, combo)
        self.rows[pivot] = (vec, combo)
        return None
