"""Sparse exact row reduction over Q.

Vectors are dicts mapping hashable coordinates to :class:`~fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction

_TAG = "__tag__"


def _is_tag(k) -> bool:
    return isinstance(k, tuple) and len(k) == 2 and k[0] == _TAG


class RowEchelon:
    """Reduced row echelon basis of a subspace, grown one vector at a time.

    Pivot rows never contain another pivot column, so a single pass reduces a
    vector completely.  Tag coordinates (used by :func:`solve_combination`) are
    carried along but never chosen as pivots.
    """

    def __init__(self):
        self.pivots: dict = {}

    def reduce(self, vec: dict) -> dict:
        v = {k: Fraction(c) for k, c in vec.items() if c}
        for k in [k for k in v if k in self.pivots]:
            c = v.get(k)
            if not c:
                continue
            for pk, pc in self.pivots[k].items():
                nv = v.get(pk, 0) - c * pc
                if nv:
                    v[pk] = nv
                else:
                    v.pop(pk, None)
        return v

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; returns True when it enlarged the span."""
        v = self.reduce(vec)
        data = [k for k in v if not _is_tag(k)]
        if not data:
            return False
        col = max(data, key=_sort_key)
        inv = 1 / v[col]
        v = {k: c * inv for k, c in v.items()}
        for row in self.pivots.values():
            c = row.get(col)
            if c:
                for k, val in v.items():
                    nv = row.get(k, 0) - c * val
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.pivots[col] = v
        return True

    def contains(self, vec: dict) -> bool:
        return not any(not _is_tag(k) for k in self.reduce(vec))

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _sort_key(k):
    return (type(k).__name__, k) if isinstance(k, (tuple, int, str)) else (type(k).__name__, repr(k))


def rank(vectors) -> int:
    ech = RowEchelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def solve_combination(basis: list, target: dict):
    """Coefficients ``c`` with ``sum(c_i * basis_i) == target``, or None if no such ``c`` exists."""
    ech = RowEchelon()
    for idx, b in enumerate(basis):
        row = dict(b)
        row[(_TAG, idx)] = Fraction(1)
        ech.add(row)
    t = ech.reduce(target)
    if any(not _is_tag(k) for k in t):
        return None
    coeffs = [Fraction(0)] * len(basis)
    for k, c in t.items():
        coeffs[k[1]] = -c
    return coeffs
