"""Gaussian elimination over a :class:`~rsrepair.gf.GF`.

Matrices are lists of rows of field codes.
"""

from __future__ import annotations

from .errors import NotInSpanError, RankError


def _rref(field, rows, ncols):
    """Reduce ``rows`` in place; return the pivot columns among the first ``ncols``."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(field, rows) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return len(_rref(field, rows, len(rows[0])))


def solve(field, columns, target):
    """Unique coefficients c with ``sum(c_j * columns[j]) == target``.

    ``columns`` are vectors of equal length. Raises :class:`RankError` if the
    columns are dependent and :class:`NotInSpanError` if ``target`` is outside
    their span.
    """
    ncols = len(columns)
    dim = len(target)
    rows = [[col[i] for col in columns] + [target[i]] for i in range(dim)]
    pivots = _rref(field, rows, ncols)
    if len(pivots) < ncols:
        raise RankError(f"{ncols} vectors have rank {len(pivots)}")
    for i in range(len(pivots), dim):
        if rows[i][ncols]:
            raise NotInSpanError("target is not in the span of the given vectors")
    return [rows[i][ncols] for i in range(ncols)]


def inverse(field, matrix):
    n = len(matrix)
    rows = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(matrix)]
    pivots = _rref(field, rows, n)
    if len(pivots) < n:
        raise RankError(f"matrix of size {n} has rank {len(pivots)}")
    return [row[n:] for row in rows]


def mat_vec(field, matrix, vec):
    return [field.dot(row, vec) for row in matrix]


class Echelon:
    """Incrementally maintained row-echelon basis; ``add`` reports rank growth."""

    def __init__(self, field, dim: int):
        self.field = field
        self.dim = dim
        self._rows: list[tuple[int, list[int]]] = []   # (pivot column, normalized row)

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec):
        f = self.field
        v = list(vec)
        for c, row in self._rows:
            if v[c]:
                k = v[c]
                v = [f.sub(x, f.mul(k, y)) for x, y in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        v = self.reduce(vec)
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            return False
        inv = self.field.inv(v[c])
        self._rows.append((c, [self.field.mul(inv, x) for x in v]))
        return True
