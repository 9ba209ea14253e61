"""Square matrices of polynomials: products, minors and ranks."""
from __future__ import annotations

import json
from itertools import combinations
from typing import Sequence

from .fields import Field, rank as scalar_rank
from .poly import Poly, PolyError


class MatrixError(ValueError):
    pass


class PolyMatrix:
    """N x N matrix over ``field[x1..xr]``; entries are 1-based and sparse."""

    __slots__ = ("n", "field", "nvars", "entries", "degrees")

    def __init__(self, n: int, field: Field, nvars: int, entries=None, degrees=None):
        if n < 1:
            raise MatrixError("matrix dimension must be at least 1")
        self.n, self.field, self.nvars = n, field, nvars
        self.entries = {}
        for (i, j), p in (entries or {}).items():
            if not (1 <= i <= n and 1 <= j <= n):
                raise MatrixError(f"entry ({i},{j}) outside a {n}x{n} matrix")
            if isinstance(p, str):
                p = Poly.parse(p, field, nvars)
            elif not isinstance(p, Poly):
                p = Poly.const(field, nvars, p)
            if p.field != field or p.nvars != nvars:
                raise MatrixError(f"entry ({i},{j}) lives in a different ring")
            if p:
                self.entries[(i, j)] = p
        self.degrees = tuple(degrees) if degrees is not None else None

    @classmethod
    def from_rows(cls, rows, field: Field, nvars: int) -> "PolyMatrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise MatrixError("rows must form a square matrix")
        return cls(n, field, nvars,
                   {(i + 1, j + 1): x for i, r in enumerate(rows) for j, x in enumerate(r)})

    def __getitem__(self, ij) -> Poly:
        p = self.entries.get(ij)
        return p if p is not None else Poly.zero(self.field, self.nvars)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.n, self.field, self.nvars, self.entries) == (
            other.n, other.field, other.nvars, other.entries)

    def __repr__(self):
        return f"PolyMatrix(n={self.n}, {self.field}, nvars={self.nvars}, {len(self.entries)} nonzero)"

    def rows(self) -> list[list[Poly]]:
        return [[self[i, j] for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return matrix_mul(self, other)

    def evaluator(self):
        """Return ``point -> list of scalar rows``; faster than calling eval per entry."""
        f = self.field
        compiled = [((i - 1, j - 1), list(p.terms.items())) for (i, j), p in self.entries.items()]
        n, mod = self.n, f.p

        def at(point):
            pt = [f(x) for x in point]
            m = [[0] * n for _ in range(n)]
            for (i, j), terms in compiled:
                s = 0
                for e, c in terms:
                    v = c
                    for x, k in zip(pt, e):
                        if k:
                            v = v * (pow(x, k, mod) if mod else x**k)
                    s += v
                m[i][j] = f.norm(s)
            return m

        return at

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise MatrixError(f"point has {len(point)} coordinates, expected {self.nvars}")
        return self.evaluator()(point)

    # JSON -------------------------------------------------------------------

    def to_dict(self) -> dict:
        data = {
            "n": self.n,
            "r": self.nvars,
            "field": self.field.to_json(),
            "entries": [
                {"row": i, "col": j, "poly": str(p)} for (i, j), p in sorted(self.entries.items())
            ],
        }
        if self.degrees is not None:
            data["d"] = list(self.degrees)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "PolyMatrix":
        try:
            field = Field.from_json(data["field"])
            n, r = int(data["n"]), int(data["r"])
            entries = {}
            for e in data.get("entries", []):
                key = (int(e["row"]), int(e["col"]))
                if key in entries:
                    raise MatrixError(f"entry {key} given twice")
                entries[key] = Poly.parse(str(e["poly"]), field, r)
        except (KeyError, TypeError) as exc:
            raise MatrixError(f"malformed matrix JSON: {exc}") from None
        d = data.get("d")
        if d is not None:
            if not isinstance(d, list) or len(d) != n or not all(isinstance(x, int) for x in d):
                raise MatrixError(f"d must be a list of {n} integers")
        return cls(n, field, r, entries, d)

    @classmethod
    def from_json(cls, text: str) -> "PolyMatrix":
        return cls.from_dict(json.loads(text))


def _check_same_ring(a: PolyMatrix, b: PolyMatrix):
    if a.field != b.field or a.nvars != b.nvars:
        raise MatrixError("matrices live over different rings")
    if a.n != b.n:
        raise MatrixError(f"dimension mismatch: {a.n} vs {b.n}")


def matrix_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    _check_same_ring(a, b)
    by_row: dict[int, list] = {}
    for (k, j), q in b.entries.items():
        by_row.setdefault(k, []).append((j, q))
    out: dict = {}
    for (i, k), p in a.entries.items():
        for j, q in by_row.get(k, ()):
            prev = out.get((i, j))
            out[(i, j)] = p * q if prev is None else prev + p * q
    return PolyMatrix(a.n, a.field, a.nvars, out)


def is_square_zero(D: PolyMatrix):
    """(True, None) if D^2 = 0, else (False, ((i, j), entry)) for the first nonzero entry."""
    sq = matrix_mul(D, D)
    if not sq.entries:
        return True, None
    ij = min(sq.entries)
    return False, (ij, sq.entries[ij])


def _det_cofactor(m: list[list[Poly]], field, nvars) -> Poly:
    k = len(m)
    if k == 1:
        return m[0][0]
    if k == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = Poly.zero(field, nvars)
    for c in range(k):
        if not m[0][c]:
            continue
        sub = [row[:c] + row[c + 1:] for row in m[1:]]
        term = m[0][c] * _det_cofactor(sub, field, nvars)
        total = total - term if c % 2 else total + term
    return total


def _bareiss(m: list[list[Poly]], field, nvars, full: bool):
    """Fraction-free elimination.

    Returns (rank, det).  With ``full`` pivots may come from any remaining
    column, which gives the rank; otherwise only rows are swapped, and
    the determinant is tracked with its sign.
    """
    m = [list(row) for row in m]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    one = Poly.const(field, nvars, 1)
    prev = one
    sign = 1
    k = 0
    while k < min(nrows, ncols):
        pivot = None
        cols = range(k, ncols) if full else (k,)
        for c in cols:
            for r in range(k, nrows):
                if m[r][c]:
                    pivot = (r, c)
                    break
            if pivot:
                break
        if pivot is None:
            if full:
                break
            return k, Poly.zero(field, nvars)
        r, c = pivot
        if r != k:
            m[k], m[r] = m[r], m[k]
            sign = -sign
        if c != k:
            for row in m:
                row[k], row[c] = row[c], row[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, nrows):
            for j in range(k + 1, ncols):
                num = pk * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.divexact(prev) if prev != one else num
            m[i][k] = Poly.zero(field, nvars)
        prev = pk
        k += 1
    det = m[-1][-1] if nrows == ncols and k == nrows else Poly.zero(field, nvars)
    return k, det * sign if sign < 0 else det


def det(m: list[list[Poly]], field: Field, nvars: int) -> Poly:
    """Exact determinant: cofactor expansion up to 4x4, Bareiss above."""
    k = len(m)
    if k == 0:
        return Poly.const(field, nvars, 1)
    if any(len(row) != k for row in m):
        raise MatrixError("determinant of a non-square selection")
    if k <= 4:
        return _det_cofactor(m, field, nvars)
    return _bareiss(m, field, nvars, full=False)[1]


def minor(X: PolyMatrix, rows: Sequence[int], cols: Sequence[int]) -> Poly:
    """Determinant of the submatrix on the given 1-based rows and columns (in the given order)."""
    rows, cols = list(rows), list(cols)
    if not rows or len(rows) != len(cols):
        raise MatrixError(f"minor needs equally many rows and columns, got {len(rows)} and {len(cols)}")
    for idx in rows + cols:
        if not 1 <= idx <= X.n:
            raise MatrixError(f"index {idx} outside 1..{X.n}")
    sub = [[X[i, j] for j in cols] for i in rows]
    return det(sub, X.field, X.nvars)


def symbolic_rank(X: PolyMatrix) -> int:
    """Rank over the fraction field: the largest t with a nonzero t x t minor."""
    live_rows = sorted({i for i, _ in X.entries})
    live_cols = sorted({j for _, j in X.entries})
    if not live_rows:
        return 0
    m = [[X[i, j] for j in live_cols] for i in live_rows]
    return _bareiss(m, X.field, X.nvars, full=True)[0]


def symbolic_rank_by_minors(X: PolyMatrix) -> int:
    """Brute-force rank from the minor definition (small matrices only)."""
    for t in range(X.n, 0, -1):
        for rows in combinations(range(1, X.n + 1), t):
            for cols in combinations(range(1, X.n + 1), t):
                if minor(X, rows, cols):
                    return t
    return 0


def rank_at_point(X: PolyMatrix, point: Sequence) -> int:
    return scalar_rank(X.evaluate(point), X.field)


__all__ = [
    "MatrixError", "PolyMatrix", "matrix_mul", "is_square_zero", "det", "minor",
    "symbolic_rank", "symbolic_rank_by_minors", "rank_at_point", "PolyError",
]
