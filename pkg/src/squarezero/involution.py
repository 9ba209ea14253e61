"""Fixed-point-free involutions and their partial permutation matrices.

An involution on {1..N} is stored as its sorted list of transpositions
``(a, b)`` with ``a < b``.  The matrix of an involution has a one at
``(a, b)`` for every pair, so it is strictly upper triangular and squares
to zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_POINTS = 12


class InvolutionError(ValueError):
    """Malformed involution, matrix or pair string."""


@dataclass(frozen=True, order=True)
class Involution:
    n_points: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted((min(a, b), max(a, b)) for a, b in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        seen = set()
        for a, b in pairs:
            if a == b:
                raise InvolutionError(f"degenerate pair {a}-{b}")
            if a < 1 or b > self.n_points:
                raise InvolutionError(f"pair {a}-{b} outside 1..{self.n_points}")
            if a in seen or b in seen:
                raise InvolutionError(f"index reused in pair {a}-{b}")
            seen.update((a, b))

    @classmethod
    def parse(cls, text: str, n_points: int | None = None) -> "Involution":
        """Read ``"1-8,2-7,3-6,4-5"``; ``n_points`` defaults to the largest index."""
        pairs = []
        for chunk in text.replace(" ", "").split(","):
            if not chunk:
                continue
            try:
                a, b = chunk.split("-")
                a, b = int(a), int(b)
            except ValueError:
                raise InvolutionError(f"bad pair {chunk!r}") from None
            if a >= b:
                raise InvolutionError(f"pair {chunk!r} must be written a-b with a<b")
            pairs.append((a, b))
        if not pairs:
            raise InvolutionError("empty involution")
        if n_points is None:
            n_points = max(b for _, b in pairs)
        return cls(n_points, tuple(pairs))

    def __str__(self):
        return ",".join(f"{a}-{b}" for a, b in self.pairs)

    def cycles(self) -> str:
        """Cycle notation as printed in tables, e.g. ``(12)(38)(47)(56)``."""
        sep = "" if self.n_points < 10 else " "
        return "".join(f"({a}{sep}{b})" for a, b in self.pairs)

    @property
    def rank(self) -> int:
        return len(self.pairs)

    @property
    def is_full(self) -> bool:
        return 2 * len(self.pairs) == self.n_points

    def require_full(self) -> "Involution":
        if not self.is_full:
            used = {i for p in self.pairs for i in p}
            missing = min(set(range(1, self.n_points + 1)) - used)
            raise InvolutionError(f"not full rank: index {missing} unmatched")
        return self

    def image(self, i: int) -> int:
        """sigma(i); fixed points map to themselves."""
        for a, b in self.pairs:
            if a == i:
                return b
            if b == i:
                return a
        return i

    def as_map(self) -> dict[int, int]:
        m = {i: i for i in range(1, self.n_points + 1)}
        for a, b in self.pairs:
            m[a], m[b] = b, a
        return m

    def conjugate(self, p: int, q: int) -> "Involution":
        """Conjugate by the transposition (p q)."""
        swap = {p: q, q: p}
        return Involution(
            self.n_points,
            tuple((swap.get(a, a), swap.get(b, b)) for a, b in self.pairs),
        )

    def without(self, a: int, b: int) -> "Involution":
        """sigma * (a b) for a pair (a, b) of sigma: the pair becomes two fixed points."""
        pair = (min(a, b), max(a, b))
        if pair not in self.pairs:
            raise InvolutionError(f"{a}-{b} is not a pair of {self}")
        return Involution(self.n_points, tuple(p for p in self.pairs if p != pair))


@dataclass(frozen=True)
class PartialPermutationMatrix:
    n: int
    ones: frozenset

    def __post_init__(self):
        ones = frozenset((int(i), int(j)) for i, j in self.ones)
        object.__setattr__(self, "ones", ones)
        rows, cols = set(), set()
        for i, j in ones:
            if not (1 <= i < j <= self.n):
                raise InvolutionError(f"position ({i},{j}) is not strictly upper triangular")
            if i in rows or j in cols:
                raise InvolutionError(f"two ones share row {i} or column {j}")
            rows.add(i)
            cols.add(j)
        if rows & cols:
            k = min(rows & cols)
            raise InvolutionError(f"not square-zero: row {k} and column {k} both used")

    def dense(self) -> list[list[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for i, j in self.ones:
            m[i - 1][j - 1] = 1
        return m

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "ones": sorted(map(list, self.ones))}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "PartialPermutationMatrix":
        data = json.loads(text)
        return cls(data["n"], frozenset(tuple(p) for p in data["ones"]))


def _check_n(n: int):
    if not isinstance(n, int) or n % 2 or not 2 <= n <= MAX_POINTS:
        raise InvolutionError(f"N must be even with 2 <= N <= {MAX_POINTS}, got {n!r}")


def _matchings(points: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for tail in _matchings(remaining):
            yield ((first, partner),) + tail


def enumerate_rp(n: int) -> frozenset[Involution]:
    """All fixed-point-free involutions of {1..n}; there are (n-1)!! of them."""
    _check_n(n)
    return frozenset(Involution(n, m) for m in _matchings(tuple(range(1, n + 1))))


def to_matrix(sigma: Involution) -> PartialPermutationMatrix:
    return PartialPermutationMatrix(sigma.n_points, frozenset(sigma.pairs))


def from_matrix(P: PartialPermutationMatrix) -> Involution:
    return Involution(P.n, tuple(sorted(P.ones))).require_full()


def block_type(sigma: Involution) -> tuple[int, ...]:
    """Minimal prefix-block composition of the matrix of ``sigma``.

    Scanning left to right, index j opens a new block exactly when j closes
    a pair whose opener lies in the current block.
    """
    partner = sigma.as_map()
    parts = []
    start = 1
    for j in range(1, sigma.n_points + 1):
        i = partner[j]
        if i < j and i >= start:
            parts.append(j - start)
            start = j
    parts.append(sigma.n_points + 1 - start)
    return tuple(parts)


def boundary_counts(sigma: Involution) -> tuple[int, int]:
    """(C, R): leading zero columns and trailing zero rows of the matrix."""
    n = sigma.n_points
    cols = {b for _, b in sigma.pairs}
    rows = {a for a, _ in sigma.pairs}
    C = next((j - 1 for j in range(1, n + 1) if j in cols), n)
    R = next((n - i for i in range(n, 0, -1) if i in rows), n)
    return C, R


def anti_diagonal_dual(sigma: Involution) -> Involution:
    n = sigma.n_points
    return Involution(n, tuple((n + 1 - b, n + 1 - a) for a, b in sigma.pairs))


def parse_many(texts: Iterable[str], n_points: int | None = None) -> list[Involution]:
    return [Involution.parse(t, n_points) for t in texts]
