"""Moves between Borel orbits, the induced order on RP(N), and rank profiles.

The order is generated by single moves (a move takes an orbit to a smaller
one).  Only moves III and V keep an involution fixed-point-free, so
``build_order`` accepts those two kinds only.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .involution import (
    Involution,
    InvolutionError,
    PartialPermutationMatrix,
    anti_diagonal_dual,
    enumerate_rp,
)
from .polyalg.fields import GF, Field

KINDS = ("I", "II", "III", "IV", "V")
RANK_PRESERVING = frozenset({"III", "V"})


class MoveError(ValueError):
    pass


class OrbitError(ValueError):
    pass


class AncestorError(Exception):
    """Some node does not have exactly one maximal ancestor."""

    def __init__(self, violations: dict):
        self.violations = violations
        first = min(violations)
        super().__init__(
            f"{len(violations)} node(s) without a unique maximal ancestor, e.g. {first}: "
            + "{" + ", ".join(str(s) for s in sorted(violations[first])) + "}"
        )


@dataclass(frozen=True)
class Move:
    kind: str
    p: int
    q: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MoveError(f"unknown move kind {self.kind!r}")

    def __str__(self):
        return f"{self.kind}({self.p},{self.q})"


def parse_kinds(spec) -> frozenset:
    """'iii+v' or an iterable of kind names -> frozenset of kinds."""
    if isinstance(spec, str):
        spec = spec.replace(",", "+").split("+")
    kinds = frozenset(k.strip().upper() for k in spec if k.strip())
    bad = kinds - set(KINDS)
    if bad:
        raise MoveError(f"unknown move kind(s): {', '.join(sorted(bad))}")
    return kinds


def _guard(kind: str, s: dict, p: int, q: int) -> str | None:
    """None if the move applies, else a description of the failing inequality."""
    def chain(*links):
        for (la, a), (lb, b) in zip(links, links[1:]):
            if not a < b:
                def show(label, v):
                    return label if label == str(v) else f"{label}={v}"
                full = " < ".join(show(*x) for x in links)
                return f"needs {full}; {show(la, a)} < {show(lb, b)} fails"
        return None

    if not p < q:
        return f"move parameters must satisfy {p} < {q}"
    if kind == "I":
        return None if s[p] == q else f"sigma({p})={s[p]} is not {q}"
    if kind == "II":
        i, i2 = p, q
        if s[i] != i:
            return f"sigma({i})={s[i]} is not a fixed point"
        return chain((f"{i}", i), (f"{i2}", i2), (f"sigma({i2})", s[i2]))
    if kind == "III":
        j2, j = p, q
        return chain((f"sigma({j})", s[j]), (f"sigma({j2})", s[j2]), (f"{j2}", j2), (f"{j}", j))
    if kind == "IV":
        j2, j = p, q
        if s[j] != j:
            return f"sigma({j})={s[j]} is not a fixed point"
        return chain((f"sigma({j2})", s[j2]), (f"{j2}", j2), (f"{j}", j))
    i, j = p, q
    return chain((f"{i}", i), (f"sigma({i})", s[i]), (f"sigma({j})", s[j]), (f"{j}", j))


def apply_move(sigma: Involution, move: Move) -> Involution:
    s = sigma.as_map()
    if not (1 <= move.p <= sigma.n_points and 1 <= move.q <= sigma.n_points):
        raise MoveError(f"{move} outside 1..{sigma.n_points}")
    why = _guard(move.kind, s, move.p, move.q)
    if why:
        raise MoveError(f"{move} does not apply to {sigma}: {why}")
    if move.kind == "I":
        return sigma.without(move.p, move.q)
    return sigma.conjugate(move.p, move.q)


def applicable_moves(sigma: Involution, kinds: Iterable[str] = KINDS) -> list[tuple[Move, Involution]]:
    """Every legal (move, result).  Results of move I have lower rank (``not result.is_full``)."""
    kinds = parse_kinds(kinds)
    s = sigma.as_map()
    n = sigma.n_points
    out = []
    for kind in KINDS:
        if kind not in kinds:
            continue
        for p in range(1, n + 1):
            for q in range(p + 1, n + 1):
                if _guard(kind, s, p, q) is None:
                    mv = Move(kind, p, q)
                    out.append((mv, apply_move(sigma, mv)))
    return out


def _key(sigma: Involution):
    return sigma.pairs


@dataclass(frozen=True)
class PosetDag:
    n_points: int
    nodes: tuple
    covers: frozenset
    move_set: frozenset
    levels: dict
    _index: dict = field(repr=False, compare=False)
    _below: tuple = field(repr=False, compare=False)

    def descendants(self, sigma: Involution) -> frozenset:
        """Nodes strictly below sigma."""
        mask = self._below[self._index[sigma]]
        return frozenset(self.nodes[k] for k in range(len(self.nodes)) if mask >> k & 1)

    def is_below(self, lower: Involution, upper: Involution) -> bool:
        """True when lower < upper strictly."""
        return bool(self._below[self._index[upper]] >> self._index[lower] & 1)

    def parents(self, sigma: Involution) -> list:
        return sorted((u for u, v in self.covers if v == sigma), key=_key)

    def children(self, sigma: Involution) -> list:
        return sorted((v for u, v in self.covers if u == sigma), key=_key)

    def level_sets(self) -> list[list[Involution]]:
        depth = max(self.levels.values(), default=0)
        out = [[] for _ in range(depth)]
        for s in self.nodes:
            out[self.levels[s] - 1].append(s)
        return out

    def minimal_elements(self) -> frozenset:
        has_child = {u for u, _ in self.covers}
        return frozenset(s for s in self.nodes if s not in has_child)


def build_order(n: int, kinds=("III",)) -> PosetDag:
    kinds = parse_kinds(kinds)
    if kinds - RANK_PRESERVING:
        raise MoveError(
            f"order leaves RP({n}): moves {', '.join(sorted(kinds - RANK_PRESERVING))} drop rank"
        )
    nodes = tuple(sorted(enumerate_rp(n), key=_key))
    index = {s: k for k, s in enumerate(nodes)}
    steps = [
        sorted({index[t] for _, t in applicable_moves(s, kinds)}) for s in nodes
    ]

    indeg = [0] * len(nodes)
    for kids in steps:
        for c in kids:
            indeg[c] += 1
    queue = deque(k for k, d in enumerate(indeg) if d == 0)
    topo = []
    while queue:
        u = queue.popleft()
        topo.append(u)
        for c in steps[u]:
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    if len(topo) != len(nodes):
        raise MoveError("move relation has a cycle")

    below = [0] * len(nodes)
    for u in reversed(topo):
        m = 0
        for c in steps[u]:
            m |= (1 << c) | below[c]
        below[u] = m

    covers = set()
    for u, kids in enumerate(steps):
        deeper = 0
        for c in kids:
            deeper |= below[c]
        for c in kids:
            if not deeper >> c & 1:
                covers.add((u, c))

    cover_parents: dict[int, list[int]] = {}
    for u, c in covers:
        cover_parents.setdefault(c, []).append(u)
    level = {}
    for u in topo:
        ps = cover_parents.get(u)
        level[u] = 1 + max(level[p] for p in ps) if ps else 1

    return PosetDag(
        n_points=n,
        nodes=nodes,
        covers=frozenset((nodes[u], nodes[c]) for u, c in covers),
        move_set=kinds,
        levels={nodes[k]: lv for k, lv in level.items()},
        _index=index,
        _below=tuple(below),
    )


def maximal_elements(dag: PosetDag) -> frozenset:
    has_parent = {v for _, v in dag.covers}
    return frozenset(s for s in dag.nodes if s not in has_parent)


def maximal_ancestors(dag: PosetDag) -> dict:
    """node -> set of maximal nodes lying (weakly) above it."""
    out = {s: set() for s in dag.nodes}
    for m in maximal_elements(dag):
        out[m].add(m)
        for s in dag.descendants(m):
            out[s].add(m)
    return {s: frozenset(a) for s, a in out.items()}


def unique_maximal_ancestor(dag: PosetDag) -> dict:
    """Map each node to its unique maximal ancestor; AncestorError if not unique."""
    anc = maximal_ancestors(dag)
    bad = {s: a for s, a in anc.items() if len(a) != 1}
    if bad:
        raise AncestorError(bad)
    return {s: next(iter(a)) for s, a in anc.items()}


def duality_classes(maximal: Iterable[Involution]) -> frozenset:
    maximal = frozenset(maximal)
    classes = set()
    for s in maximal:
        d = anti_diagonal_dual(s)
        classes.add(frozenset({s, d}) if d in maximal else frozenset({s}))
    return frozenset(classes)


def sorted_classes(classes: Iterable[frozenset]) -> list[list[Involution]]:
    rows = [sorted(c, key=_key) for c in classes]
    return sorted(rows, key=lambda c: _key(c[0]))


# export ---------------------------------------------------------------------


def hasse_dict(dag: PosetDag) -> dict:
    edges = sorted(dag.covers, key=lambda e: (_key(e[0]), _key(e[1])))
    return {
        "nodes": [str(s) for s in dag.nodes],
        "edges": [[str(u), str(v)] for u, v in edges],
        "levels": {str(s): dag.levels[s] for s in dag.nodes},
    }


def export_hasse(dag: PosetDag, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(hasse_dict(dag), sort_keys=True) + "\n").encode()
    if fmt == "dot":
        kinds = "+".join(k for k in KINDS if k in dag.move_set) or "none"
        lines = [f'digraph "RP{dag.n_points}_{kinds}" {{', "  rankdir=TB;"]
        for s in dag.nodes:
            lines.append(f'  "{s}" [label="{s}\\nL{dag.levels[s]}"];')
        for u, v in sorted(dag.covers, key=lambda e: (_key(e[0]), _key(e[1]))):
            lines.append(f'  "{u}" -> "{v}";')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown export format {fmt!r}; use 'dot' or 'json'")


# rank profiles --------------------------------------------------------------


@dataclass(frozen=True)
class RankProfile:
    """rho(i, j) = rank of rows i..N, columns 1..j; zero on empty ranges.

    ``values[i - 1][j]`` holds rho(i, j) for 1 <= i <= N+1, 0 <= j <= N.
    """

    n: int
    values: tuple

    def rho(self, i: int, j: int) -> int:
        if i > self.n or j < 1:
            return 0
        return self.values[i - 1][j]

    def dominated_by(self, other: "RankProfile") -> bool:
        return all(a <= b for ra, rb in zip(self.values, other.values) for a, b in zip(ra, rb))


def _check_orbit_input(X: Sequence[Sequence[int]], field: Field):
    n = len(X)
    if any(len(row) != n for row in X):
        raise OrbitError("matrix must be square")
    M = [[field(x) for x in row] for row in X]
    for i in range(n):
        for j in range(i + 1):
            if M[i][j] != 0:
                raise OrbitError(f"not strictly upper triangular: entry ({i + 1},{j + 1}) is nonzero")
    for i in range(n):
        for j in range(n):
            if field.norm(sum(M[i][k] * M[k][j] for k in range(n))) != 0:
                raise OrbitError(f"not square-zero: (X^2)({i + 1},{j + 1}) is nonzero")
    return M


def rank_profile(X: Sequence[Sequence[int]], p: int) -> RankProfile:
    field = GF(p)
    M = _check_orbit_input(X, field)
    n = len(M)
    values = []
    for i in range(1, n + 2):
        row = [0]
        basis: dict[int, list] = {}  # pivot position -> reduced vector
        for j in range(1, n + 1):
            v = [M[r][j - 1] for r in range(i - 1, n)]
            for piv, b in basis.items():
                if v[piv]:
                    f = v[piv]
                    v = [field.norm(x - f * y) for x, y in zip(v, b)]
            piv = next((k for k, x in enumerate(v) if x), None)
            if piv is not None:
                inv = field.inv(v[piv])
                v = [field.norm(x * inv) for x in v]
                for q, b in basis.items():
                    if b[piv]:
                        f = b[piv]
                        basis[q] = [field.norm(x - f * y) for x, y in zip(b, v)]
                basis[piv] = v
            row.append(len(basis))
        values.append(tuple(row))
    return RankProfile(n, tuple(values))


def involution_rank_profile(sigma: Involution) -> RankProfile:
    """Rank profile of the matrix of sigma, by counting pairs."""
    n = sigma.n_points
    values = tuple(
        tuple(sum(1 for a, b in sigma.pairs if a >= i and b <= j) for j in range(n + 1))
        for i in range(1, n + 2)
    )
    return RankProfile(n, values)


def orbit_representative(X: Sequence[Sequence[int]], p: int) -> PartialPermutationMatrix:
    """The partial permutation matrix in the Borel conjugation orbit of X."""
    prof = rank_profile(X, p)
    n = prof.n
    rho = prof.rho
    ones = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            v = rho(i, j) - rho(i + 1, j) - rho(i, j - 1) + rho(i + 1, j - 1)
            if v not in (0, 1):
                raise OrbitError(f"rank profile gives {v} at ({i},{j}); input is not an orbit point")
            if v:
                ones.append((i, j))
    try:
        return PartialPermutationMatrix(n, frozenset(ones))
    except InvolutionError as exc:
        raise OrbitError(f"rank profile does not give a partial permutation matrix: {exc}") from None


def dominance_agreement(n: int, kinds=("III", "V")) -> dict:
    """Compare reachability in the move order with pointwise rank-profile dominance."""
    dag = build_order(n, kinds)
    prof = {s: involution_rank_profile(s) for s in dag.nodes}
    agree, mismatches = 0, []
    for upper in dag.nodes:
        for lower in dag.nodes:
            if lower == upper:
                continue
            reach = dag.is_below(lower, upper)
            dom = prof[lower].dominated_by(prof[upper])
            if reach == dom:
                agree += 1
            else:
                mismatches.append({"upper": str(upper), "lower": str(lower),
                                   "reachable": reach, "dominated": dom})
    total = agree + len(mismatches)
    return {"n": n, "pairs": total, "agree": agree, "mismatches": mismatches,
            "agreement": agree / total if total else 1.0}
