"""Checks of the six rank conditions on a polynomial matrix D.

Condition 4 (full rank n at every nonzero point) is only decidable here
over a finite field, by scanning all of F_p^r.  Sampled checks are
reported as such and never upgraded to a full pass.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .polyalg.fields import rank as scalar_rank
from .polyalg.matrix import PolyMatrix, is_square_zero
from .polyalg.poly import ANY

EXHAUSTIVE_LIMIT = 10**7
DEFAULT_SAMPLES = 200

PASS = "PASS"
FAIL = "FAIL"
EXHAUSTIVE_PASS = "EXHAUSTIVE_PASS"
SAMPLED_PASS = "SAMPLED_PASS"


class CheckerError(ValueError):
    pass


@dataclass
class Verdict:
    status: str
    witness: dict | None = None
    points: int | None = None

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.points is not None:
            out["points"] = self.points
        return out


@dataclass
class ConjectureInstance:
    D: PolyMatrix
    d: tuple | None = None
    C: int | None = None  # user-supplied leading zero columns
    R: int | None = None  # user-supplied trailing zero rows

    def __post_init__(self):
        if self.D.n % 2:
            raise CheckerError(f"N must be even, got {self.D.n}")
        if self.D.nvars < 1:
            raise CheckerError("need at least one variable")
        if self.d is None and self.D.degrees is not None:
            self.d = self.D.degrees
        if self.d is not None:
            d = tuple(self.d)
            if len(d) != self.D.n or not all(isinstance(x, int) for x in d):
                raise CheckerError(f"d must be {self.D.n} integers, got {list(d)}")
            if any(a < b for a, b in zip(d, d[1:])):
                raise CheckerError(f"d must be nonincreasing, got {list(d)}")
            self.d = d
        for name in ("C", "R"):
            v = getattr(self, name)
            if v is not None and not (1 <= v <= self.D.n):
                raise CheckerError(f"{name} must lie in 1..{self.D.n}, got {v}")

    @property
    def N(self) -> int:
        return self.D.n

    @property
    def r(self) -> int:
        return self.D.nvars

    @property
    def rank_target(self) -> int:
        return self.D.n // 2


@dataclass
class ConditionReport:
    conditions: dict
    C: int
    R: int
    d: tuple | None
    lhs: int
    rhs: int
    holds: bool
    classification: str

    def to_dict(self) -> dict:
        return {
            "conditions": {k: v.to_dict() for k, v in self.conditions.items()},
            "C": self.C,
            "R": self.R,
            "d": list(self.d) if self.d is not None else None,
            "inequality": {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds},
            "classification": self.classification,
        }


@dataclass
class FlagReport:
    type: tuple
    l: int
    checks: dict = field(default_factory=dict)
    l_ge_r: bool | None = None

    @property
    def bounds_ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "type": list(self.type),
            "l": self.l,
            "checks": self.checks,
            "bounds_ok": self.bounds_ok,
            "l_ge_r": self.l_ge_r,
            "freeclass_note": "finite nonzero homology forces l >= r",
        }


def conjecture_inequality(N: int, r: int, R: int, C: int) -> bool:
    """N >= 2^(r-1) (R + C)."""
    if min(N, r, R, C) < 1:
        raise CheckerError("N, r, R, C must be positive")
    return N >= 2 ** (r - 1) * (R + C)


def zero_boundary(D: PolyMatrix) -> tuple[int, int]:
    """Maximal (C, R): identically zero leading columns and trailing rows."""
    cols = {j for _, j in D.entries}
    rows = {i for i, _ in D.entries}
    C = min(cols) - 1 if cols else D.n
    R = D.n - max(rows) if rows else D.n
    return C, R


def infer_degree_tuple(D: PolyMatrix):
    """Nonincreasing d with deg p_ij = d_i - d_j + 1 on every nonzero entry, or None.

    Difference constraints are solved by Bellman-Ford from index 1, which
    yields the componentwise largest solution; it is then shifted so d_N = 0.
    """
    n = D.n
    edges = [(i + 1, i, 0) for i in range(n - 1)]  # d_{i+1} <= d_i
    for (i, j), p in sorted(D.entries.items()):
        deg = p.homogeneous_degree()
        if deg is None:
            raise CheckerError(f"entry ({i},{j}) is not homogeneous: {p}")
        k = deg - 1
        a, b = i - 1, j - 1
        edges.append((a, b, k))   # d_a <= d_b + k
        edges.append((b, a, -k))  # d_b <= d_a - k
    INF = float("inf")
    dist = [INF] * n
    dist[0] = 0
    for _ in range(n):
        changed = False
        for v, u, w in edges:  # constraint d_v <= d_u + w
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            break
    else:
        return None
    shift = dist[-1]
    return tuple(int(x - shift) for x in dist)


def matrix_block_type(D: PolyMatrix) -> FlagReport:
    """Minimal block-nilpotent type of D read off its zero pattern."""
    for (i, j) in D.entries:
        if i >= j:
            raise CheckerError(f"not strictly upper triangular: entry ({i},{j}) is nonzero")
    col_rows: dict[int, list[int]] = {}
    for (i, j) in D.entries:
        col_rows.setdefault(j, []).append(i)
    parts, starts = [], [1]
    start = 1
    for j in range(1, D.n + 1):
        if any(i >= start for i in col_rows.get(j, ())):
            parts.append(j - start)
            start = j
            starts.append(j)
    parts.append(D.n + 1 - start)
    t = tuple(parts)
    l = len(t) - 1

    def hits_previous(m):
        lo, hi = starts[m - 1], starts[m]
        cols = range(starts[m], starts[m] + t[m])
        return any(lo <= i < hi for j in cols for i in col_rows.get(j, ()))

    checks = {
        "t0_ge_1": t[0] >= 1,
        "tl_ge_1": t[-1] >= 1,
        "interior_ge_2": all(x >= 2 for x in t[1:-1]),
        "N_ge_2l": D.n >= 2 * l,
        "d_Fi_not_in_Fi_minus_2": all(hits_previous(m) for m in range(1, l + 1)),
    }
    return FlagReport(t, l, checks, l >= D.nvars)


def compositions_with_bounds(N: int, l: int) -> list[tuple[int, ...]]:
    """Compositions (t_0..t_l) of N with end parts >= 1 and interior parts >= 2."""
    if N < 1 or l < 0:
        return []
    mins = [1] + [2] * (l - 1) + [1] if l >= 1 else [1]
    out = []

    def rec(k, remaining, acc):
        if k == len(mins) - 1:
            if remaining >= mins[k]:
                out.append(tuple(acc + [remaining]))
            return
        rest = sum(mins[k + 1:])
        for v in range(mins[k], remaining - rest + 1):
            rec(k + 1, remaining - v, acc + [v])

    rec(0, N, [])
    return out


def _points(inst: ConjectureInstance, mode: str, samples: int, seed: int):
    f = inst.D.field
    r = inst.r
    if mode == "exhaustive":
        if not f.is_prime_field:
            raise CheckerError("exhaustive mode is unsupported over Q: no finite enumeration")
        if f.p ** r > EXHAUSTIVE_LIMIT:
            raise CheckerError(f"exhaustive scan of {f.p}^{r} points exceeds {EXHAUSTIVE_LIMIT}")
        return (pt for pt in product(range(f.p), repeat=r) if any(pt))
    if mode == "sample":
        if samples < 1:
            raise CheckerError("need at least one sample point")
        rng = random.Random(seed)

        def gen():
            made = 0
            while made < samples:
                pt = tuple(f.random_element(rng) for _ in range(r))
                if any(x != 0 for x in pt):
                    made += 1
                    yield pt
        return gen()
    raise CheckerError(f"unknown mode {mode!r}; use 'exhaustive' or 'sample'")


def _fmt(x) -> int | str:
    return x if isinstance(x, int) else str(x)


def _check_rank(inst: ConjectureInstance, mode: str, samples: int, seed: int) -> Verdict:
    at = inst.D.evaluator()
    f = inst.D.field
    count = 0
    for pt in _points(inst, mode, samples, seed):
        count += 1
        rk = scalar_rank(at(pt), f)
        if rk != inst.rank_target:
            return Verdict(FAIL, {"point": [_fmt(x) for x in pt], "rank": rk,
                                  "expected": inst.rank_target}, count)
    status = EXHAUSTIVE_PASS if mode == "exhaustive" else SAMPLED_PASS
    return Verdict(status, points=count)


def _check_degrees(inst: ConjectureInstance) -> tuple[Verdict, tuple | None]:
    D = inst.D
    d = inst.d
    if d is None:
        try:
            d = infer_degree_tuple(D)
        except CheckerError as exc:
            bad = next(ij for ij, p in sorted(D.entries.items()) if p.homogeneous_degree() is None)
            return Verdict(FAIL, {"entry": list(bad), "reason": str(exc)}), None
        if d is None:
            return Verdict(FAIL, {"reason": "no nonincreasing degree tuple fits the entry degrees"}), None
    for (i, j), p in sorted(D.entries.items()):
        want = d[i - 1] - d[j - 1] + 1
        deg = p.homogeneous_degree()
        if deg is None or (deg != ANY and deg != want):
            return Verdict(FAIL, {"entry": [i, j], "degree": deg, "expected": want}), d
    return Verdict(PASS), d


def check_conditions(inst: ConjectureInstance, mode: str = "exhaustive",
                     samples: int = DEFAULT_SAMPLES, seed: int = 0) -> ConditionReport:
    D = inst.D
    conds = {}

    below = sorted(ij for ij in D.entries if ij[0] >= ij[1])
    conds["c1"] = Verdict(FAIL, {"entry": list(below[0])}) if below else Verdict(PASS)

    ok, wit = is_square_zero(D)
    conds["c2"] = Verdict(PASS) if ok else Verdict(
        FAIL, {"entry": list(wit[0]), "value": str(wit[1])})

    const = sorted(ij for ij, p in D.entries.items() if p.constant_term() != 0)
    conds["c3"] = Verdict(PASS) if not const else Verdict(
        FAIL, {"entry": list(const[0]),
               "constant": D.field.format(D[const[0]].constant_term())})

    conds["c4"] = _check_rank(inst, mode, samples, seed)
    conds["c5"], d = _check_degrees(inst)

    C_max, R_max = zero_boundary(D)
    C = inst.C if inst.C is not None else C_max
    R = inst.R if inst.R is not None else R_max
    nonzero_in_band = sorted(
        (i, j) for (i, j) in D.entries if j <= C or i >= D.n - R + 1)
    if nonzero_in_band:
        conds["c6"] = Verdict(FAIL, {"entry": list(nonzero_in_band[0]), "C": C, "R": R})
    elif C < 1 or R < 1:
        conds["c6"] = Verdict(FAIL, {"reason": "D has a nonzero first column or last row", "C": C, "R": R})
    else:
        conds["c6"] = Verdict(PASS)

    rhs = 2 ** (inst.r - 1) * (R + C)
    holds = D.n >= rhs
    if not all(v.passed for v in conds.values()):
        cls = "invalid-instance"
    elif holds:
        cls = "consistent"
    else:
        cls = "counterexample-candidate"
    return ConditionReport(conds, C, R, d, D.n, rhs, holds, cls)


def verify_instance(inst: ConjectureInstance, mode: str = "exhaustive",
                    samples: int = DEFAULT_SAMPLES, seed: int = 0) -> dict:
    """All checks in one report; counterexample candidates carry a replay bundle."""
    report = check_conditions(inst, mode, samples, seed)
    out = report.to_dict()
    try:
        flags = matrix_block_type(inst.D)
    except CheckerError:
        out["type"], out["l"], out["flags"] = None, None, None
    else:
        out["type"], out["l"], out["flags"] = list(flags.type), flags.l, flags.to_dict()
    out["N"], out["r"] = inst.N, inst.r
    out["mode"] = mode
    if report.classification == "counterexample-candidate":
        out["replay"] = {
            "instance": inst.D.to_dict(),
            "N": inst.N, "r": inst.r, "C": report.C, "R": report.R,
            "mode": mode, "samples": samples, "seed": seed,
        }
    return out
