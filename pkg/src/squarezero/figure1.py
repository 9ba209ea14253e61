"""Comparison of the computed type-III order on RP(8) with the golden Hasse diagram.

Level sets, the maximal set and the maximal-ancestor map are hard checks.
Edges are compared as a diff only: the golden edges are a hand
transcription of a drawing and are allowed to omit covers.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .involution import Involution
from .poset import AncestorError, build_order, maximal_elements, unique_maximal_ancestor


def bundled_golden_path() -> Path:
    return Path(str(resources.files("squarezero") / "data" / "figure1.json"))


def load_golden(path=None) -> dict:
    path = Path(path) if path is not None else bundled_golden_path()
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data.get("levels"), list) or not isinstance(data.get("edges"), list):
        raise ValueError(f"{path}: golden file needs 'levels' and 'edges' lists")
    n = max(int(x) for lev in data["levels"] for s in lev for x in s.replace("-", ",").split(","))
    return {
        "n": n,
        "levels": [[Involution.parse(s, n) for s in lev] for lev in data["levels"]],
        "edges": [(Involution.parse(u, n), Involution.parse(v, n)) for u, v in data["edges"]],
    }


def _golden_ancestors(golden) -> dict:
    parents: dict = {}
    for u, v in golden["edges"]:
        parents.setdefault(v, set()).add(u)
    top = set(golden["levels"][0])
    memo: dict = {}

    def up(s):
        if s not in memo:
            found = {s} if s in top else set()
            for p in parents.get(s, ()):
                found |= up(p)
            memo[s] = frozenset(found)
        return memo[s]

    return {s: up(s) for lev in golden["levels"] for s in lev}


def verify_figure1(golden: dict) -> dict:
    n = golden["n"]
    dag = build_order(n, {"III"})
    computed_levels = dag.level_sets()
    level_rows = []
    levels_ok = len(computed_levels) == len(golden["levels"])
    for k in range(max(len(computed_levels), len(golden["levels"]))):
        got = set(computed_levels[k]) if k < len(computed_levels) else set()
        want = set(golden["levels"][k]) if k < len(golden["levels"]) else set()
        ok = got == want
        levels_ok &= ok
        level_rows.append({
            "level": k + 1, "computed": len(got), "golden": len(want), "match": ok,
            "only_computed": sorted(map(str, got - want)),
            "only_golden": sorted(map(str, want - got)),
        })

    maximal_ok = maximal_elements(dag) == set(golden["levels"][0])

    try:
        anc = unique_maximal_ancestor(dag)
        unique_ok = True
        violations = []
    except AncestorError as exc:
        anc, unique_ok = {}, False
        violations = sorted(str(s) for s in exc.violations)

    gold_anc = _golden_ancestors(golden)
    determined = conflicts = 0
    conflict_rows = []
    for s, tops in gold_anc.items():
        if not tops:
            continue
        determined += 1
        if len(tops) != 1 or anc.get(s) not in tops:
            conflicts += 1
            conflict_rows.append({"node": str(s), "golden": sorted(map(str, tops)),
                                  "computed": str(anc.get(s))})
    ancestor_ok = unique_ok and not conflicts

    computed_edges = {(str(u), str(v)) for u, v in dag.covers}
    golden_edges = {(str(u), str(v)) for u, v in golden["edges"]}
    edges = {
        "computed": len(computed_edges),
        "golden": len(golden_edges),
        "common": len(computed_edges & golden_edges),
        "only_computed": sorted(map(list, computed_edges - golden_edges)),
        "only_golden": sorted(map(list, golden_edges - computed_edges)),
    }

    return {
        "n": n,
        "level_sizes": [len(lev) for lev in computed_levels],
        "levels": level_rows,
        "levels_ok": levels_ok,
        "maximal_ok": maximal_ok,
        "unique_ancestor_total": unique_ok,
        "unique_ancestor_violations": violations,
        "golden_ancestor_determined": determined,
        "golden_ancestor_conflicts": conflict_rows,
        "ancestor_ok": ancestor_ok,
        "edges": edges,
        "verified": levels_ok and maximal_ok and ancestor_ok,
    }
