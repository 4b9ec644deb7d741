"""Exhaustive identity survey over small digraphs.

Every digraph with 1..n vertices and at most m arcs is fed to every selected
check of matching input class: digraph checks see it directly, mixed-graph
checks see each of its pairings, graph checks see the pairings that pair up
every arc. Plane embeddings come from the named catalogue and from a rotation
search on the smaller digraphs. Work is split into contiguous chunks so the
per-process caches stay warm; results are sorted by key, never by
completion order.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .digraph import Digraph, enumerate_digraphs, enumerate_pairings
from .embedding import planar_rotations
from .errors import InternalAssertionError, UnknownCheckError, WorkBoundExceeded
from .identities import CheckReport, load_all_checks, run_check
from .named import EMBEDDED
from .textio import canonical_string

EMBED_SEARCH_VERTICES = 3
EMBED_SEARCH_ARCS = 3


@dataclass
class SurveySummary:
    n: int
    m: int
    digraphs_by_n: Dict[int, int]
    embedded_inputs: int
    runs: Dict[str, int]
    failures: List[CheckReport]
    skipped: Dict[str, int] = field(default_factory=dict)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_obj(self) -> dict:
        return {"n": self.n, "m": self.m,
                "digraphs": sum(self.digraphs_by_n.values()),
                "digraphs_by_n": {str(k): v for k, v in sorted(self.digraphs_by_n.items())},
                "embedded_inputs": self.embedded_inputs,
                "checks": {cid: {"runs": self.runs[cid],
                                 "failed": sum(1 for f in self.failures if f.check == cid),
                                 "skipped": self.skipped.get(cid, 0)}
                           for cid in sorted(self.runs)},
                "passed": self.passed,
                "failures": [f.to_json_obj() for f in self.failures]}

    def pretty(self) -> str:
        lines = [f"survey n<={self.n} m<={self.m}: {sum(self.digraphs_by_n.values())} digraphs "
                 f"({', '.join(f'n={k}: {v}' for k, v in sorted(self.digraphs_by_n.items()))}), "
                 f"{self.embedded_inputs} embedded inputs"]
        for cid in sorted(self.runs):
            failed = sum(1 for f in self.failures if f.check == cid)
            extra = f", {self.skipped[cid]} skipped" if self.skipped.get(cid) else ""
            lines.append(f"  {cid:34s} {self.runs[cid]:7d} runs  {failed} failed{extra}")
        for f in self.failures[:20]:
            lines.append(f"FAIL {f.check} {f.input} {json.dumps(f.params)}")
        lines.append("ALL PASS" if self.passed else f"{len(self.failures)} FAILURES")
        return "\n".join(lines)


def _select(checks: Optional[Sequence[str]]) -> List[str]:
    registry = load_all_checks()
    if not checks:
        return sorted(registry)
    for cid in checks:
        if cid not in registry:
            raise UnknownCheckError(cid)
    return sorted(set(checks))


def _inputs_for(D: Digraph, input_class: str) -> Iterable:
    if input_class == "digraph":
        return [D]
    pairings = list(enumerate_pairings(D))
    if input_class == "mixed":
        return pairings
    if input_class == "graph":
        return [M for M in pairings if M.is_graph and D.m > 0]
    return []


def _run_on(check_ids: Sequence[str], inputs_by_class) -> Tuple[Dict[str, int], Dict[str, int], List[CheckReport]]:
    registry = load_all_checks()
    runs: Dict[str, int] = {}
    skipped: Dict[str, int] = {}
    failures: List[CheckReport] = []
    for cid in check_ids:
        chk = registry[cid]
        runs.setdefault(cid, 0)
        for G in inputs_by_class(chk.input_class):
            if not chk.applies(G):
                continue
            for params in chk.instances(G):
                try:
                    report = run_check(cid, G, params)
                except WorkBoundExceeded:
                    skipped[cid] = skipped.get(cid, 0) + 1
                    continue
                except InternalAssertionError as exc:
                    report = CheckReport(cid, canonical_string(G), False,
                                         f"{type(exc).__name__}: {exc}", None, dict(params))
                runs[cid] += 1
                if not report.passed:
                    failures.append(report)
    return runs, skipped, failures


def _digraph_chunk(args) -> Tuple[Dict[str, int], Dict[str, int], List[CheckReport]]:
    check_ids, digraphs = args
    runs: Dict[str, int] = {cid: 0 for cid in check_ids}
    skipped: Dict[str, int] = {}
    failures: List[CheckReport] = []
    for D in digraphs:
        r, s, f = _run_on(check_ids, lambda cls, D=D: _inputs_for(D, cls))
        for k, v in r.items():
            runs[k] += v
        for k, v in s.items():
            skipped[k] = skipped.get(k, 0) + v
        failures.extend(f)
    return runs, skipped, failures


def embedded_inputs(n: int, m: int) -> List[Tuple[Digraph, object]]:
    """Named plane digraphs, then one embedding for each small survey digraph."""
    out = list(EMBEDDED.values())
    for k in range(1, min(n, EMBED_SEARCH_VERTICES) + 1):
        for D in enumerate_digraphs(k, min(m, EMBED_SEARCH_ARCS)):
            for rot in planar_rotations(D, limit=1):
                out.append((D, rot))
    return out


def survey_digraphs(n: int, m: int) -> Dict[int, List[Digraph]]:
    return {k: list(enumerate_digraphs(k, m)) for k in range(1, n + 1)}


def run_survey(n: int, m: int, checks: Optional[Sequence[str]] = None, jobs: int = 1,
               chunk: int = 200) -> SurveySummary:
    start = time.time()
    check_ids = _select(checks)
    by_n = survey_digraphs(n, m)
    digraphs = [D for k in sorted(by_n) for D in by_n[k]]
    registry = load_all_checks()
    flat_ids = [c for c in check_ids if registry[c].input_class != "embedded"]
    embed_ids = [c for c in check_ids if registry[c].input_class == "embedded"]

    tasks = [(flat_ids, digraphs[i:i + chunk]) for i in range(0, len(digraphs), chunk)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_digraph_chunk, tasks))
    else:
        results = [_digraph_chunk(t) for t in tasks]

    runs: Dict[str, int] = {cid: 0 for cid in check_ids}
    skipped: Dict[str, int] = {}
    failures: List[CheckReport] = []
    for r, s, f in results:
        for k, v in r.items():
            runs[k] += v
        for k, v in s.items():
            skipped[k] = skipped.get(k, 0) + v
        failures.extend(f)

    embedded = embedded_inputs(n, m) if embed_ids else []
    if embed_ids:
        r, s, f = _run_on(embed_ids, lambda cls: embedded if cls == "embedded" else [])
        for k, v in r.items():
            runs[k] += v
        for k, v in s.items():
            skipped[k] = skipped.get(k, 0) + v
        failures.extend(f)

    failures.sort(key=lambda rep: (rep.check, rep.input, json.dumps(rep.params, sort_keys=True)))
    return SurveySummary(n, m, {k: len(v) for k, v in by_n.items()}, len(embedded), runs, failures,
                         skipped, time.time() - start)
