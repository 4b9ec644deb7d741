"""Command-line front end.

    bpoly compute b @T_ac
    bpoly compute bfamily "digraph 2; 1 2" --word +-
    bpoly check @A1 --checks all
    bpoly survey --n 3 --m 3 --jobs 4

Inputs are a file path, ``@name`` for a named digraph, or an inline literal in
the text or JSON format. Exit codes: 0 success, 1 a check failed, 2 bad input
or unknown check id, 3 precondition violated, 4 internal assertion tripped.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from . import named
from .bcore import b_poly, chromatic, potts_poly, t_mixed, tutte_poly
from .digraph import Digraph, MixedGraph, structure, underlying
from .embedding import RotationSystem, planar_dual_with_rotation
from .errors import (BPolyError, InternalAssertionError, ParseError, PreconditionError,
                     UnknownCheckError)
from .identities import CheckReport, coerce_input, load_all_checks, run_check
from .poly import MultiPoly
from .textio import digraph_to_json_obj, parse_any, parse_rotation, render_rotation

TARGETS = ("b", "qsym", "potts", "tutte", "t1", "t2", "chromatic", "bfamily", "dual", "structure")

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3, 4


# ---------------------------------------------------------------- inputs

def load_input(source: str):
    """Digraph or MixedGraph from ``@name``, a file path, or a literal."""
    if source.startswith("@"):
        name = source[1:]
        if name in named.MIXED and named.MIXED[name].unoriented:
            return named.MIXED[name]
        if name in named.DIGRAPHS:
            return named.DIGRAPHS[name]
        known = sorted(set(named.DIGRAPHS) | set(named.MIXED))
        raise ParseError(f"unknown name {name!r}; known: {', '.join(known)}")
    text = source
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return parse_any(text)
    except BPolyError as exc:
        raise ParseError(str(exc)) from exc


def load_rotation(source: Optional[str], input_source: str, D: Digraph) -> Optional[RotationSystem]:
    if source is None:
        if input_source.startswith("@") and input_source[1:] in named.EMBEDDED:
            return named.EMBEDDED[input_source[1:]][1]
        return None
    text = source
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    return parse_rotation(text, D.n)


def as_digraph(G) -> Digraph:
    """A mixed graph stands for its digraph, both arcs of each unoriented edge included."""
    return G.digraph if isinstance(G, MixedGraph) else G


def parse_q_list(text: Optional[str]) -> Optional[List[Any]]:
    if text is None:
        return None
    try:
        return [Fraction(tok) if "/" in tok else int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ParseError(f"bad --q-list: {exc}") from exc


# ---------------------------------------------------------------- rendering

def to_json_obj(value):
    if hasattr(value, "to_json_obj"):
        return value.to_json_obj()
    if isinstance(value, dict):
        return {str(k): to_json_obj(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json_obj(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    return value


def pretty(value, indent: str = "") -> str:
    if hasattr(value, "pretty"):
        return value.pretty()
    if hasattr(value, "to_json_obj"):
        return json.dumps(value.to_json_obj(), indent=2)
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            body = pretty(v, indent + "  ")
            sep = "\n" if "\n" in body else " "
            lines.append(f"{indent}{k}:{sep}{body}")
        return "\n".join(lines)
    return str(value)


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


# ---------------------------------------------------------------- compute

def _at_q(P: MultiPoly, qs: Sequence) -> dict:
    return {str(q): P.evaluate({"q": q}) for q in qs}


def compute(target: str, G, args, rotation: Optional[RotationSystem] = None):
    qs = parse_q_list(args.q_list)
    if target == "structure":
        return structure(as_digraph(G))
    if target == "b":
        P = b_poly(as_digraph(G))
        return _at_q(P, qs) if qs else P
    if target == "qsym":
        from .quasisym import basis_change, qsym_b
        F = qsym_b(as_digraph(G))
        return basis_change(F, args.basis) if args.basis != "M" else F
    if target in ("potts", "tutte"):
        graph = underlying(G)
        P = potts_poly(graph) if target == "potts" else tutte_poly(graph)
        return _at_q(P, qs) if qs and target == "potts" else P
    if target in ("t1", "t2"):
        M = G if isinstance(G, MixedGraph) else MixedGraph.oriented(G)
        return t_mixed(M, 1 if target == "t1" else 2)
    if target == "chromatic":
        return _chromatic(G, args, qs)
    if target == "bfamily":
        from .family import b_m, b_w
        D = as_digraph(G)
        if args.word is not None:
            P = b_w(D, args.word, work_bound=args.work_bound)
        else:
            P = b_m(D, args.m or 1, work_bound=args.work_bound)
        return _at_q(P, qs) if qs else P
    if target == "dual":
        D = as_digraph(G)
        if rotation is None:
            raise PreconditionError("dual needs --rotation (or a named embedded input)")
        Dd, rd = planar_dual_with_rotation(D, rotation)
        return {"digraph": digraph_to_json_obj(Dd), "rotation": json.loads(render_rotation(rd))}
    raise ParseError(f"unknown target {target!r}")


def _chromatic(G, args, qs):
    if args.word is not None:
        from .family import w_strict_chromatic, w_weak_chromatic
        D = as_digraph(G)
        out = {"strict": w_strict_chromatic(D, args.word), "weak": w_weak_chromatic(D, args.word)}
    elif isinstance(G, MixedGraph) and G.unoriented:
        out = {"mixed_strict": chromatic(G, "mixed_strict")}
    else:
        D = as_digraph(G)
        out = {"strict": chromatic(D, "strict"), "weak": chromatic(D, "weak")}
    if qs:
        return {k: _at_q(v, qs) for k, v in out.items()}
    return out


# ---------------------------------------------------------------- check

def _inputs_for_all(G, input_class: str, rotation) -> Iterable:
    """Every input of `input_class` that G gives rise to, for ``--checks all``."""
    from .survey import _inputs_for
    if input_class == "embedded":
        if rotation is None:
            return []
        return [(as_digraph(G), rotation)]
    if isinstance(G, Digraph):
        return _inputs_for(G, input_class)
    if input_class == "digraph":
        return [G.digraph]
    if input_class == "mixed":
        return [G]
    return [G] if G.is_graph and G.digraph.m > 0 else []


def run_checks(G, check_ids: Sequence[str], rotation, strict: bool) -> Tuple[List[CheckReport], int]:
    """Run each check on every instance. With `strict`, a check that cannot
    apply is a precondition error; otherwise it is counted as skipped."""
    registry = load_all_checks()
    reports: List[CheckReport] = []
    skipped = 0
    for cid in check_ids:
        chk = registry[cid]
        if not strict:
            candidates = list(_inputs_for_all(G, chk.input_class, rotation))
        elif chk.input_class != "embedded":
            candidates = [G]
        elif rotation is None:
            raise PreconditionError(f"{cid} needs --rotation (or a named embedded input)")
        else:
            candidates = [(as_digraph(G), rotation)]
        for H in candidates:
            try:
                H = coerce_input(chk.input_class, H)
                if not chk.applies(H):
                    raise PreconditionError(f"{cid} does not apply to this input")
                instances = list(chk.instances(H))
                if not instances:
                    raise PreconditionError(f"{cid} has no instance on this input")
                for params in instances:
                    reports.append(run_check(cid, H, params))
            except PreconditionError:
                if strict:
                    raise
                skipped += 1
    return reports, skipped


# ---------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bpoly", description="B-polynomials of digraphs and their identities.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "pretty"), default="json")
        p.add_argument("--pretty", dest="format", action="store_const", const="pretty",
                       help="shorthand for --format pretty")
        p.add_argument("--work-bound", type=int, default=10 ** 7)

    c = sub.add_parser("compute", help="compute one invariant of an input")
    c.add_argument("target", choices=TARGETS)
    c.add_argument("input", help="file path, @name, or inline literal such as 'digraph 2; 1 2'")
    c.add_argument("--q-list", help="comma-separated q values to evaluate at")
    c.add_argument("--word", help="sign word over +/- for bfamily and chromatic")
    c.add_argument("--m", type=int, help="family index for bfamily (default 1)")
    c.add_argument("--basis", choices=("M", "F"), default="M", help="basis for qsym")
    c.add_argument("--rotation", help="rotation system (JSON literal or path) for dual")
    common(c)

    k = sub.add_parser("check", help="run identity checks on an input")
    k.add_argument("input")
    k.add_argument("--checks", default="all", help="comma-separated check ids, or 'all'")
    k.add_argument("--rotation", help="rotation system (JSON literal or path) for planar checks")
    common(k)

    s = sub.add_parser("survey", help="run the check registry over all small digraphs")
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--m", type=int, default=5)
    s.add_argument("--checks", default="all")
    s.add_argument("--jobs", type=int, default=1)
    common(s)

    sub.add_parser("list-checks", help="print the registered check ids")
    return ap


def _check_ids(text: str) -> Optional[List[str]]:
    if text.strip() == "all":
        return None
    ids = [t.strip() for t in text.split(",") if t.strip()]
    registry = load_all_checks()
    for cid in ids:
        if cid not in registry:
            raise UnknownCheckError(cid)
    return ids


def _emit(args, obj, out) -> None:
    if args.format == "pretty":
        print(pretty(obj), file=out)
    else:
        print(dumps(to_json_obj(obj)), file=out)


def _main(args, out) -> int:
    if args.verb == "list-checks":
        for cid, chk in sorted(load_all_checks().items()):
            print(f"{cid}\t{chk.input_class}\t{chk.module}", file=out)
        return EXIT_OK

    if args.verb == "survey":
        from .survey import run_survey
        ids = _check_ids(args.checks)
        start = time.time()
        summary = run_survey(args.n, args.m, checks=ids, jobs=args.jobs)
        print(f"elapsed {time.time() - start:.1f}s", file=sys.stderr)
        _emit(args, summary, out)
        return EXIT_OK if summary.passed else EXIT_FAILED

    G = load_input(args.input)
    D0 = G.digraph if isinstance(G, MixedGraph) else G
    rotation = load_rotation(args.rotation, args.input, D0)

    if args.verb == "compute":
        _emit(args, compute(args.target, G, args, rotation), out)
        return EXIT_OK

    ids = _check_ids(args.checks)
    strict = ids is not None
    reports, skipped = run_checks(G, ids or sorted(load_all_checks()), rotation, strict)
    failed = sum(1 for r in reports if not r.passed)
    for r in reports:
        if args.format == "pretty":
            status = "PASS" if r.passed else "FAIL"
            params = f" {dumps(r.params)}" if r.params else ""
            print(f"{status} {r.check}{params}", file=out)
            if not r.passed:
                print(f"  lhs: {pretty(r.lhs)}\n  rhs: {pretty(r.rhs)}", file=out)
        else:
            print(dumps(r.to_json_obj()), file=out)
    summary = {"summary": {"total": len(reports), "passed": len(reports) - failed,
                           "failed": failed, "skipped": skipped}}
    if args.format == "pretty":
        print(f"{len(reports) - failed}/{len(reports)} passed, {skipped} skipped", file=out)
    else:
        print(dumps(summary), file=out)
    return EXIT_OK if failed == 0 else EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return _main(args, out)
    except UnknownCheckError as exc:
        print(f"error: unknown check id {exc.args[0]!r}", file=sys.stderr)
        return EXIT_PARSE
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InternalAssertionError, AssertionError) as exc:
        print(f"internal assertion: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except BPolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
