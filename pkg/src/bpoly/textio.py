"""Text and JSON formats for digraphs, mixed graphs and rotation systems.

Plain text::

    digraph 3
    1 2
    2 3

Mixed text uses ``u -- v`` for an unoriented edge (two paired arcs) and
``u -> v`` for an oriented one. Blank lines and ``#`` comments are ignored;
``;`` may stand in for a newline so a digraph fits on a command line.
"""
from __future__ import annotations

import json
from typing import List, Union

from .digraph import Digraph, MixedGraph
from .embedding import RotationSystem
from .errors import InvalidDigraphError, ParseError


def _lines(text: str) -> List[str]:
    out = []
    for raw in text.replace(";", "\n").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {tok!r}") from None


def parse_text(text: str) -> Union[Digraph, MixedGraph]:
    """Parse either format; returns a MixedGraph when any ``--``/``->`` line is present."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    head = lines[0].split()
    if len(head) != 2 or head[0] not in ("digraph", "mixed"):
        raise ParseError(f"header must be 'digraph n', got {lines[0]!r}")
    n = _int(head[1], "vertex count")
    arcs = []
    blocks = []
    mixed = head[0] == "mixed"
    for line in lines[1:]:
        toks = line.split()
        if len(toks) == 2:
            u, v = _int(toks[0], "vertex"), _int(toks[1], "vertex")
            blocks.append((len(arcs),))
            arcs.append((u, v))
        elif len(toks) == 3 and toks[1] in ("--", "->"):
            mixed = True
            u, v = _int(toks[0], "vertex"), _int(toks[2], "vertex")
            if toks[1] == "--":
                blocks.append((len(arcs), len(arcs) + 1))
                arcs += [(u, v), (v, u)]
            else:
                blocks.append((len(arcs),))
                arcs.append((u, v))
        else:
            raise ParseError(f"cannot parse arc line {line!r}")
    try:
        D = Digraph(n, tuple(arcs))
        return MixedGraph(D, tuple(blocks)) if mixed else D
    except InvalidDigraphError as exc:
        raise ParseError(str(exc)) from exc


def parse_digraph(text: str) -> Digraph:
    g = parse_text(text)
    if isinstance(g, MixedGraph):
        if g.unoriented:
            raise ParseError("expected a digraph, found unoriented edges")
        return g.digraph
    return g


def parse_mixed(text: str) -> MixedGraph:
    g = parse_text(text)
    return g if isinstance(g, MixedGraph) else MixedGraph.oriented(g)


def render_digraph(D: Digraph) -> str:
    return "\n".join([f"digraph {D.n}"] + [f"{u} {v}" for u, v in D.arcs]) + "\n"


def render_mixed(M: MixedGraph) -> str:
    """Blocks are written in order, so arcs come back in block order on re-parse."""
    lines = [f"digraph {M.n}"]
    for b in M.blocks:
        u, v = M.digraph.arcs[b[0]]
        lines.append(f"{u} {'--' if len(b) == 2 else '->'} {v}")
    return "\n".join(lines) + "\n"


def canonical_string(G) -> str:
    """One-line form used in check reports."""
    if isinstance(G, MixedGraph):
        if not G.unoriented:
            return canonical_string(G.digraph)
        return render_mixed(G).strip().replace("\n", "; ")
    if isinstance(G, tuple):
        return " | ".join(canonical_string(x) for x in G)
    if isinstance(G, Digraph):
        return render_digraph(G).strip().replace("\n", "; ")
    if isinstance(G, RotationSystem):
        return "rotation " + json.dumps([[list(e) for e in ends] for ends in G.ends], separators=(",", ":"))
    return str(G)


def digraph_to_json_obj(D: Digraph) -> dict:
    return {"n": D.n, "arcs": [list(a) for a in D.arcs]}


def mixed_to_json_obj(M: MixedGraph) -> dict:
    return {"n": M.n, "arcs": [list(a) for a in M.digraph.arcs], "pairing": [list(b) for b in M.blocks]}


def parse_json_graph(text: str) -> Union[Digraph, MixedGraph]:
    try:
        obj = json.loads(text)
        D = Digraph(int(obj["n"]), tuple(tuple(a) for a in obj["arcs"]))
        if "pairing" in obj:
            return MixedGraph(D, tuple(tuple(b) for b in obj["pairing"]))
        return D
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad digraph JSON: {exc}") from exc


def parse_any(text: str) -> Union[Digraph, MixedGraph]:
    return parse_json_graph(text) if text.lstrip().startswith("{") else parse_text(text)


def parse_rotation(text: str, n: int) -> RotationSystem:
    """JSON object mapping each vertex to its arc-ends in counterclockwise order,
    e.g. ``{"1": [[0, "tail"], [2, "head"]], ...}``."""
    try:
        obj = json.loads(text)
        if "rotation" in obj:
            obj = obj["rotation"]
        ends = []
        for v in range(1, n + 1):
            ends.append(tuple((int(a), str(e)) for a, e in obj.get(str(v), [])))
    except (json.JSONDecodeError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"bad rotation JSON: {exc}") from exc
    return RotationSystem(tuple(ends))


def render_rotation(rot: RotationSystem) -> str:
    return json.dumps({str(v + 1): [list(e) for e in ends] for v, ends in enumerate(rot.ends)})
