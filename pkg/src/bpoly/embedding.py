"""Combinatorial plane embeddings and directed planar duals.

An arc-end is ``(arc_index, "tail")`` or ``(arc_index, "head")``. A rotation
system lists, for each vertex, its arc-ends in counterclockwise order. Faces
are traced by: after arriving at a vertex along an end, leave along the next
end in rotation order. The orbit through ``(a, "tail")`` is the face on the
right of arc a; through ``(a, "head")``, the face on its left.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .digraph import Digraph, component_count
from .errors import InvalidDigraphError, NotPlanarError

End = Tuple[int, str]


@dataclass(frozen=True)
class RotationSystem:
    ends: Tuple[Tuple[End, ...], ...]  # ends[v-1] for vertex v

    @classmethod
    def from_dict(cls, n: int, rot: Dict[int, List[End]]) -> "RotationSystem":
        return cls(tuple(tuple(tuple(e) for e in rot.get(v, ())) for v in range(1, n + 1)))


def _validate(D: Digraph, rot: RotationSystem) -> None:
    if len(rot.ends) != D.n:
        raise InvalidDigraphError("rotation system must list every vertex")
    seen = set()
    for v, ends in enumerate(rot.ends, start=1):
        for a, side in ends:
            if side not in ("tail", "head") or not (0 <= a < D.m):
                raise InvalidDigraphError(f"bad arc-end {(a, side)}")
            u, w = D.arcs[a]
            if (u if side == "tail" else w) != v:
                raise InvalidDigraphError(f"arc-end {(a, side)} is not at vertex {v}")
            if (a, side) in seen:
                raise InvalidDigraphError(f"arc-end {(a, side)} listed twice")
            seen.add((a, side))
    if len(seen) != 2 * D.m:
        raise InvalidDigraphError("rotation system misses some arc-ends")


def trace_faces(D: Digraph, rot: RotationSystem) -> List[List[End]]:
    _validate(D, rot)
    nxt: Dict[End, End] = {}
    for ends in rot.ends:
        for i, e in enumerate(ends):
            nxt[e] = ends[(i + 1) % len(ends)]
    faces: List[List[End]] = []
    seen = set()
    for a in range(D.m):
        for side in ("tail", "head"):
            start = (a, side)
            if start in seen:
                continue
            orbit = []
            d = start
            while d not in seen:
                seen.add(d)
                orbit.append(d)
                other = (d[0], "head" if d[1] == "tail" else "tail")
                d = nxt[other]
            faces.append(orbit)
    return faces


def _isolated(D: Digraph) -> List[int]:
    touched = {u for a in D.arcs for u in a}
    return [v for v in range(1, D.n + 1) if v not in touched]


def is_planar_embedding(D: Digraph, rot: RotationSystem) -> bool:
    f = len(trace_faces(D, rot)) + len(_isolated(D))
    return D.n - D.m + f == 2 * component_count(D.n, D.arcs)


def planar_dual_with_rotation(D: Digraph, rot: RotationSystem) -> Tuple[Digraph, RotationSystem]:
    faces = trace_faces(D, rot)
    iso = _isolated(D)
    f = len(faces) + len(iso)
    c = component_count(D.n, D.arcs)
    if D.n - D.m + f != 2 * c:
        raise NotPlanarError(f"Euler check failed: v-e+f = {D.n - D.m + f}, expected {2 * c}")
    face_of: Dict[End, int] = {}
    for k, orbit in enumerate(faces, start=1):
        for d in orbit:
            face_of[d] = k
    # dual arc runs from the face on the left of a to the face on its right
    arcs = tuple((face_of[(a, "head")], face_of[(a, "tail")]) for a in range(D.m))
    dual_ends = []
    for orbit in faces:
        ends = [(a, "head" if side == "tail" else "tail") for a, side in orbit]
        dual_ends.append(tuple(reversed(ends)))
    dual_ends += [()] * len(iso)
    return Digraph(f, arcs), RotationSystem(tuple(dual_ends))


def planar_dual(D: Digraph, rot: RotationSystem) -> Digraph:
    """Directed dual of a plane digraph; disconnected inputs get one dual per component."""
    return planar_dual_with_rotation(D, rot)[0]


def planar_rotations(D: Digraph, limit: Optional[int] = None, max_tries: int = 20000) -> Iterator[RotationSystem]:
    """Rotation systems of D that pass the Euler check, in a fixed search order."""
    per_vertex = []
    for v in range(1, D.n + 1):
        ends = [(a, "tail") for a, (u, _) in enumerate(D.arcs) if u == v]
        ends += [(a, "head") for a, (_, w) in enumerate(D.arcs) if w == v]
        ends.sort()
        if len(ends) <= 2:
            per_vertex.append([tuple(ends)])
        else:
            first, rest = ends[0], ends[1:]
            per_vertex.append([(first,) + p for p in itertools.permutations(rest)])
    found = 0
    for tries, choice in enumerate(itertools.product(*per_vertex)):
        if tries >= max_tries:
            return
        rot = RotationSystem(tuple(choice))
        if is_planar_embedding(D, rot):
            yield rot
            found += 1
            if limit is not None and found >= limit:
                return
