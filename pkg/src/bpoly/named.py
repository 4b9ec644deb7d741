"""Small named digraphs used in tests, docs and the CLI (``@name`` inputs)."""
from __future__ import annotations

from .digraph import Digraph, MixedGraph
from .embedding import RotationSystem

A1 = Digraph(2, ((1, 2),))
P3 = Digraph(3, ((1, 2), (2, 3)))
JOIN = Digraph(3, ((1, 3), (2, 3)))
T_AC = Digraph(3, ((1, 2), (2, 3), (1, 3)))
T_CYC = Digraph(3, ((1, 2), (2, 3), (3, 1)))
M1_DIGRAPH = Digraph(3, ((1, 2), (2, 1), (1, 3), (3, 2)))
M1 = MixedGraph(M1_DIGRAPH, ((0, 1), (2,), (3,)))
A1_MIXED = MixedGraph.oriented(A1)
LOOP = Digraph(1, ((1, 1),))

# triangle drawn with 1 at the origin, 2 to the east, 3 to the north
T_CYC_ROT = RotationSystem((((0, "tail"), (2, "head")),
                            ((1, "tail"), (0, "head")),
                            ((2, "tail"), (1, "head"))))
T_AC_ROT = RotationSystem((((0, "tail"), (2, "tail")),
                           ((1, "tail"), (0, "head")),
                           ((2, "head"), (1, "head"))))
P3_ROT = RotationSystem((((0, "tail"),), ((1, "tail"), (0, "head")), ((1, "head"),)))
A1_ROT = RotationSystem((((0, "tail"),), ((0, "head"),)))
LOOP_ROT = RotationSystem((((0, "tail"), (0, "head")),))

DIGRAPHS = {"A1": A1, "P3": P3, "join": JOIN, "T_ac": T_AC, "T_cyc": T_CYC,
            "M1": M1_DIGRAPH, "loop": LOOP}
MIXED = {"M1": M1, "A1": A1_MIXED}
EMBEDDED = {"T_cyc": (T_CYC, T_CYC_ROT), "T_ac": (T_AC, T_AC_ROT), "P3": (P3, P3_ROT),
            "A1": (A1, A1_ROT), "loop": (LOOP, LOOP_ROT)}
