"""Classification of kite faces of the st-oriented skeleton."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .bar_visibility import StOrientation, left_right_paths
from .graph_model import InternalError

RIGHT_WING = "right-wing"
LEFT_WING = "left-wing"
DIAMOND = "diamond"


@dataclass(frozen=True)
class FaceShape:
    """A kite face with origin ``o``, destination ``d`` and intermediates ``u``, ``v``.

    For wings ``u`` is the lower intermediate; for diamonds ``u`` lies on the
    left path. ``sides`` and ``diagonals`` map unordered vertex pairs to edge ids.
    """

    face: int
    dummy: int
    kind: str
    o: int
    u: int
    v: int
    d: int
    sides: Mapping[frozenset, int]
    diagonals: Mapping[frozenset, int]

    def side(self, a: int, b: int) -> int:
        return self.sides[frozenset((a, b))]

    def diagonal(self, a: int, b: int) -> int:
        return self.diagonals[frozenset((a, b))]

    def to_json(self) -> dict:
        return {
            "face": self.face,
            "dummy": self.dummy,
            "kind": self.kind,
            "o": self.o,
            "u": self.u,
            "v": self.v,
            "d": self.d,
        }


def classify_faces(st: StOrientation, crossing_ends: Mapping[int, tuple[int, int]]) -> list[FaceShape]:
    """One :class:`FaceShape` per crossing, ordered by dummy id.

    ``crossing_ends`` maps the crossing edge ids to their endpoints.
    """
    skel = st.skeleton
    emb = skel.embedding
    out = []
    for x in sorted(skel.kite_face):
        f = skel.kite_face[x]
        o, d, left, right = left_right_paths(st, f)
        if len(left) == 2 and len(right) == 4:
            kind, (u, v) = RIGHT_WING, right[1:3]
        elif len(right) == 2 and len(left) == 4:
            kind, (u, v) = LEFT_WING, left[1:3]
        elif len(left) == 3 and len(right) == 3:
            kind, u, v = DIAMOND, left[1], right[1]
        else:
            raise InternalError(f"kite face {f} is neither a wing nor a diamond")
        sides = {frozenset((emb.tail[h], emb.head[h])): emb.edge[h] for h in skel.walks[f]}
        diagonals = {frozenset(crossing_ends[e]): e for e in skel.crossing[x]}
        out.append(FaceShape(f, x, kind, o, u, v, d, sides, diagonals))
    return out
