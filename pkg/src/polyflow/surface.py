"""Polysquare surfaces as unit faces with edge pairings.

A surface is a set of unit-square faces plus, for every face side, a
transition: which face you enter, through which side, and how the direction
rotates (0 for translation gluings; multiples of 90 degrees on the handful
of surfaces, like the cube, whose pairings turn the flow).  Everything else
is derived from transitions: streets, street graph distance, vertex cone
angles, canonical edge names.

Faces can be given as an explicit finite list or lazily through a transition
callable (infinite mazes).  Lazy lookups are memoised behind a lock so that
concurrent queries see one consistent surface.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import lcm
from typing import Callable, Hashable, Iterable, Optional

FaceId = Hashable
Side = str

SIDES = ("R", "T", "L", "B")
OPPOSITE = {"R": "L", "L": "R", "T": "B", "B": "T"}
# side order under a +90 degree (counterclockwise) rotation of the direction
_CCW = {"R": "T", "T": "L", "L": "B", "B": "R"}
# canonical side parameter runs bottom-to-top (R, L) or left-to-right (T, B);
# its direction vector decides whether a rotated gluing reverses coordinates
_SIDE_DIR = {"R": (0, 1), "L": (0, 1), "T": (1, 0), "B": (1, 0)}


def rotate_side(side: Side, rot: int) -> Side:
    for _ in range((rot // 90) % 4):
        side = _CCW[side]
    return side


def rotate_vec(v, rot: int):
    x, y = v
    for _ in range((rot // 90) % 4):
        x, y = -y, x
    return (x, y)


def entry_side(exit_side: Side, rot: int) -> Side:
    """Side of the target face crossed into, for a given exit side and turn."""
    return OPPOSITE[rotate_side(exit_side, rot)]


def coord_flip(exit_side: Side, rot: int) -> bool:
    """Whether the edge parameter reverses across the gluing."""
    d = rotate_vec(_SIDE_DIR[exit_side], rot)
    d2 = _SIDE_DIR[entry_side(exit_side, rot)]
    if d == d2:
        return False
    if d == (-d2[0], -d2[1]):
        return True
    raise AssertionError("rotation does not map side axes to side axes")


@dataclass(frozen=True)
class Transition:
    face: FaceId
    side: Side  # entry side of the target face
    rot: int = 0  # degrees the direction turns, counterclockwise

    @property
    def flip(self) -> bool:
        # derived, not stored: exit side is recoverable from (side, rot)
        return coord_flip(OPPOSITE[rotate_side(self.side, -self.rot)], self.rot)


@dataclass(frozen=True)
class Street:
    """Orbit of straight axis flow through faces; the maze unit of length."""

    states: tuple  # ((face, exit side), ...) in traversal order
    closed: bool

    @property
    def faces(self) -> tuple:
        return tuple(f for f, _ in self.states)

    @property
    def length(self) -> int:
        return len(self.states)

    @property
    def kind(self) -> str:
        sides = {s for _, s in self.states}
        if sides <= {"R", "L"}:
            return "h"
        if sides <= {"T", "B"}:
            return "v"
        return "mixed"

    def key(self) -> frozenset:
        out = set()
        for f, s in self.states:
            out.add((f, s))
            out.add((f, OPPOSITE[s]))
        return frozenset(out)


class StreetLimitError(RuntimeError):
    """A street failed to close within the exploration limit."""


class Surface:
    """Unit-square faces glued along sides; finite list or lazy transitions."""

    def __init__(
        self,
        transition_fn: Callable[[FaceId, Side], Transition],
        faces: Optional[list] = None,
        origin: Optional[FaceId] = None,
        labels: Optional[dict] = None,
        name: str = "",
        street_bound: Optional[int] = None,
    ):
        self._fn = transition_fn
        self._faces = list(faces) if faces is not None else None
        if origin is None and self._faces:
            origin = self._faces[0]
        self.origin = origin
        self._labels = labels or {}
        self.name = name
        self.street_bound = street_bound  # declared maze bound, if any
        self._cache: dict = {}
        self._lock = threading.Lock()

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_permutations(
        right: dict,
        top: dict,
        labels: Optional[dict] = None,
        name: str = "",
    ) -> "Surface":
        """Finite translation surface from its two face permutations."""
        faces = list(right)
        if set(top) != set(faces):
            raise ValueError("right and top permutations disagree on faces")
        if set(right.values()) != set(faces) or set(top.values()) != set(faces):
            raise ValueError("permutations must be bijections on the faces")
        left = {v: k for k, v in right.items()}
        bottom = {v: k for k, v in top.items()}

        def fn(f, s):
            if s == "R":
                return Transition(right[f], "L")
            if s == "L":
                return Transition(left[f], "R")
            if s == "T":
                return Transition(top[f], "B")
            return Transition(bottom[f], "T")

        return Surface(fn, faces=faces, labels=labels, name=name)

    # -- basic queries -----------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self._faces is not None

    @property
    def faces(self) -> list:
        if self._faces is None:
            raise ValueError(f"surface {self.name!r} is lazy; pass an explicit scope")
        return self._faces

    def transition(self, face: FaceId, side: Side) -> Transition:
        key = (face, side)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._cache.get(key)
            if hit is None:
                hit = self._fn(face, side)
                self._cache[key] = hit
        return hit

    def right_of(self, f):
        return self.transition(f, "R").face

    def top_of(self, f):
        return self.transition(f, "T").face

    def left_of(self, f):
        return self.transition(f, "L").face

    def bottom_of(self, f):
        return self.transition(f, "B").face

    @property
    def is_translation(self) -> bool:
        if self._faces is None:
            raise ValueError("translation check needs a finite surface")
        return all(
            self.transition(f, s).rot == 0 for f in self._faces for s in SIDES
        )

    # -- edges and labels ----------------------------------------------------

    def edge_sides(self, face: FaceId, side: Side):
        """The two (face, side) incidences of one geometric edge."""
        tr = self.transition(face, side)
        return (face, side), (tr.face, tr.side)

    def canonical_edge(self, face: FaceId, side: Side):
        a, b = self.edge_sides(face, side)
        return min(a, b, key=lambda t: (repr(t[0]), t[1]))

    def canonical_coord(self, face: FaceId, side: Side, t):
        """Map a side parameter onto the canonical representative's parameter."""
        a, b = self.edge_sides(face, side)
        canon = self.canonical_edge(face, side)
        if canon == (face, side):
            return canon, t
        tr = self.transition(face, side)
        return canon, (1 - t if tr.flip else t)

    def edge_label(self, face: FaceId, side: Side) -> Optional[str]:
        lab = self._labels.get((face, side))
        if lab is None:
            a, b = self.edge_sides(face, side)
            lab = self._labels.get(b)
        return lab

    # -- streets -------------------------------------------------------------

    def street(self, face: FaceId, side: Side = "R", limit: int = 100000) -> Street:
        """Follow the straight axis flow from (face, side) until it closes."""
        start = (face, side)
        states = []
        cur = start
        for _ in range(limit):
            states.append(cur)
            tr = self.transition(*cur)
            cur = (tr.face, OPPOSITE[tr.side])
            if cur == start:
                return Street(tuple(states), closed=True)
        return Street(tuple(states), closed=False)

    def face_streets(self, face: FaceId, limit: int = 100000) -> list[Street]:
        out, keys = [], set()
        for side in ("R", "T"):
            st = self.street(face, side, limit)
            k = st.key()
            if k not in keys:
                keys.add(k)
                out.append(st)
        return out

    def streets(self, scope: Optional[Iterable[FaceId]] = None, limit: int = 100000) -> list[Street]:
        """All streets touching the scope (all faces, when finite)."""
        faces = list(scope) if scope is not None else self.faces
        out, keys = [], set()
        for f in faces:
            for st in self.face_streets(f, limit):
                k = st.key()
                if k not in keys:
                    keys.add(k)
                    out.append(st)
        return out

    def street_lcm(self, scope: Optional[Iterable[FaceId]] = None, limit: int = 100000) -> int:
        sts = self.streets(scope, limit)
        bad = [s for s in sts if not s.closed]
        if bad:
            raise StreetLimitError("street did not close within limit; no finite lcm")
        return lcm(*(s.length for s in sts))

    # -- street graph distance ------------------------------------------------

    def p_distance(self, f1: FaceId, f2: FaceId, max_dist: Optional[int] = None) -> Optional[int]:
        """Streets needed to chain from f1 to f2 (0 for equal faces).

        Returns None if no path within ``max_dist``.
        """
        if f1 == f2:
            return 0
        dist = 0
        seen = {f1}
        frontier = [f1]
        while frontier:
            dist += 1
            if max_dist is not None and dist > max_dist:
                return None
            nxt = []
            for f in frontier:
                for st in self.face_streets(f):
                    if not st.closed:
                        continue
                    for g in st.faces:
                        if g == f2:
                            return dist
                        if g not in seen:
                            seen.add(g)
                            nxt.append(g)
            frontier = nxt
        return None

    def faces_within(self, origin: Optional[FaceId] = None, radius: int = 1) -> list:
        """Faces at street-graph distance <= radius from the origin face."""
        start = origin if origin is not None else self.origin
        if start is None:
            raise ValueError("no origin face")
        seen = {start}
        frontier = [start]
        for _ in range(radius):
            nxt = []
            for f in frontier:
                for st in self.face_streets(f):
                    if not st.closed:
                        continue
                    for g in st.faces:
                        if g not in seen:
                            seen.add(g)
                            nxt.append(g)
            frontier = nxt
        return sorted(seen, key=repr)

    def p_diameter(self, scope: Iterable[FaceId]) -> int:
        faces = list(scope)
        best = 0
        for f in faces:
            # BFS once per face inside the scope's induced metric
            dist = {f: 0}
            frontier = [f]
            while frontier:
                nxt = []
                for g in frontier:
                    for st in self.face_streets(g):
                        if not st.closed:
                            continue
                        for h in st.faces:
                            if h not in dist:
                                dist[h] = dist[g] + 1
                                nxt.append(h)
                frontier = nxt
            reach = [d for g, d in dist.items() if g in set(faces)]
            missing = set(faces) - set(dist)
            if missing:
                raise ValueError("scope is not street-connected")
            best = max(best, max(reach))
        return best

    # -- vertices --------------------------------------------------------------

    _SIGMA = {"BL": "L", "TL": "T", "TR": "R", "BR": "B"}
    _ENDP = {"BL": 0, "TL": 0, "TR": 1, "BR": 1}
    _CORNER_OF = {
        ("L", 0): "BL", ("L", 1): "TL",
        ("R", 0): "BR", ("R", 1): "TR",
        ("T", 0): "TL", ("T", 1): "TR",
        ("B", 0): "BL", ("B", 1): "BR",
    }

    def corner_orbit(self, face: FaceId, corner: str) -> list[tuple]:
        """Quadrants around the vertex at a face corner, walked in order."""
        start = (face, corner)
        out = [start]
        cur = start
        while True:
            f, c = cur
            s = self._SIGMA[c]
            tr = self.transition(f, s)
            e = self._ENDP[c]
            if tr.flip:
                e = 1 - e
            cur = (tr.face, self._CORNER_OF[(tr.side, e)])
            if cur == start:
                return out
            out.append(cur)
            if len(out) > 4096:
                raise RuntimeError("vertex walk did not close")

    def cone_quadrants(self, face: FaceId, corner: str) -> int:
        """Number of quadrants around the vertex; 4 means a flat point."""
        return len(self.corner_orbit(face, corner))

    def vertex_profile(self, scope: Optional[Iterable[FaceId]] = None) -> list[int]:
        """Quadrant counts of the distinct vertices touching the scope."""
        faces = list(scope) if scope is not None else self.faces
        seen, out = set(), []
        for f in faces:
            for c in ("BL", "BR", "TL", "TR"):
                if (f, c) in seen:
                    continue
                orbit = self.corner_orbit(f, c)
                seen.update(orbit)
                out.append(len(orbit))
        return sorted(out)

    # -- validation --------------------------------------------------------------

    def validate(self) -> None:
        """Check pairing consistency; finite surfaces also check connectivity."""
        faces = self.faces
        for f in faces:
            for s in SIDES:
                tr = self.transition(f, s)
                back = self.transition(tr.face, tr.side)
                if back.face != f or back.side != s or (back.rot + tr.rot) % 360 != 0:
                    raise ValueError(f"pairing of ({f!r}, {s}) is not involutive")
        seen = {faces[0]}
        frontier = [faces[0]]
        while frontier:
            nxt = []
            for f in frontier:
                for s in SIDES:
                    g = self.transition(f, s).face
                    if g not in seen:
                        seen.add(g)
                        nxt.append(g)
            frontier = nxt
        if set(faces) - seen:
            raise ValueError("surface is not connected")

    def __repr__(self):
        n = len(self._faces) if self._faces is not None else "lazy"
        return f"Surface({self.name or 'unnamed'}, faces={n})"
