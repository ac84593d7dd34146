"""Lazy infinite maze families with declared street bounds and growth class.

Each provider returns (surface, profile).  The profile carries what the
family promises: an upper bound on street lengths (None when some street is
genuinely infinite) and how the face count grows with street-graph radius.
``verify_maze_bound`` spot-checks the promise on a finite neighbourhood, and
``growth_probe`` measures the growth class.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .builders import voxel_surface
from .region import build_strip
from .surface import OPPOSITE, Street, Surface, Transition

_GROWTH_RADIUS = {"linear": 32, "quadratic": 16, "cubic": 2, "exponential": 4}


@dataclass(frozen=True)
class MazeProfile:
    name: str
    street_bound: Optional[int]
    growth: str  # linear | quadratic | cubic | exponential
    params: dict = field(default_factory=dict)
    seed: Optional[int] = None

    @property
    def probe_radius(self) -> int:
        return _GROWTH_RADIUS[self.growth]


# ---------------------------------------------------------------------------
# snake strips: all streets have exactly two faces


def _snake2(tooth: Callable[[int], int], name: str) -> Surface:
    """Bi-infinite chain of 2-face streets; tooth(j) = +-1 vertical step.

    Column x holds cells (x, Y(x-1)) and (x, Y(x)) where Y is the running sum
    of teeth; horizontal pairs join (x, Y(x)) with (x+1, Y(x)).
    """
    memo = {0: 0}

    def Y(j: int) -> int:
        if j not in memo:
            if j > 0:
                k = max(i for i in memo if i < j)
                y = memo[k]
                for i in range(k + 1, j + 1):
                    y += tooth(i)
                    memo[i] = y
            else:
                k = min(i for i in memo if i > j)
                y = memo[k]
                for i in range(k, j, -1):
                    y -= tooth(i)
                    memo[i - 1] = y
        return memo[j]

    def fn(face, side):
        x, y = face
        if y not in (Y(x), Y(x - 1)):
            raise ValueError(f"no face {face!r} on {name}")
        if side in ("T", "B"):
            other = Y(x) if y == Y(x - 1) else Y(x - 1)
            return Transition((x, other), OPPOSITE[side])
        mate = (x + 1, y) if y == Y(x) else (x - 1, y)
        return Transition(mate, OPPOSITE[side])

    return Surface(fn, origin=(0, 0), name=name)


def shark(**_ignored):
    s = _snake2(lambda j: 1 if j % 2 else -1, "shark")
    return s, MazeProfile("shark", street_bound=2, growth="linear")


def staircase(**_ignored):
    s = _snake2(lambda j: 1, "staircase")
    return s, MazeProfile("staircase", street_bound=2, growth="linear")


def hybrid(seed: int = 0, **_ignored):
    def tooth(j):
        return 1 if random.Random(f"hybrid:{seed}:{j}").random() < 0.5 else -1

    s = _snake2(tooth, f"hybrid({seed})")
    return s, MazeProfile("hybrid", street_bound=2, growth="linear", seed=seed)


# ---------------------------------------------------------------------------
# planar mazes with holes: streets wrap at the flanking holes


def _hole_maze(is_hole, origin, name: str) -> Surface:
    def fn(face, side):
        x, y = face
        if is_hole(face):
            raise ValueError(f"no face {face!r} on {name}")
        if side in ("R", "L"):
            step = 1 if side == "R" else -1
            if not is_hole((x + step, y)):
                return Transition((x + step, y), OPPOSITE[side])
            g = x
            while not is_hole((g - step, y)):
                g -= step
                if abs(x - g) > 10000:
                    raise RuntimeError("unbounded street")
            return Transition((g, y), OPPOSITE[side])
        step = 1 if side == "T" else -1
        if not is_hole((x, y + step)):
            return Transition((x, y + step), OPPOSITE[side])
        g = y
        while not is_hole((x, g - step)):
            g -= step
            if abs(y - g) > 10000:
                raise RuntimeError("unbounded street")
        return Transition((x, g), OPPOSITE[side])

    return Surface(fn, origin=origin, name=name)


def maze3(**_ignored):
    """Every fourth cell of each row and column removed; all streets 3 long.

    The hole tile is a non-affine permutation so holes never line up into
    diagonal walls (an affine tile would cut the plane into strips).
    """

    def is_hole(face):
        x, y = face
        return y % 4 == _PM_SIGMA[x % 4]

    s = _hole_maze(is_hole, (0, 0), "maze3")
    return s, MazeProfile("maze3", street_bound=3, growth="quadratic")


_PM_SIGMA = (1, 3, 0, 2)
_PM_TAU = (2, 0, 3, 1)


def _block_sign(seed, bx, by) -> int:
    return 1 if random.Random(f"pm:{seed}:{bx}:{by}").random() < 0.5 else -1


def plusminus(seed: int = 0, **_ignored):
    """4x4 blocks, one hole per block row/column, two mirror patterns."""

    def is_hole(face):
        x, y = face
        perm = _PM_SIGMA if _block_sign(seed, x // 4, y // 4) > 0 else _PM_TAU
        return y % 4 == perm[x % 4]

    s = _hole_maze(is_hole, (1, 1), f"plusminus({seed})")
    return s, MazeProfile("plusminus", street_bound=6, growth="quadratic", seed=seed)


def pq_maze(p: int = 5, q: int = 2, seed: int = 0, mixed: bool = True, **_ignored):
    """p x p blocks with a slope-q diagonal of holes (or mirrored slope p-q)."""
    if math.gcd(p, q) != 1 or not (0 < q < p):
        raise ValueError("need 0 < q < p with gcd(p, q) = 1")

    def is_hole(face):
        x, y = face
        slope = q
        if mixed and _block_sign(f"pq:{seed}", x // p, y // p) < 0:
            slope = p - q
        return y % p == (slope * (x % p)) % p

    s = _hole_maze(is_hole, (1, 0), f"pq({p},{q})")
    return s, MazeProfile(
        "pq", street_bound=2 * p - 2, growth="quadratic",
        params={"p": p, "q": q, "mixed": mixed}, seed=seed,
    )


# ---------------------------------------------------------------------------
# tree maze: faces are the edges of the 4-regular tree, streets its vertices


def _edge_rep(u: str, letter: int) -> tuple:
    """Canonical (shorter endpoint, letter) id of the tree edge {u, u.letter}."""
    c = str(letter)
    if u and u[-1] == c:
        return (u[:-1], letter)
    return (u, letter)


def tree_maze(**_ignored):
    """Streets are 4-cycles at tree vertices, alternating axis by depth.

    A face is an edge of the 4-regular tree; its horizontal street cycles the
    four edges at the even-depth endpoint, the vertical one at the odd.  The
    street graph is the tree itself, so balls grow exponentially.
    """

    def fn(face, side):
        w, letter = face
        even_end, odd_end = (w, w + str(letter))
        if len(w) % 2 == 1:
            even_end, odd_end = odd_end, even_end
        if side in ("R", "L"):
            vtx, d = even_end, (1 if side == "R" else -1)
        else:
            vtx, d = odd_end, (1 if side == "T" else -1)
        return Transition(_edge_rep(vtx, (letter + d) % 4), OPPOSITE[side])

    s = Surface(fn, origin=("", 0), name="tree")
    return s, MazeProfile("tree", street_bound=4, growth="exponential")


# ---------------------------------------------------------------------------
# polycube corridor lattice: cubic growth, streets in {4, 12, 20}


def _corridor_solid(cell) -> bool:
    r = tuple(c % 6 for c in cell)
    if all(x in (5, 0, 1) for x in r):
        return True  # 3x3x3 cube at each (6Z)^3 site
    for a in range(3):
        if r[a] in (2, 3, 4) and all(r[b] == 0 for b in range(3) if b != a):
            return True  # 1x1x3 corridor between cubes along axis a
    return False


def polycube_corridor(**_ignored):
    s = voxel_surface(_corridor_solid, origin=((0, 0, 2), "+x"), name="polycube-corridor")
    return s, MazeProfile("polycube-corridor", street_bound=20, growth="cubic")


# ---------------------------------------------------------------------------
# infinite L strip, unfolded


def inf_l_strip(**_ignored):
    region = build_strip(period=2, heights=2, name="inf-L-strip")
    s = region.four_copy()
    # the corridor row makes axis streets unbounded; the slope-2 streets are
    # the bounded ones (see cylinders.rhombus_maze)
    return s, MazeProfile("inf-L-strip-4copy", street_bound=None, growth="linear")


PROVIDERS = {
    "shark": shark,
    "staircase": staircase,
    "hybrid": hybrid,
    "maze3": maze3,
    "plusminus": plusminus,
    "pq": pq_maze,
    "tree": tree_maze,
    "polycube-corridor": polycube_corridor,
    "inf-L-strip-4copy": inf_l_strip,
}


def provide(name: str, **params):
    if name not in PROVIDERS:
        raise ValueError(f"unknown generator {name!r}")
    return PROVIDERS[name](**params)


# ---------------------------------------------------------------------------
# checks


@dataclass
class BoundReport:
    ok: bool
    faces_checked: int
    worst: Optional[Street] = None

    def __bool__(self):
        return self.ok


def verify_maze_bound(surface: Surface, profile: MazeProfile, radius: Optional[int] = None) -> BoundReport:
    """Check every street near the origin closes within the declared bound."""
    if profile.street_bound is None:
        raise ValueError(f"{profile.name} declares no street bound")
    r = radius if radius is not None else min(profile.probe_radius, 8)
    faces = surface.faces_within(radius=r)
    worst = None
    for st in surface.streets(scope=faces, limit=4 * profile.street_bound + 8):
        if not st.closed or st.length > profile.street_bound:
            if worst is None or st.length > worst.length:
                worst = st
    return BoundReport(worst is None, len(faces), worst)


def growth_probe(surface: Surface, profile: MazeProfile) -> dict:
    """Compare ball sizes at radius r and 2r against the declared class."""
    r = max(profile.probe_radius // 2, 1)
    b1 = len(surface.faces_within(radius=r))
    b2 = len(surface.faces_within(radius=2 * r))
    ratio = b2 / b1
    if profile.growth == "exponential":
        lo, hi = 2.0 ** r, float("inf")
    else:
        d = {"linear": 1, "quadratic": 2, "cubic": 3}[profile.growth]
        lo, hi = 2.0 ** d / 2, 2.0 ** d * 2  # factor-two slack either way
    return {
        "radius": r,
        "ball": b1,
        "double_ball": b2,
        "ratio": ratio,
        "declared": profile.growth,
        "ok": lo <= ratio <= hi,
    }
