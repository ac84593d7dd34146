"""Tilted streets of rational slope: cylinders, towers, strips, rhombi.

A street of rational slope on a translation surface closes up into a flat
cylinder (or runs off to infinity).  This module finds them exactly by
interval-orbit closure, classifies how a billiard crosses a tower of squares
(the engine behind L-strip bounce-back analysis), and rebuilds a tilted
two-direction decomposition as a square-tiled "rhombus maze" surface.

All positions and interval endpoints are Fractions, so closure tests, corner
hits and area bookkeeping are exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exactnum import QuadRat
from .flow import trace, trace_billiard
from .region import Region
from .surface import OPPOSITE, Surface, Transition

_HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# slope remapping between the square frame and the rhombus frame


def map_slope(m, beta) -> QuadRat:
    """Square-frame slope of the direction NE + beta*NW, NE=(1,m), NW=(-1,m).

    The linear map taking the rhombus lattice back to squares sends the
    parameter ``beta`` to the slope m(1+beta)/(1-beta); quadratic irrational
    in, quadratic irrational out.
    """
    b = QuadRat.of(beta)
    one = QuadRat(1)
    if b == one:
        raise ValueError("beta = 1 is parallel to the NE direction")
    return QuadRat.of(m) * (one + b) / (one - b)


# ---------------------------------------------------------------------------
# tower exits


@dataclass(frozen=True)
class TowerQuery:
    """A billiard entering a k-tower of unit squares through a bottom gate.

    The tower is k squares stacked on the bottom one, whose left and right
    sides are the open gates g1 and g2; every other wall reflects.  The
    entering path has slope m and unit horizontal speed.
    """

    k: int
    m: int
    gate: int = 1  # 1 = left gate, 2 = right gate

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("tower height k must be >= 2")
        if self.m == 0:
            raise ValueError("slope m must be a nonzero integer")
        if self.gate not in (1, 2):
            raise ValueError("gate must be 1 (left) or 2 (right)")


def tower_exit(q, m: Optional[int] = None, gate: int = 1) -> tuple:
    """First side hit x0 and the exit type of a billiard crossing a tower.

    Exit types are relative to the entry gate: 1 = leaves through the far
    gate ascending, 2 = far gate descending, 3 = bounces back through the
    entry gate ascending, 4 = entry gate descending.  x0 is the count of
    vertical-wall hits up to the exit: the least t >= 1 with m*t = 0 or -1
    (mod 2k).  Odd t lands on the far side, even t back on the entry side,
    and the residue says whether the exit comes after (0) or before (-1) the
    last bounce off the tower floor, which fixes ascending vs descending.
    Entering gate 2 means the same slope-m line traversed leftward.
    """
    if not isinstance(q, TowerQuery):
        q = TowerQuery(q, m, gate)
    # a right-gate entry mirrors to a left entry with slope -m; the mirror
    # preserves up/down and swaps gate roles, so relative types carry over
    mm = q.m if q.gate == 1 else -q.m
    n = 2 * q.k
    x0 = r = None
    for t in range(1, n + 1):  # t = 2k always qualifies
        r = (mm * t) % n
        if r == 0 or r == n - 1:
            x0 = t
            break
    if x0 % 2 == 0:
        # m*x0 = -1 is odd mod 2k, impossible for even x0
        e = 3 if mm > 0 else 4
    elif r == 0:
        e = 1 if mm > 0 else 2
    else:
        e = 2 if mm > 0 else 1
    return x0, e


def bounces_back(k: int, m: int) -> bool:
    """Whether a slope-m billiard entering a k-tower returns the way it came.

    Direction-independent: x0 has the same parity for m and -m (the -1 route
    exists only when gcd(m, 2k) = 1, and then the two x0 values sum to 2k).
    """
    return tower_exit(TowerQuery(k, m))[1] in (3, 4)


# ---------------------------------------------------------------------------
# cylinders by interval-orbit closure

_ENTRY_SIDES = {1: ("L", "B"), -1: ("L", "T")}  # keyed by the sign of the slope


@dataclass(frozen=True)
class Cylinder:
    """A maximal band of parallel rational-slope geodesics.

    Recorded by the open interval it cuts on the seed edge and the orbit of
    canonical edge intervals its core traverses.  ``dx`` is the horizontal
    advance of one period (closed) or of the traced prefix (escaped).
    """

    slope: Fraction
    seed: tuple  # (face, side) entry edge the interval lives on
    interval: tuple  # (lo, hi) open subinterval of the seed edge
    orbit: tuple  # ((face, side, lo, hi), ...) canonical edge intervals
    crossings: int
    dx: Fraction
    status: str  # "closed" | "escaped"
    bound: Optional[int] = None

    @property
    def closed(self) -> bool:
        return self.status == "closed"

    @property
    def _pq(self):
        return abs(self.slope.numerator), self.slope.denominator

    @property
    def circumference(self) -> QuadRat:
        # speed sqrt(p^2+q^2)/q per unit of horizontal advance
        p, q = self._pq
        return QuadRat(Fraction(0), self.dx / q, p * p + q * q)

    @property
    def width(self) -> QuadRat:
        p, q = self._pq
        fac = q if self.seed[1] in ("L", "R") else p
        lo, hi = self.interval
        return QuadRat(Fraction(0), Fraction((hi - lo) * fac, p * p + q * q), p * p + q * q)

    @property
    def area(self) -> Fraction:
        # width * circumference; the radicals cancel
        p, q = self._pq
        fac = q if self.seed[1] in ("L", "R") else p
        lo, hi = self.interval
        return (hi - lo) * fac * self.dx / q

    def rhombi(self) -> int:
        """Cells of the two-family separatrix lattice crossed per period.

        Lines of slope +/-(p/q) through lattice points advance the index
        d = q*y + p*x by one per cell, so a period crosses 2*p*dx of them.
        """
        if not self.closed:
            raise ValueError("rhombus count needs a closed cylinder")
        p, _ = self._pq
        n = 2 * p * self.dx
        if n.denominator != 1:
            raise ValueError(f"non-integer rhombus count {n}")
        return int(n)

    def report(self) -> dict:
        out = {
            "slope": str(self.slope),
            "seed": [repr(self.seed[0]), self.seed[1]],
            "interval": [str(self.interval[0]), str(self.interval[1])],
            "crossings": self.crossings,
            "status": self.status,
            "circumference": str(self.circumference),
            "circumference_float": float(self.circumference),
            "width": str(self.width),
            "width_float": float(self.width),
        }
        if self.closed:
            out["rhombi"] = self.rhombi()
        else:
            out["bound"] = self.bound
        return out


@dataclass
class _Piece:
    # current entry edge plus affine pullbacks to the seed parameter w:
    # current edge param u = a*w + b, horizontal advance = da*w + db
    face: object
    side: str
    wlo: Fraction
    whi: Fraction
    a: Fraction
    b: Fraction
    da: Fraction
    db: Fraction
    steps: int
    orbit: list = field(default_factory=list)


def _branch(side: str, p: int, q: int, u_mid: Fraction):
    """Exit maps of one face crossing on the sub-branch containing u_mid.

    Returns (split, exit_side, (a, b), (da, db)): ``split`` is the entry
    parameter whose path hits the far corner; the affine pairs give the exit
    parameter and the horizontal advance as functions of the entry one.
    """
    P = abs(p)
    if p > 0:
        if side == "L":  # from (0, u) toward the (1, 1) corner
            split = 1 - Fraction(p, q)
            if u_mid < split:
                return split, "R", (Fraction(1), Fraction(p, q)), (Fraction(0), Fraction(1))
            return split, "T", (Fraction(-q, p), Fraction(q, p)), (Fraction(-q, p), Fraction(q, p))
        if side == "B":
            split = 1 - Fraction(q, p)
            if u_mid < split:
                return split, "T", (Fraction(1), Fraction(q, p)), (Fraction(0), Fraction(q, p))
            return split, "R", (Fraction(-p, q), Fraction(p, q)), (Fraction(-1), Fraction(1))
    else:
        if side == "L":  # from (0, u) toward the (1, 0) corner
            split = Fraction(P, q)
            if u_mid > split:
                return split, "R", (Fraction(1), Fraction(-P, q)), (Fraction(0), Fraction(1))
            return split, "B", (Fraction(q, P), Fraction(0)), (Fraction(q, P), Fraction(0))
        if side == "T":
            split = 1 - Fraction(q, P)
            if u_mid < split:
                return split, "B", (Fraction(1), Fraction(q, P)), (Fraction(0), Fraction(q, P))
            return split, "R", (Fraction(P, q), 1 - Fraction(P, q)), (Fraction(-1), Fraction(1))
    raise ValueError(f"cannot enter a face through {side!r} with this slope sign")


def _canon_interval(surface, face, side, t1, t2):
    ce, u1 = surface.canonical_coord(face, side, t1)
    _, u2 = surface.canonical_coord(face, side, t2)
    return (ce[0], ce[1], min(u1, u2), max(u1, u2))


def _entry_edge(surface, face, side, p):
    """Normalize an edge to the incidence the flow enters through."""
    if side in _ENTRY_SIDES[1 if p > 0 else -1]:
        return face, side
    tr = surface.transition(face, side)
    if tr.rot:
        raise ValueError("tilted flow needs a translation surface")
    if tr.side not in _ENTRY_SIDES[1 if p > 0 else -1]:
        raise ValueError(f"edge ({face!r}, {side}) has no valid entry incidence")
    return tr.face, tr.side


def cylinder_decompose(s, slope, seed, bound: int = 10000) -> list:
    """Cylinders of a rational slope discovered from a seed.

    ``seed`` is an edge (face, side) — decomposed in full — or a point
    (face, x, y), returning just the cylinder containing it.  The open edge
    interval is flowed forward; corner hits split it exactly, and a piece
    closes when it returns to the seed edge as the identity.  Pieces still
    open after ``bound`` face crossings come back with status "escaped".
    """
    if isinstance(s, Region):
        s = s.four_copy()
    slope = Fraction(slope)
    if slope == 0:
        raise ValueError("slope must be nonzero; axis streets live in Surface.street")
    p, q = slope.numerator, slope.denominator

    want = None
    if len(seed) == 3:
        face, x, y = seed
        first = trace(s, face, QuadRat.of(x), QuadRat.of(y), q, p, max_events=1)
        if not first.events:
            raise ValueError("seed lies on a separatrix (the orbit hits a vertex)")
        ev = first.events[0]
        tr = s.transition(ev.face, ev.side)
        if tr.rot:
            raise ValueError("tilted flow needs a translation surface")
        if ev.param.q != 0:
            raise ValueError("a point seed needs rational coordinates")
        face, side, want = tr.face, tr.side, ev.param.p
    else:
        face, side = _entry_edge(s, seed[0], seed[1], p)

    seed_edge = (face, side)
    work = deque()
    work.append(_Piece(face, side, Fraction(0), Fraction(1), Fraction(1), Fraction(0),
                       Fraction(0), Fraction(0), 0))
    cuts = set()
    pieces = []

    while work:
        pc = work.popleft()
        outcome = None
        while pc.steps <= bound:
            u1 = pc.a * pc.wlo + pc.b
            u2 = pc.a * pc.whi + pc.b
            ulo, uhi = (u1, u2) if u1 < u2 else (u2, u1)
            # snapshot the affine frame; intervals materialize once the final
            # sub-piece is known, so splits downstream narrow them correctly
            pc.orbit.append((pc.face, pc.side, pc.a, pc.b))
            split, out, (ba, bb), (da, db) = _branch(pc.side, p, q, (ulo + uhi) / 2)
            if ulo < split < uhi:
                w_star = (split - pc.b) / pc.a
                cuts.add(w_star)
                for lo, hi in ((pc.wlo, w_star), (w_star, pc.whi)):
                    work.append(_Piece(pc.face, pc.side, min(lo, hi), max(lo, hi),
                                       pc.a, pc.b, pc.da, pc.db, pc.steps, pc.orbit[:-1]))
                outcome = "split"
                break
            # advance one face: horizontal gain, exit map, edge transition
            pc.da, pc.db = pc.da + da * pc.a, pc.db + da * pc.b + db
            pc.a, pc.b = ba * pc.a, ba * pc.b + bb
            tr = s.transition(pc.face, out)
            if tr.rot or tr.flip:
                raise ValueError("tilted flow needs a translation surface")
            pc.face, pc.side = tr.face, tr.side
            pc.steps += 1
            if (pc.face, pc.side) == seed_edge and pc.a == 1 and pc.b == 0:
                outcome = "closed"
                break
        if outcome == "split":
            continue
        status = "closed" if outcome == "closed" else "escaped"
        if status == "closed" and pc.da != 0:
            raise RuntimeError("closed piece with non-constant holonomy")
        mid = (pc.wlo + pc.whi) / 2
        segs = []
        for ef, es, ea, eb in pc.orbit:
            v1, v2 = ea * pc.wlo + eb, ea * pc.whi + eb
            segs.append(_canon_interval(s, ef, es, min(v1, v2), max(v1, v2)))
        pieces.append(Cylinder(
            slope=slope,
            seed=seed_edge,
            interval=(pc.wlo, pc.whi),
            orbit=tuple(segs),
            crossings=pc.steps,
            dx=pc.da * mid + pc.db,
            status=status,
            bound=None if status == "closed" else bound,
        ))

    pieces.sort(key=lambda c: c.interval)
    if want is not None:
        if want in cuts or want <= 0 or want >= 1:
            raise ValueError("seed lies on a separatrix (the orbit hits a vertex)")
        return [c for c in pieces if c.interval[0] < want < c.interval[1]]
    # a core crossing the seed edge several times closes once per crossing;
    # keep the first representative of each orbit set
    seen, out = set(), []
    for c in pieces:
        key = frozenset(c.orbit) if c.closed else id(c)
        if key in seen:
            continue
        seen.add(key)
        out.append(c)
    return out


def decompose_scope(s, slope, faces=None, bound: int = 10000) -> list:
    """Distinct cylinders through any edge of the given faces."""
    if isinstance(s, Region):
        s = s.four_copy()
    if faces is None:
        faces = s.faces
    edges = sorted(
        {s.canonical_edge(f, sd) for f in faces for sd in ("R", "L", "T", "B")},
        key=lambda e: (repr(e[0]), e[1]),
    )
    seen, out = set(), []
    for edge in edges:
        for c in cylinder_decompose(s, slope, edge, bound):
            key = frozenset(c.orbit)
            if key in seen:
                continue
            seen.add(key)
            out.append(c)
    return out


# ---------------------------------------------------------------------------
# rhombus mazes


@dataclass(frozen=True)
class RhombusCorrespondence:
    """Affine dictionary between a rhombus maze and its base surface.

    Maze faces are the cells cut out by the two separatrix families of
    slope +/-m through lattice points; each face id is the canonical form of
    its centre point on the base surface.  The right/top maze neighbours sit
    one cell along NE=(1, m) and NW=(-1, m) respectively.
    """

    base: Surface
    m: int

    @property
    def ne(self):
        return (1, self.m)

    @property
    def nw(self):
        return (-1, self.m)

    def center(self, rid) -> tuple:
        """Base-surface point (face, x, y) of a maze face's centre."""
        if rid[0] == "F":
            return rid[1], rid[2], rid[3]
        _, f, side, t = rid
        if side == "L":
            return f, Fraction(0), t
        if side == "R":
            return f, Fraction(1), t
        if side == "B":
            return f, t, Fraction(0)
        return f, t, Fraction(1)

    def slope(self, beta) -> QuadRat:
        return map_slope(self.m, beta)


def _center_id(surface, face, x, y):
    x, y = Fraction(x), Fraction(y)
    side = param = None
    if x == 0:
        side, param = "L", y
    elif x == 1:
        side, param = "R", y
    elif y == 0:
        side, param = "B", x
    elif y == 1:
        side, param = "T", x
    if side is None:
        return ("F", face, x, y)
    ce, t = surface.canonical_coord(face, side, param)
    return ("E", ce[0], ce[1], Fraction(t))


# maze side -> (vx, vy) scale of (1, m); one cell step along NE or NW
_RHOMB_DIR = {"R": (1, 1), "L": (-1, -1), "T": (-1, 1), "B": (1, -1)}


def rhombus_maze(s, m: int, scope=None, bound: int = 10000):
    """Square-tiled surface whose faces are the slope-(+/-m) lattice rhombi.

    Faces are identified by their centre points; the "R" neighbour is one
    cell along NE=(1, m), the "T" neighbour one cell along NW=(-1, m), so
    horizontal maze streets are NE streets of the base surface and their
    lengths equal the tilted streets' rhombus counts.  Requires both tilted
    decompositions within the scope to close; fails loudly otherwise.
    """
    if isinstance(s, Region):
        s = s.four_copy()
    m = int(m)
    if m == 0:
        raise ValueError("rhombus slope must be a nonzero integer")
    m = abs(m)

    if scope is None:
        faces = s.faces if s.is_finite else s.faces_within(radius=4)
    elif isinstance(scope, int):
        faces = s.faces_within(radius=scope)
    else:
        faces = list(scope)

    for sl in (m, -m):
        bad = [c for c in decompose_scope(s, sl, faces, bound) if not c.closed]
        if bad:
            raise ValueError(
                f"unsupported geometry: slope {sl} decomposition does not close "
                f"within the scope ({len(bad)} escaped within bound {bound})"
            )

    tt = Fraction(1, 2 * m)

    def center_of(rid):
        if rid[0] == "F":
            return rid[1], rid[2], rid[3]
        _, f, side, t = rid
        x = {"L": Fraction(0), "R": Fraction(1)}.get(side)
        if x is not None:
            return f, x, t
        return f, t, (Fraction(0) if side == "B" else Fraction(1))

    def fn(rid, side):
        f, x, y = center_of(rid)
        gx, gy = _RHOMB_DIR[side]
        res = trace(s, f, QuadRat.of(x), QuadRat.of(y), gx, gy * m, max_time=tt,
                    keep_events=False)
        if res.status != "budget":
            raise RuntimeError(f"rhombus step from {rid!r} ended {res.status}")
        fin = res.final
        if fin.x.q != 0 or fin.y.q != 0:
            raise RuntimeError("rhombus step left the rational lattice")
        return Transition(_center_id(s, fin.face, fin.x.p, fin.y.p), OPPOSITE[side], 0)

    ids = set()
    for f in faces:
        for c0 in range(-m, 1):
            for d0 in range(0, m + 1):
                cc, dd = c0 + _HALF, d0 + _HALF
                x, y = (dd - cc) / (2 * m), (cc + dd) / 2
                if 0 <= x <= 1 and 0 <= y <= 1:
                    ids.add(_center_id(s, f, x, y))
    ids = sorted(ids, key=repr)
    if not ids:
        raise ValueError("empty scope")

    full = s.is_finite and sorted(map(repr, faces)) == sorted(map(repr, s.faces))
    maze = Surface(
        fn,
        faces=ids if full else None,
        origin=ids[0],
        name=(s.name or "surface") + f"-rhombus{m}",
    )

    # constructive validation on the scope: pairings invert, streets close,
    # and maze street lengths match the cylinders' rhombus counts
    seen_streets = set()
    for rid in ids:
        for side in ("R", "L", "T", "B"):
            tr = maze.transition(rid, side)
            back = maze.transition(tr.face, tr.side)
            if back.face != rid or back.side != side:
                raise ValueError(f"unsupported geometry: pairing fails at {rid!r}/{side}")
        for side, sl in (("R", m), ("T", -m)):
            st = maze.street(rid, side, limit=16 * bound)
            if not st.closed:
                raise ValueError(f"unsupported geometry: maze street open at {rid!r}")
            if st.key() in seen_streets:
                continue
            seen_streets.add(st.key())
            cyl = cylinder_decompose(s, sl, center_of(rid), bound)
            if len(cyl) != 1 or not cyl[0].closed or cyl[0].rhombi() != st.length:
                got = cyl[0].rhombi() if cyl and cyl[0].closed else None
                raise ValueError(
                    f"unsupported geometry: street length {st.length} != rhombus "
                    f"count {got} at {rid!r}"
                )

    return maze, RhombusCorrespondence(base=s, m=m)


# ---------------------------------------------------------------------------
# L-strips


@dataclass(frozen=True)
class LStripSpec:
    """A row of L-shaped billiard pieces, tower i of v_i squares over a
    corridor run of h_i squares; the window extends left and right by
    repeating its boundary piece."""

    towers: tuple  # ((v_i, h_i), ...) left to right
    r: Optional[int] = None  # declared size bound on every v_i, h_i

    def __post_init__(self):
        towers = tuple((int(v), int(h)) for v, h in self.towers)
        object.__setattr__(self, "towers", towers)
        if not towers:
            raise ValueError("empty strip window")
        for v, h in towers:
            if v < 2 or h < 2:
                raise ValueError("towers need v >= 2 and h >= 2")
            if self.r is not None and (v > self.r or h > self.r):
                raise ValueError(f"tower ({v},{h}) exceeds the declared bound {self.r}")

    @property
    def n(self) -> int:
        return len(self.towers)

    def x_of(self, i: int) -> int:
        """Column of tower i; the window occupies [x_of(0), x_of(n))."""
        return sum(h for _, h in self.towers[:i])

    @property
    def span(self) -> int:
        return self.x_of(self.n)

    def tower_of(self, x: int) -> int:
        """Index of the L-shape containing column x (extension included)."""
        v0, h0 = self.towers[0]
        vn, hn = self.towers[-1]
        if x < 0:
            return -((-x + h0 - 1) // h0)
        if x >= self.span:
            return self.n + (x - self.span) // hn
        for i in range(self.n - 1, -1, -1):
            if x >= self.x_of(i):
                return i
        raise AssertionError


def strip_region(spec: LStripSpec) -> Region:
    """Lazy billiard table of the strip: corridor row plus its towers."""
    v0, h0 = spec.towers[0]
    vn, hn = spec.towers[-1]
    span = spec.span
    columns = {spec.x_of(i): v for i, (v, h) in enumerate(spec.towers)}

    def contains(cell):
        x, y = cell
        if y == 0:
            return True
        if y < 0:
            return False
        if x < 0:
            return (-x) % h0 == 0 and y < v0
        if x >= span:
            return (x - span) % hn == 0 and y < vn
        v = columns.get(x)
        return v is not None and y < v

    return Region(contains, origin=(1, 0), name=f"Lstrip[{spec.n}]")


@dataclass
class StripReport:
    kind: str  # "finite-streets" | "infinite-street"
    slope: int
    bouncers: list  # window tower indices whose exit type is 3 or 4
    exits: list  # (x0, exit) per window tower
    pockets: list = field(default_factory=list)
    witness: Optional[dict] = None


def strip_street_analysis(spec: LStripSpec, m: int, bound: int = 24) -> StripReport:
    """Classify the slope-m streets of an L-strip.

    Every tilted street is trapped between towers that bounce the billiard
    back, so streets are finite exactly when both window ends (hence both
    extensions) bounce.  Pockets between consecutive bouncing towers are then
    verified to close by decomposing the strip's reflection unfolding;
    otherwise a billiard is traced until it has crossed ``bound`` L-shapes,
    witnessing an infinite street.
    """
    m = int(m)
    if m == 0:
        raise ValueError("slope m must be a nonzero integer")
    exits = [tower_exit(TowerQuery(v, m)) for v, _ in spec.towers]
    bouncers = [i for i, (_, e) in enumerate(exits) if e in (3, 4)]
    region = strip_region(spec)
    sealed = exits[0][1] in (3, 4) and exits[-1][1] in (3, 4)
    max_h = max(h for _, h in spec.towers)

    if sealed:
        surf = region.four_copy()
        pockets = []
        for i, j in zip(bouncers, bouncers[1:]):
            cell = (spec.x_of(i) + 1, 0)  # corridor cell right of tower i
            cap = 64 * (spec.x_of(j) - spec.x_of(i) + max(v for v, _ in spec.towers)) * (abs(m) + 1)
            cyls = cylinder_decompose(surf, m, ((cell, (1, 1)), "L"), bound=cap)
            pockets.append({"between": (i, j), "cylinders": cyls})
        return StripReport("finite-streets", m, bouncers, exits, pockets=pockets)

    # Start in a corridor gap next to an unsealed end, so bouncing interior
    # towers cannot trap the witness; y = 1/3 keeps every integer slope off
    # the lattice corners.
    if exits[-1][1] not in (3, 4):
        x0 = spec.x_of(spec.n - 1) + Fraction(3, 2)
    else:
        x0 = Fraction(3, 2)
    cells = bound * max_h + spec.span + 4
    res = trace_billiard(
        region, x0, Fraction(1, 3), 1, m,
        max_events=cells * (abs(m) + 2) * 8 + 1024,
        escape_bound=cells,
    )
    fx = res.final_cell[0]
    witness = {
        "status": res.status,
        "final_cell": res.final_cell,
        "towers_crossed": abs(spec.tower_of(fx) - spec.tower_of(int(x0))),
        "crossings": res.crossings,
    }
    return StripReport("infinite-street", m, bouncers, exits, witness=witness)
