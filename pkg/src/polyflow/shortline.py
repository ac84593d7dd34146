"""Shortcut chains for steep straight flows on square-tiled surfaces.

A line of slope alpha > 1 crosses each vertical street it meets through a
winding detour.  Joining every street entry point straight to the matching
exit point produces a flatter line through the same edge points, and the
construction iterates: slopes follow the continued fraction of alpha,
lengths contract by the digits, and consecutive levels cut one family of
edges in exactly the same point set.  Everything here is exact.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .exactnum import QuadRat
from .flow import PhasePoint, TraceResult, fast_trace, trace
from .surface import Street, Surface

_ZERO = QuadRat.of(0)
_ONE = QuadRat.of(1)
_SIDES = ("L", "R", "B", "T")


class DigitParityWarning(UserWarning):
    """A slope digit misses the divisibility the street shortcuts need."""


def shortline_slope(alpha, *, divisor: int = 2) -> QuadRat:
    """Slope of the next line in the shortcut chain.

    A steep slope [a0; a1, a2, ...] maps to the flat slope with steepness
    [a1; a2, ...]; a flat slope maps to the steep one of the following
    level by the same digit shift.  `divisor` is the divisibility the
    digits must satisfy for the shortcuts to keep positive slope; a
    violating digit is reported as a warning, never an error.
    """
    s = QuadRat.of(alpha)
    if s.sign() <= 0:
        raise ValueError("slope must be positive")
    steep = s if s > _ONE else s.inverse()
    a0 = steep.floor()
    frac = steep - a0
    if frac.sign() == 0:
        raise ValueError("integer steepness: the chain terminates here")
    if a0 % divisor:
        warnings.warn(
            f"digit {a0} is not divisible by {divisor}",
            DigitParityWarning,
            stacklevel=2,
        )
    return frac if s > _ONE else frac.inverse()


@dataclass(frozen=True)
class Trajectory:
    """A traced geodesic bundled with the surface it lives on."""

    surface: Surface
    result: TraceResult

    @classmethod
    def run(cls, surface, face, x, y, vx, vy, **budgets) -> "Trajectory":
        return cls(surface, trace(surface, face, x, y, vx, vy, **budgets))

    @property
    def start(self) -> PhasePoint:
        return self.result.start

    @property
    def events(self):
        return self.result.events

    @property
    def orientation(self) -> Optional[str]:
        """'v' for steep, 'h' for flat, None on the diagonal."""
        rise, run = abs(self.start.vy), abs(self.start.vx)
        if rise > run:
            return "v"
        if run > rise:
            return "h"
        return None


@dataclass(frozen=True)
class UnitType:
    """One unit of an almost-axial line.

    A steep line decomposes into units between consecutive crossings of
    horizontal edges; a unit is unbroken ("up") when it stays inside one
    face and broken ("-up") when it passes through a vertical edge on the
    way.  Flat lines swap the edge families ("right" / "+right").  The
    broken units are the corner cuts: each clips the corner between the
    edge it crosses and the edges it connects.
    """

    kind: str  # "up" | "-up" | "right" | "+right"
    label: Optional[str] = None  # concatenated side labels when available
    faces: tuple = ()  # faces passed through, in order
    cut: Optional[str] = None  # label of the edge crossed mid-unit

    @property
    def broken(self) -> bool:
        return self.kind in ("-up", "+right")

    @property
    def vertical(self) -> bool:
        return self.kind in ("up", "-up")

    def __repr__(self) -> str:
        return f"UnitType({self.label or self.kind})"


def _unit_label(surf, lo, hi, broken: bool, vertical: bool) -> Optional[str]:
    if lo is None or hi is None:
        return None
    if not broken:
        return lo + hi
    first, last = ("B", "T") if vertical else ("L", "R")
    # a star marks a broken unit whose label pair also occurs unbroken
    twin = any(
        surf.edge_label(f, first) == lo and surf.edge_label(f, last) == hi
        for f in surf.faces
    )
    return lo + hi + ("*" if twin else "")


def classify_units(t: Trajectory) -> list:
    """Whole units of an almost-axial trace, in order, as (face, UnitType).

    Partial units at the two ends of the trace are dropped.  On labeled
    surfaces each unit carries the label pair of the edges it connects,
    with a trailing star on broken units that shadow an unbroken pair.
    """
    surf = t.surface
    if surf.is_finite and not surf.is_translation:
        raise ValueError("unit classification needs parallel gluings")
    axis = t.orientation
    if axis is None:
        raise ValueError("a diagonal line has no unit decomposition")
    main = ("T", "B") if axis == "v" else ("R", "L")
    out = []
    opening = None
    cut = None
    for ev in t.events:
        if ev.side in main:
            if opening is not None:
                out.append(_whole_unit(surf, opening, cut, ev, axis))
            opening, cut = ev, None
        elif opening is not None:
            if cut is not None:
                raise ValueError("two transverse cuts inside one unit")
            cut = ev
    return out


def _whole_unit(surf, opening, cut, closing, axis):
    f1 = surf.transition(opening.face, opening.side).face
    faces = (f1,)
    if cut is not None:
        faces = (f1, surf.transition(cut.face, cut.side).face)
    lo = surf.edge_label(opening.face, opening.side)
    hi = surf.edge_label(closing.face, closing.side)
    broken = cut is not None
    if axis == "v":
        kind = "-up" if broken else "up"
    else:
        kind = "+right" if broken else "right"
    label = _unit_label(surf, lo, hi, broken, axis == "v")
    cut_label = surf.edge_label(cut.face, cut.side) if cut is not None else None
    return f1, UnitType(kind, label, faces, cut_label)


@dataclass(frozen=True)
class DetourCrossing:
    """One pass of a line through a street, boundary to boundary."""

    street: Street
    span: tuple  # (first, last) indices into the event list, inclusive
    entry: Optional[tuple]  # (face, side, param); None for a mid-street start
    exit: Optional[tuple]  # None when the trace stops mid-street
    fraction: QuadRat  # share of the street width covered, in (0, 1]

    @property
    def whole(self) -> bool:
        return self.fraction == _ONE

    @property
    def shortcut(self) -> tuple:
        """Chord endpoints on the street boundary."""
        return self.entry, self.exit


def detour_decompose(t: Trajectory, orientation: Optional[str] = None):
    """Split a trace into successive street crossings.

    Returns (crossings, m): the street passes in order, whole ones with
    fraction 1 and a mid-street start or end contributing a fractional
    pass, plus m, the exact total of street widths crossed.  The trace
    arclength is m * sqrt(1 + slope^2) in street side lengths.
    """
    axis = orientation or t.orientation
    if axis not in ("v", "h"):
        raise ValueError("orientation must be 'v' or 'h'")
    if t.orientation is not None and axis != t.orientation:
        raise ValueError(f"slope does not match orientation {axis!r}")
    surf = t.surface
    trans = ("L", "R") if axis == "v" else ("B", "T")
    street_side = "T" if axis == "v" else "R"
    adv = (lambda ev: ev.dx) if axis == "v" else (lambda ev: ev.dy)
    total = t.result.dx if axis == "v" else t.result.dy

    bounds = [(i, ev) for i, ev in enumerate(t.events) if ev.side in trans]
    if not bounds:
        raise ValueError("the trace never reaches a street boundary")

    st = t.start
    if axis == "v":
        on_edge = st.x == _ZERO or st.x == _ONE
        entry0 = (st.face, "L" if st.x == _ZERO else "R", st.y) if on_edge else None
    else:
        on_edge = st.y == _ZERO or st.y == _ONE
        entry0 = (st.face, "B" if st.y == _ZERO else "T", st.x) if on_edge else None

    out = []
    prev_i, prev_adv, prev_entry = 0, _ZERO, entry0
    prev_face = st.face
    for i, ev in bounds:
        frac = adv(ev) - prev_adv
        if frac.sign() == 0 and not out:
            # started on the far boundary; the immediate event renormalizes
            prev_i, prev_entry = i + 1, (ev.face, ev.side, ev.param)
            prev_face = surf.transition(ev.face, ev.side).face
            continue
        out.append(
            DetourCrossing(
                street=surf.street(prev_face, street_side),
                span=(prev_i, i),
                entry=prev_entry,
                exit=(ev.face, ev.side, ev.param),
                fraction=frac,
            )
        )
        prev_i, prev_adv = i + 1, adv(ev)
        prev_entry = (ev.face, ev.side, ev.param)
        prev_face = surf.transition(ev.face, ev.side).face
    tail = total - prev_adv
    if tail.sign() > 0:
        out.append(
            DetourCrossing(
                street=surf.street(prev_face, street_side),
                span=(prev_i, len(t.events) - 1),
                entry=prev_entry,
                exit=None,
                fraction=tail,
            )
        )
    return out, total


@dataclass(frozen=True)
class ChainSegment:
    """One level of a shortcut chain."""

    level: int
    orientation: str  # "v" | "h"
    alpha: QuadRat  # steepness of this level, > 1
    m: QuadRat  # street widths crossed
    trajectory: Trajectory

    @property
    def start(self) -> PhasePoint:
        return self.trajectory.start

    @property
    def length_sq(self) -> QuadRat:
        """Exact squared arclength, m^2 (1 + alpha^2)."""
        return self.m * self.m * (_ONE + self.alpha * self.alpha)

    @property
    def length(self) -> float:
        return math.sqrt(float(self.length_sq))


@dataclass(frozen=True)
class ShortlineChain:
    surface: Surface
    alphas: tuple  # steepness at each level
    ms: tuple  # street widths crossed at each level
    segments: tuple

    @property
    def depth(self) -> int:
        return len(self.segments) - 1

    def crossing_set(self, level: int, family: str) -> frozenset:
        """Canonical (edge, coordinate) pairs one level cuts on an edge
        family, 'v' or 'h'."""
        sides = ("L", "R") if family == "v" else ("B", "T")
        surf = self.surface
        out = set()
        for ev in self.segments[level].trajectory.events:
            if ev.side in sides:
                out.add(surf.canonical_coord(ev.face, ev.side, ev.param))
        return frozenset(out)

    def same_edge_cutting(self, level: int) -> bool:
        """Whether this level and the next cut their shared edge family in
        identical point sets: a steep level shares its vertical-edge points
        with the following flat one, and a flat level its horizontal
        points with the steep one after it."""
        family = "v" if self.segments[level].orientation == "v" else "h"
        return self.crossing_set(level, family) == self.crossing_set(level + 1, family)


def build_chain(
    surface: Surface,
    start: PhasePoint,
    alpha,
    m0,
    depth: int,
    *,
    verify: bool = False,
) -> ShortlineChain:
    """Trace the shortcut chain of a steep line from a face corner.

    Level 0 runs with slope `alpha` from `start` until it has crossed
    `m0` street widths; level j+1 reruns from the same corner with the
    digit-shifted slope, and its crossing count satisfies
    alpha_{j+1} m_{j+1} = m_j exactly.  Orientation alternates steep and
    flat.  With `verify` every consecutive pair is checked to cut the
    shared edge family in the same point set.
    """
    alpha = QuadRat.of(alpha)
    m0 = QuadRat.of(m0)
    if not alpha > _ONE:
        raise ValueError("the starting slope must exceed 1")
    if m0.sign() <= 0:
        raise ValueError("the crossing budget must be positive")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    sx, sy = QuadRat.of(start.x), QuadRat.of(start.y)
    if (sx != _ZERO and sx != _ONE) or (sy != _ZERO and sy != _ONE):
        raise ValueError("the chain must start at a face corner")
    divisor = surface.street_lcm() if surface.is_finite else 2

    alphas = [alpha]
    ms = [m0]
    segs = []
    for j in range(depth + 1):
        sig = alphas[j]
        if j < depth:
            a = sig.floor()
            if a % divisor:
                warnings.warn(
                    f"digit {a} at level {j} is not divisible by {divisor}",
                    DigitParityWarning,
                    stacklevel=2,
                )
            rem = sig - a
            if rem.sign() == 0:
                raise ValueError(f"rational slope: the chain stops at level {j}")
            alphas.append(rem.inverse())
            ms.append(ms[j] * rem)
        vx, vy = (_ONE, sig) if j % 2 == 0 else (sig, _ONE)
        res = trace(surface, start.face, sx, sy, vx, vy, max_time=ms[j])
        if res.status != "budget":
            raise RuntimeError(f"level {j} ended {res.status} before its budget")
        segs.append(
            ChainSegment(
                level=j,
                orientation="v" if j % 2 == 0 else "h",
                alpha=sig,
                m=ms[j],
                trajectory=Trajectory(surface, res),
            )
        )
    chain = ShortlineChain(surface, tuple(alphas), tuple(ms), tuple(segs))
    if verify:
        for j in range(depth):
            if not chain.same_edge_cutting(j):
                raise RuntimeError(f"levels {j} and {j + 1} disagree on shared edges")
    return chain


def qualifying_levels(chain: ShortlineChain, bound) -> list:
    """Levels l whose crossing count first drops to `bound` or below.

    The counts decrease strictly, so at most one level qualifies; every
    qualifying index is returned rather than assuming uniqueness.
    """
    b = QuadRat.of(bound)
    out = []
    for level in range(1, len(chain.ms)):
        if not chain.ms[level] > b and chain.ms[level - 1] > b:
            out.append(level)
    return out


@dataclass(frozen=True)
class CensusReport:
    """Which unit patterns one chain level cuts, face by face."""

    level: int
    orientation: str
    m: QuadRat
    per_face: dict  # face -> frozenset of unit tags
    broken: frozenset  # tags of the broken units present
    expected_broken: frozenset  # every broken tag the surface supports
    broken_faces: frozenset  # faces some broken unit passes through

    @property
    def all_corner_cuts(self) -> bool:
        """True when every supported broken pattern occurs."""
        return self.expected_broken <= self.broken


def _expected_broken(surf, axis: str) -> frozenset:
    """Every broken-unit tag a surface supports in one orientation: one per
    transverse edge, read off the labels around it."""
    if not surf.is_finite:
        return frozenset()
    out = set()
    side = "R" if axis == "v" else "T"
    lo_side, hi_side = ("B", "T") if axis == "v" else ("L", "R")
    for f in surf.faces:
        g = surf.transition(f, side).face
        lo = surf.edge_label(f, lo_side)
        hi = surf.edge_label(g, hi_side)
        lab = _unit_label(surf, lo, hi, True, axis == "v")
        out.add(lab if lab is not None else ("-up" if axis == "v" else "+right"))
    return frozenset(out)


def corner_cut_census(chain: ShortlineChain, level: int) -> CensusReport:
    """Tally the unit patterns of one chain level.

    Broken units are attributed to every face they pass through.  The
    level shows all corner cuts when each broken pattern the surface
    supports in its orientation occurs at least once.
    """
    seg = chain.segments[level]
    units = classify_units(seg.trajectory)
    per: dict = {}
    broken = set()
    broken_faces = set()
    for _, u in units:
        tag = u.label or u.kind
        for g in dict.fromkeys(u.faces):
            per.setdefault(g, set()).add(tag)
        if u.broken:
            broken.add(tag)
            broken_faces.update(u.faces)
    return CensusReport(
        level=level,
        orientation=seg.orientation,
        m=seg.m,
        per_face={f: frozenset(v) for f, v in per.items()},
        broken=frozenset(broken),
        expected_broken=_expected_broken(chain.surface, seg.orientation),
        broken_faces=frozenset(broken_faces),
    )


def _split_label(surf, label: str):
    core = label[:-1] if label.endswith("*") else label
    labs = {surf.edge_label(f, s) for f in surf.faces for s in _SIDES}
    labs.discard(None)
    for lo in labs:
        if core.startswith(lo) and core[len(lo):] in labs:
            return lo, core[len(lo):]
    raise ValueError(f"cannot read unit pattern {label!r}")


def ancestor_units(
    surface: Surface,
    unit,
    coarse_alpha,
    rules: Iterable = ("extension", "replacement"),
    *,
    samples: int = 32,
) -> set:
    """Unit patterns the coarser line meets while detouring the street
    that a given finer unit shortcuts.

    The finer unit runs between two boundary points of a street; the
    coarser line enters the street at the first point, winds across, and
    leaves at the second.  The `extension` rule contributes the two
    partial units at the ends of the detour, completed backwards and
    forwards; the `replacement` rule contributes the whole units between
    them.  The set does not depend on where the unit sits on its start
    edge, which is checked by sampling placements; multiplicity is
    collapsed.
    """
    label = unit.label if isinstance(unit, UnitType) else str(unit)
    if not label:
        raise ValueError("ancestry needs a labeled unit pattern")
    rules = frozenset(rules)
    if not rules <= {"extension", "replacement"}:
        bad = sorted(rules - {"extension", "replacement"})
        raise ValueError(f"unknown rules: {bad}")
    sigma = QuadRat.of(coarse_alpha)
    if not sigma > _ONE:
        raise ValueError("the coarse slope must exceed 1")
    rem = sigma - sigma.floor()
    if rem.sign() == 0:
        raise ValueError("integer slope has no finer level")
    fine = rem.inverse()

    lo, hi = _split_label(surface, label)
    incid = [(f, s) for f in surface.faces for s in _SIDES
             if surface.edge_label(f, s) == lo]
    vertical_unit = any(s in ("B", "T") for _, s in incid)
    entry_side = "B" if vertical_unit else "L"
    faces0 = [f for f, s in incid if s == entry_side]
    if len(faces0) != 1:
        raise ValueError(f"start edge {lo!r} is not a unique unit entry")
    f0 = faces0[0]

    found = None
    hits = 0
    for k in range(1, samples):
        got = _ancestor_sample(
            surface, f0, QuadRat.of(Fraction(k, samples)),
            vertical_unit, sigma, fine, lo, label, rules,
        )
        if got is None:
            continue
        hits += 1
        if found is None:
            found = got
        elif found != got:
            raise RuntimeError(f"ancestry of {label} depends on placement")
    if not hits:
        raise ValueError(f"pattern {label!r} never occurs from edge {lo!r}")
    return set(found)


def _ancestor_sample(surf, f0, p, vertical_unit, sigma, fine, lo, label, rules):
    """Ancestors seen from one placement, or None when the placement does
    not realize the requested pattern."""
    if vertical_unit:
        x0, y0 = p, _ZERO
        v_fine, v_coarse = (_ONE, fine), (sigma, _ONE)
        end_side, inner_side, back_side = "T", "R", "L"
        fine_kw, fwd_kw = {"max_dy": _ONE}, {"max_dy": QuadRat.of(2)}
    else:
        x0, y0 = _ZERO, p
        v_fine, v_coarse = (fine, _ONE), (_ONE, sigma)
        end_side, inner_side, back_side = "R", "T", "B"
        fine_kw, fwd_kw = {"max_dx": _ONE}, {"max_dx": QuadRat.of(2)}

    probe = trace(surf, f0, x0, y0, *v_fine, **fine_kw)
    ends = [ev for ev in probe.events if ev.side == end_side]
    if not ends:
        return None
    u_end = ends[0]
    cuts = [ev for ev in probe.events if ev.index < u_end.index]
    got = _unit_label(
        surf, lo, surf.edge_label(u_end.face, end_side), bool(cuts), vertical_unit
    )
    if got != label:
        return None

    fwd = trace(surf, f0, x0, y0, *v_coarse, **fwd_kw)
    evs = fwd.events
    i_end = next((i for i, ev in enumerate(evs) if ev.side == end_side), None)
    if i_end is None:
        return None
    inner = [ev for ev in evs[:i_end] if ev.side == inner_side]
    after = next((ev for ev in evs[i_end + 1:] if ev.side == inner_side), None)
    if not inner or after is None:
        return None

    # the detour has to leave the street exactly where the unit ends
    exit_ev = evs[i_end]
    if surf.canonical_coord(exit_ev.face, end_side, exit_ev.param) != surf.canonical_coord(
        u_end.face, end_side, u_end.param
    ):
        raise RuntimeError("detour exit drifted off the unit endpoint")

    back = trace(surf, f0, x0, y0, -v_coarse[0], -v_coarse[1], max_events=4)
    opener = next((ev for ev in back.events if ev.side == back_side), None)
    if opener is None:
        return None

    out_vertical = not vertical_unit

    def unit_of(lo_lab, hi_lab, cut):
        broken = cut is not None
        if out_vertical:
            kind = "-up" if broken else "up"
        else:
            kind = "+right" if broken else "right"
        return UnitType(kind, _unit_label(surf, lo_lab, hi_lab, broken, out_vertical), (), cut)

    picked = []
    if "extension" in rules:
        picked.append(
            unit_of(
                surf.edge_label(opener.face, back_side),
                surf.edge_label(inner[0].face, inner_side),
                lo,
            )
        )
        picked.append(
            unit_of(
                surf.edge_label(inner[-1].face, inner_side),
                surf.edge_label(after.face, inner_side),
                surf.edge_label(exit_ev.face, end_side),
            )
        )
    if "replacement" in rules:
        for a, b in zip(inner, inner[1:]):
            picked.append(
                unit_of(
                    surf.edge_label(a.face, inner_side),
                    surf.edge_label(b.face, inner_side),
                    None,
                )
            )
    return frozenset(picked)


@dataclass(frozen=True)
class EdgeInterval:
    face: object
    side: str
    lo: QuadRat
    hi: QuadRat

    @property
    def length(self) -> QuadRat:
        return self.hi - self.lo


def max_free_interval(t: Trajectory, edges="v"):
    """Longest crossing-free open interval on the scoped edges.

    `edges` is 'v', 'h', or an iterable of (face, side) pairs; edge
    endpoints bound the gaps, and an uncrossed edge counts as one whole
    gap.  Returns (EdgeInterval, length) with the interval in canonical
    edge coordinates; ties break on canonical edge order.
    """
    surf = t.surface
    if edges in ("v", "h"):
        if not surf.is_finite:
            raise ValueError("scope 'v'/'h' needs a finite surface")
        sides = ("L", "R") if edges == "v" else ("B", "T")
        scope = {surf.canonical_edge(f, s) for f in surf.faces for s in sides}
    else:
        scope = {surf.canonical_edge(f, s) for f, s in edges}
    if not scope:
        raise ValueError("empty edge scope")

    pts: dict = {e: [] for e in scope}
    for ev in t.events:
        edge, coord = surf.canonical_coord(ev.face, ev.side, ev.param)
        if edge in pts:
            pts[edge].append(coord)

    best = None
    for edge in sorted(pts, key=repr):
        cuts = [_ZERO] + sorted(set(pts[edge])) + [_ONE]
        for a, b in zip(cuts, cuts[1:]):
            if best is None or b - a > best[2]:
                best = (edge, (a, b), b - a)
    (face, side), (lo, hi), length = best
    return EdgeInterval(face, side, lo, hi), length


def _pair_quad(pair, d) -> QuadRat:
    a, b, m = pair
    return QuadRat(Fraction(a, m), Fraction(b, m), d)


def free_gap_report(surface: Surface, alpha, m0: int, *, start=None, edges="v") -> dict:
    """Exact maximum crossing-free edge gap of a long steep line.

    Runs the integer trace kernel from a face corner for `m0` whole street
    widths, bins every scoped edge point, locates the widest gap with
    scaled 256-bit integer keys, and certifies the winner exactly.  The
    report keeps exact values as QuadRats alongside float renderings.
    """
    alpha = QuadRat.of(alpha)
    if start is None:
        start = PhasePoint(min(surface.faces, key=repr), _ZERO, _ZERO, _ONE, alpha)
    rec: list = []
    res = fast_trace(
        surface, start.face, start.x, start.y, start.vx, start.vy,
        max_dx=m0, record=rec,
    )
    if res.status != "budget":
        raise RuntimeError(f"trace ended {res.status} before {m0} crossings")

    sides = ("L", "R") if edges == "v" else ("B", "T")
    bins: dict = {}
    for f in surface.faces:
        for s in sides:
            bins.setdefault(surface.canonical_edge(f, s), [])
    for face, side, a, b, m in rec:
        if side not in sides:
            continue
        edge = surface.canonical_edge(face, side)
        if (face, side) != edge and surface.transition(face, side).flip:
            a, b = m - a, -b
        bins[edge].append((a, b, m))

    d = alpha.d
    K = 1 << 128
    S = math.isqrt(d * K * K) if d else 0

    def key(pair):
        a, b, m = pair
        return (a * K + b * S) // m

    best = None
    for edge in sorted(bins, key=repr):
        spots = sorted({(0, 0, 1), (1, 0, 1)} | set(bins[edge]), key=key)
        wide = sorted(
            range(len(spots) - 1),
            key=lambda i: key(spots[i + 1]) - key(spots[i]),
            reverse=True,
        )[:3]
        for i in wide:  # certify the key-space candidates exactly
            lo = _pair_quad(spots[i], d)
            hi = _pair_quad(spots[i + 1], d)
            if best is None or hi - lo > best[3]:
                best = (edge, lo, hi, hi - lo)

    (eface, eside), lo, hi, gap = best
    length = float(m0) * math.sqrt(float(_ONE + alpha * alpha))
    return {
        "slope": alpha,
        "crossings": m0,
        "events": res.crossings,
        "edge": {"face": eface, "side": eside, "label": surface.edge_label(eface, eside)},
        "gap": {"value": gap, "float": float(gap), "lo": lo, "hi": hi},
        "length": length,
        "gap_times_length": float(gap) * length,
    }
