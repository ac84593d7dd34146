"""Exact straight-line flow on surfaces and billiard flow on regions.

Positions are face-local (x, y) with QuadRat coordinates, so every edge
crossing, corner hit and state comparison is exact.  Velocity components are
QuadRats too; gluings with rotation tags turn the velocity by multiples of
90 degrees, which keeps it in the same quadratic field.

Conventions: a trajectory that reaches a face corner stops with status
"singular" (cone points make the continuation ambiguous, and corner hits are
exactly detectable here).  Periodicity means the full phase state -- face,
position, velocity -- repeats exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .exactnum import MixedFieldError, QuadRat
from .region import Region
from .surface import Surface

_ZERO = QuadRat(0)
_ONE = QuadRat(1)


def _rot_vec(vx: QuadRat, vy: QuadRat, rot: int):
    for _ in range((rot // 90) % 4):
        vx, vy = -vy, vx
    return vx, vy


@dataclass(frozen=True)
class PhasePoint:
    face: object
    x: QuadRat
    y: QuadRat
    vx: QuadRat
    vy: QuadRat

    def key(self):
        return (repr(self.face), self.x, self.y, self.vx, self.vy)


@dataclass
class Event:
    index: int
    face: object
    side: str
    param: QuadRat  # crossing coordinate on the exit side, in (0, 1)
    time: QuadRat  # cumulative flow time
    dx: QuadRat  # cumulative |x| advance
    dy: QuadRat


@dataclass
class TraceResult:
    status: str  # budget | singular | periodic | escaped | stopped
    start: PhasePoint
    final: PhasePoint
    crossings: int
    time: QuadRat
    dx: QuadRat
    dy: QuadRat
    events: list = field(default_factory=list)
    period: Optional[int] = None  # crossings in one period, when periodic

    @property
    def closed(self) -> bool:
        return self.status == "periodic"


def trace(
    surface: Surface,
    face,
    x,
    y,
    vx,
    vy,
    *,
    max_events: Optional[int] = None,
    max_time=None,
    max_dx=None,
    max_dy=None,
    keep_events: bool = True,
    on_crossing: Optional[Callable] = None,
    detect_period: bool = False,
    stop_face: Optional[Callable] = None,
) -> TraceResult:
    """Flow from a face-local point until a budget, corner or repeat.

    Budgets are inclusive: the crossing that would push a cumulative total
    strictly past ``max_time``/``max_dx``/``max_dy`` is not taken.
    """
    x, y, vx, vy = map(QuadRat.of, (x, y, vx, vy))
    if vx.sign() == 0 and vy.sign() == 0:
        raise ValueError("zero velocity")
    if max_time is not None:
        max_time = QuadRat.of(max_time)
    if max_dx is not None:
        max_dx = QuadRat.of(max_dx)
    if max_dy is not None:
        max_dy = QuadRat.of(max_dy)

    start = PhasePoint(face, x, y, vx, vy)
    t_total = _ZERO
    dx_total = _ZERO
    dy_total = _ZERO
    events: list = []
    seen: dict = {}
    n = 0
    status = "budget"
    period = None

    while True:
        if detect_period:
            key = (repr(face), x, y, vx, vy)
            if key in seen:
                status = "periodic"
                period = n - seen[key]
                break
            seen[key] = n
        if max_events is not None and n >= max_events:
            status = "budget"
            break

        sx = vx.sign()
        sy = vy.sign()
        tx = None
        if sx > 0:
            tx = (_ONE - x) / vx
        elif sx < 0:
            tx = x / (-vx)
        ty = None
        if sy > 0:
            ty = (_ONE - y) / vy
        elif sy < 0:
            ty = y / (-vy)

        if tx is not None and (ty is None or tx < ty):
            t, axis = tx, "x"
        elif ty is not None and (tx is None or ty < tx):
            t, axis = ty, "y"
        else:
            # simultaneous: the segment ends exactly on a corner
            t = tx
            x = x + t * vx
            y = y + t * vy
            t_total = t_total + t
            dx_total = dx_total + abs(t * vx)
            dy_total = dy_total + abs(t * vy)
            status = "singular"
            break

        nx = x + t * vx
        ny = y + t * vy
        seg_dx = abs(t * vx)
        seg_dy = abs(t * vy)
        new_t = t_total + t
        new_dx = dx_total + seg_dx
        new_dy = dy_total + seg_dy
        if max_time is not None and new_t > max_time:
            # stop mid-segment at the exact time budget
            rem = max_time - t_total
            x = x + rem * vx
            y = y + rem * vy
            t_total = max_time
            dx_total = dx_total + abs(rem * vx)
            dy_total = dy_total + abs(rem * vy)
            status = "budget"
            break
        if max_dx is not None and new_dx > max_dx:
            status = "budget"
            break
        if max_dy is not None and new_dy > max_dy:
            status = "budget"
            break

        if axis == "x":
            side = "R" if sx > 0 else "L"
            param = ny
        else:
            side = "T" if sy > 0 else "B"
            param = nx
        if param.sign() <= 0 or (param - _ONE).sign() >= 0:
            # exactly on a corner of the crossed side
            x, y, t_total = nx, ny, new_t
            dx_total, dy_total = new_dx, new_dy
            status = "singular"
            break

        t_total, dx_total, dy_total = new_t, new_dx, new_dy
        n += 1
        ev = Event(n, face, side, param, t_total, dx_total, dy_total)
        if keep_events:
            events.append(ev)
        if on_crossing is not None:
            on_crossing(ev)

        tr = surface.transition(face, side)
        p2 = _ONE - param if tr.flip else param
        face = tr.face
        if tr.side == "L":
            x, y = _ZERO, p2
        elif tr.side == "R":
            x, y = _ONE, p2
        elif tr.side == "B":
            x, y = p2, _ZERO
        else:
            x, y = p2, _ONE
        if tr.rot:
            vx, vy = _rot_vec(vx, vy, tr.rot)
        if stop_face is not None and stop_face(face):
            status = "stopped"
            break

    return TraceResult(
        status=status,
        start=start,
        final=PhasePoint(face, x, y, vx, vy),
        crossings=n,
        time=t_total,
        dx=dx_total,
        dy=dy_total,
        events=events,
        period=period,
    )


def retrace_back(surface: Surface, result: TraceResult) -> PhasePoint:
    """Flow backwards from the endpoint for the exact same time."""
    f = result.final
    back = trace(
        surface, f.face, f.x, f.y, -f.vx, -f.vy,
        max_time=result.time, max_events=result.crossings + 2, keep_events=False,
    )
    b = back.final
    return PhasePoint(b.face, b.x, b.y, -b.vx, -b.vy)


# ---------------------------------------------------------------------------
# integer kernel


def _pair_of(v: QuadRat, d: int) -> tuple:
    """(a, b, m) with v == (a + b*sqrt(d))/m, m > 0."""
    if v.d and v.d != d:
        raise MixedFieldError(f"cannot mix sqrt({v.d}) with sqrt({d})")
    m = math.lcm(v.p.denominator, v.q.denominator)
    return (v.p.numerator * (m // v.p.denominator),
            v.q.numerator * (m // v.q.denominator), m)


def _pair_sign(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) by integer comparison."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return 1 if b > 0 else -1
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    aa, bb = a * a, b * b * d
    if aa == bb:
        return 0
    return (1 if a > 0 else -1) if aa > bb else (1 if b > 0 else -1)


def _padd(a1, b1, m1, a2, b2, m2) -> tuple:
    """Reduced sum of two integer pairs."""
    if m1 == m2:
        a, b, m = a1 + a2, b1 + b2, m1
    else:
        g = math.gcd(m1, m2)
        k1, k2 = m2 // g, m1 // g
        a, b, m = a1 * k1 + a2 * k2, b1 * k1 + b2 * k2, m1 * k1
    g = math.gcd(a, b, m)
    if g > 1:
        return a // g, b // g, m // g
    return a, b, m


def fast_trace(
    surface: Surface,
    face,
    x,
    y,
    vx,
    vy,
    *,
    max_events: Optional[int] = None,
    max_dx=None,
    max_dy=None,
    detect_period: bool = False,
    record: Optional[list] = None,
) -> TraceResult:
    """Integer-kernel variant of :func:`trace` for long runs.

    Produces the same crossing sequence and statuses as ``trace`` but works
    on integer pairs ``(a + b*sqrt(d))/m`` instead of stacked Fractions --
    roughly an order of magnitude faster per event.  Crossing coordinates
    stay on a bounded-denominator lattice (the return map of a straight-line
    flow to the edges is an exchange of finitely many intervals, so only
    finitely many translation amounts ever mix), hence the pairs never grow
    past a few machine words.

    Requires all coordinates and both velocity components in one quadratic
    field.  ``record``, when given, is appended one ``(face, side, a, b, m)``
    tuple per crossing; Event objects are not built (``events`` stays empty,
    ``max_time``/``on_crossing``/``stop_face`` are not supported here).
    """
    x, y, vx, vy = map(QuadRat.of, (x, y, vx, vy))
    sx, sy = vx.sign(), vy.sign()
    if sx == 0 and sy == 0:
        raise ValueError("zero velocity")
    ds = {v.d for v in (x, y, vx, vy) if v.d}
    if len(ds) > 1:
        raise MixedFieldError(f"mixed radicands {sorted(ds)}")
    d = ds.pop() if ds else 0
    start = PhasePoint(face, x, y, vx, vy)
    gcd = math.gcd

    # velocity enters only through its signs, the two slope magnitudes and
    # the two inverse speeds; 90-degree turns permute these
    R = _pair_of(abs(vy / vx), d) if sx else (0, 0, 1)
    I = _pair_of(abs(vx / vy), d) if sy else (0, 0, 1)
    ux = _pair_of(abs(vx).inverse(), d) if sx else (0, 0, 1)
    uy = _pair_of(abs(vy).inverse(), d) if sy else (0, 0, 1)
    xa, xb, xm = _pair_of(x, d)
    ya, yb, ym = _pair_of(y, d)
    dx = dy = tt = (0, 0, 1)
    bx = _pair_of(QuadRat.of(max_dx), d) if max_dx is not None else None
    by = _pair_of(QuadRat.of(max_dy), d) if max_dy is not None else None

    n = 0
    status = "budget"
    period = None
    seen: dict = {}
    transition = surface.transition

    while True:
        if detect_period:
            key = (face, xa, xb, xm, ya, yb, ym, sx, sy, R)
            prev = seen.get(key)
            if prev is not None:
                status = "periodic"
                period = n - prev
                break
            seen[key] = n
        if max_events is not None and n >= max_events:
            break

        if sx > 0:
            wxa, wxb, wxm = xm - xa, -xb, xm
        elif sx < 0:
            wxa, wxb, wxm = xa, xb, xm
        if sy > 0:
            wya, wyb, wym = ym - ya, -yb, ym
        elif sy < 0:
            wya, wyb, wym = ya, yb, ym

        if sx == 0:
            hit_x = False
        elif sy == 0:
            hit_x = True
        else:
            ra, rb, rm = R
            pa = wxa * ra + wxb * rb * d
            pb = wxa * rb + wxb * ra
            pm = wxm * rm
            c = _pair_sign(pa * wym - wya * pm, pb * wym - wyb * pm, d)
            if c == 0:
                # both edges at once: the segment ends on a face corner
                xa, xb, xm = (1, 0, 1) if sx > 0 else (0, 0, 1)
                ya, yb, ym = (1, 0, 1) if sy > 0 else (0, 0, 1)
                dx = _padd(*dx, wxa, wxb, wxm)
                dy = _padd(*dy, wya, wyb, wym)
                sa, sb, sm = ux
                tt = _padd(*tt, wxa * sa + wxb * sb * d,
                           wxa * sb + wxb * sa, wxm * sm)
                status = "singular"
                break
            hit_x = c < 0

        if hit_x:
            # cross the vertical edge; the segment spans w_x horizontally
            # and w_x * |vy/vx| vertically
            ra, rb, rm = R
            pa = wxa * ra + wxb * rb * d
            pb = wxa * rb + wxb * ra
            pm = wxm * rm
            g = gcd(pa, pb, pm)
            if g > 1:
                pa, pb, pm = pa // g, pb // g, pm // g
            ndx = _padd(*dx, wxa, wxb, wxm)
            ndy = _padd(*dy, pa, pb, pm)
            sa, sb, sm = ux
            ntt = _padd(*tt, wxa * sa + wxb * sb * d,
                        wxa * sb + wxb * sa, wxm * sm)
            if bx is not None and _pair_sign(
                    ndx[0] * bx[2] - bx[0] * ndx[2],
                    ndx[1] * bx[2] - bx[1] * ndx[2], d) > 0:
                break
            if by is not None and _pair_sign(
                    ndy[0] * by[2] - by[0] * ndy[2],
                    ndy[1] * by[2] - by[1] * ndy[2], d) > 0:
                break
            g = gcd(ym, pm)
            k1, k2 = pm // g, ym // g
            na = ya * k1 + sy * pa * k2
            nb = yb * k1 + sy * pb * k2
            nm = ym * k1
            g = gcd(na, nb, nm)
            if g > 1:
                na, nb, nm = na // g, nb // g, nm // g
            side = "R" if sx > 0 else "L"
            if _pair_sign(na, nb, d) <= 0 or _pair_sign(na - nm, nb, d) >= 0:
                xa, xb, xm = (1, 0, 1) if sx > 0 else (0, 0, 1)
                ya, yb, ym = na, nb, nm
                dx, dy, tt = ndx, ndy, ntt
                status = "singular"
                break
            dx, dy, tt = ndx, ndy, ntt
        else:
            ia, ib, im = I
            pa = wya * ia + wyb * ib * d
            pb = wya * ib + wyb * ia
            pm = wym * im
            g = gcd(pa, pb, pm)
            if g > 1:
                pa, pb, pm = pa // g, pb // g, pm // g
            ndx = _padd(*dx, pa, pb, pm)
            ndy = _padd(*dy, wya, wyb, wym)
            sa, sb, sm = uy
            ntt = _padd(*tt, wya * sa + wyb * sb * d,
                        wya * sb + wyb * sa, wym * sm)
            if bx is not None and _pair_sign(
                    ndx[0] * bx[2] - bx[0] * ndx[2],
                    ndx[1] * bx[2] - bx[1] * ndx[2], d) > 0:
                break
            if by is not None and _pair_sign(
                    ndy[0] * by[2] - by[0] * ndy[2],
                    ndy[1] * by[2] - by[1] * ndy[2], d) > 0:
                break
            g = gcd(xm, pm)
            k1, k2 = pm // g, xm // g
            na = xa * k1 + sx * pa * k2
            nb = xb * k1 + sx * pb * k2
            nm = xm * k1
            g = gcd(na, nb, nm)
            if g > 1:
                na, nb, nm = na // g, nb // g, nm // g
            side = "T" if sy > 0 else "B"
            if _pair_sign(na, nb, d) <= 0 or _pair_sign(na - nm, nb, d) >= 0:
                ya, yb, ym = (1, 0, 1) if sy > 0 else (0, 0, 1)
                xa, xb, xm = na, nb, nm
                dx, dy, tt = ndx, ndy, ntt
                status = "singular"
                break
            dx, dy, tt = ndx, ndy, ntt

        n += 1
        if record is not None:
            record.append((face, side, na, nb, nm))

        tr = transition(face, side)
        if tr.flip:
            na, nb = nm - na, -nb
        face = tr.face
        es = tr.side
        if es == "L":
            xa, xb, xm = 0, 0, 1
            ya, yb, ym = na, nb, nm
        elif es == "R":
            xa, xb, xm = 1, 0, 1
            ya, yb, ym = na, nb, nm
        elif es == "B":
            ya, yb, ym = 0, 0, 1
            xa, xb, xm = na, nb, nm
        else:
            ya, yb, ym = 1, 0, 1
            xa, xb, xm = na, nb, nm
        rot = tr.rot
        if rot:
            vx, vy = _rot_vec(vx, vy, rot)
            for _ in range((rot // 90) % 4):
                sx, sy = -sy, sx
                R, I = I, R
                ux, uy = uy, ux

    return TraceResult(
        status=status,
        start=start,
        final=PhasePoint(
            face,
            QuadRat(Fraction(xa, xm), Fraction(xb, xm), d),
            QuadRat(Fraction(ya, ym), Fraction(yb, ym), d),
            vx, vy,
        ),
        crossings=n,
        time=QuadRat(Fraction(tt[0], tt[2]), Fraction(tt[1], tt[2]), d),
        dx=QuadRat(Fraction(dx[0], dx[2]), Fraction(dx[1], dx[2]), d),
        dy=QuadRat(Fraction(dy[0], dy[2]), Fraction(dy[1], dy[2]), d),
        events=[],
        period=period,
    )


# ---------------------------------------------------------------------------
# billiards


@dataclass
class BilliardResult:
    status: str
    cells: int  # distinct cells visited
    distance: float  # sup-norm distance reached, in original units
    crossings: int
    final_cell: tuple
    trace: TraceResult


def trace_billiard(
    region: Region,
    x,
    y,
    vx,
    vy,
    *,
    max_events: int = 10000,
    escape_bound=None,
    detect_period: bool = False,
) -> BilliardResult:
    """Billiard flow in a region via its reflection unfolding.

    (x, y) are absolute region coordinates; the flow reflects at walls and
    stops when the sup-norm cell distance from the start exceeds
    ``escape_bound`` (status "escaped") or a budget/corner ends it.
    """
    x, y = QuadRat.of(x), QuadRat.of(y)
    cx, cy = x.floor(), y.floor()
    if not region.contains((cx, cy)):
        raise ValueError(f"start cell {(cx, cy)} is not in the region")
    start_cell = (cx, cy)
    visited = {start_cell}
    best = [0]

    def absolute_cell(face):
        return face[0]

    stop = None
    if escape_bound is not None:
        def stop(face):
            cell = absolute_cell(face)
            visited.add(cell)
            d = max(abs(cell[0] - start_cell[0]), abs(cell[1] - start_cell[1]))
            if d > best[0]:
                best[0] = d
            return d > escape_bound
    else:
        def stop(face):
            cell = absolute_cell(face)
            visited.add(cell)
            d = max(abs(cell[0] - start_cell[0]), abs(cell[1] - start_cell[1]))
            if d > best[0]:
                best[0] = d
            return False

    s = region.four_copy()
    res = trace(
        s, (start_cell, (1, 1)), x - QuadRat(cx), y - QuadRat(cy), vx, vy,
        max_events=max_events, keep_events=False, stop_face=stop,
        detect_period=detect_period,
    )
    status = "escaped" if res.status == "stopped" else res.status
    return BilliardResult(
        status=status,
        cells=len(visited),
        distance=best[0] / region.scale,
        crossings=res.crossings,
        final_cell=absolute_cell(res.final.face),
        trace=res,
    )


def billiard_point(face, x, y) -> tuple:
    """Absolute region coordinates of a four-copy face-local point."""
    (cell, (gx, gy)) = face
    ax = QuadRat(cell[0]) + (x if gx > 0 else _ONE - x)
    ay = QuadRat(cell[1]) + (y if gy > 0 else _ONE - y)
    return ax, ay


# ---------------------------------------------------------------------------
# interval magnification


@dataclass
class ProjectedInterval:
    face: object
    side: str  # horizontal side reached ("T" or "B")
    lo: QuadRat
    hi: QuadRat

    @property
    def length(self) -> QuadRat:
        return self.hi - self.lo


def project_interval(
    surface: Surface,
    face,
    entry_side: str,
    a,
    b,
    slope,
    max_pieces: int = 10000,
) -> list:
    """Flow an interval of a vertical edge to its first horizontal crossings.

    Enter ``face`` through ``entry_side`` ("L" or "R") on the parameter
    interval [a, b], flowing with slope ``slope`` > 0 (velocity (+-1, slope)).
    Returns the image pieces; their total length is exactly (b-a)/slope.
    """
    a, b, slope = QuadRat.of(a), QuadRat.of(b), QuadRat.of(slope)
    if entry_side not in ("L", "R"):
        raise ValueError("entry side must be a vertical side")
    if slope.sign() <= 0:
        raise ValueError("slope must be positive")
    vx0 = _ONE if entry_side == "L" else -_ONE
    x0 = _ZERO if entry_side == "L" else _ONE
    pieces: list = []

    def sample_path(y0):
        """Trace one point; return (exit, margins) or None on a corner hit."""
        fx, x, y = face, x0, y0
        vx, vy = vx0, slope
        eps = 1  # how the vertical-edge crossing parameter moves with y0
        dplus = None  # room for y0 to grow before the path combinatorics change
        dminus = None

        def tighten(up, down):
            nonlocal dplus, dminus
            if dplus is None or up < dplus:
                dplus = up
            if dminus is None or down < dminus:
                dminus = down

        for _ in range(max_pieces):
            res = trace(surface, fx, x, y, vx, vy, max_events=1)
            if res.status == "singular" or not res.events:
                return None
            ev = res.events[0]
            if ev.side in ("T", "B"):
                q = ev.param
                tau = -1 if (vx.sign() > 0) == (eps > 0) else 1
                if tau > 0:
                    tighten((_ONE - q) * slope, q * slope)
                else:
                    tighten(q * slope, (_ONE - q) * slope)
                return (ev.face, ev.side, q, tau, dplus, dminus)
            p = ev.param
            if eps > 0:
                tighten(_ONE - p, p)
            else:
                tighten(p, _ONE - p)
            tr = surface.transition(ev.face, ev.side)
            if tr.rot:
                raise ValueError("interval projection needs a translation surface")
            if tr.flip:
                eps = -eps
            f2 = res.final
            fx, x, y, vx, vy = f2.face, f2.x, f2.y, f2.vx, f2.vy
        raise RuntimeError("interval projection did not reach a horizontal edge")

    todo = [(a, b)]
    guard = 0
    while todo:
        guard += 1
        if guard > max_pieces:
            raise RuntimeError("too many interval pieces")
        lo, hi = todo.pop()
        if (hi - lo).sign() <= 0:
            continue
        mid = (lo + hi) / QuadRat(2)
        got = sample_path(mid)
        if got is None:
            # the midpoint rides a corner line; split off-centre instead
            third = lo + (hi - lo) / QuadRat(3)
            got = sample_path(third)
            if got is None:
                raise RuntimeError("could not find a clean sample point")
            mid = third
        exit_face, exit_side, q, tau, dplus, dminus = got
        lo2 = mid - dminus
        if (lo2 - lo).sign() < 0:
            lo2 = lo
        hi2 = mid + dplus
        if (hi2 - hi).sign() > 0:
            hi2 = hi
        qa = q + QuadRat(tau) * (lo2 - mid) / slope
        qb = q + QuadRat(tau) * (hi2 - mid) / slope
        if (qb - qa).sign() < 0:
            qa, qb = qb, qa
        pieces.append(ProjectedInterval(exit_face, exit_side, qa, qb))
        todo.append((lo, lo2))
        todo.append((hi2, hi))

    total = sum((p.length for p in pieces), _ZERO)
    expect = (b - a) / slope
    assert total == expect, "magnification lost length"
    return pieces
