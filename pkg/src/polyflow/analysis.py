"""Cover times, escape rates, and periodicity probes for straight-line flows.

Everything here is measurement: the flow itself runs on the exact kernels
from :mod:`polyflow.flow`, while gaps, distances, and fits are plain floats.
"""

import math
import random
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .exactnum import QuadRat
from .flow import fast_trace, trace_billiard
from .region import Region, build_wind_tree
from .surface import SIDES


@dataclass(frozen=True)
class DensityReport:
    """Cover lengths T(n) and their log-log slope."""

    n_values: tuple
    cover_lengths: tuple  # arc length per n; None where the budget ran out
    exponent: float
    first_visits: dict  # face -> arc length when the orbit first entered it
    partial: bool = False
    note: str = ""


@dataclass(frozen=True)
class EscapeReport:
    checkpoints: tuple
    diameters: tuple  # restricted P-diameter of the visited set, nondecreasing
    log_fit: dict  # diameter ~ c0 + c1*log T
    power_fit: dict  # diameter ~ coeff * T**exponent


def _fit_exponent(ns, ts):
    pts = [(n, t) for n, t in zip(ns, ts) if t is not None and t > 0]
    if len(pts) < 2:
        return float("nan")
    xs = np.log([p[0] for p in pts])
    ys = np.log([p[1] for p in pts])
    return float(np.polyfit(xs, ys, 1)[0])


def _side_x(side, t):
    if side == "L":
        return 0.0
    if side == "R":
        return 1.0
    return t


def cover_time(s, start, alpha, n_list, scope=None, *,
               max_events: int = 2_000_000, chunk: int = 65536) -> DensityReport:
    """Arc length until no scoped edge keeps a free interval >= 1/n.

    Traces the slope-``alpha`` flow from ``start = (face, x, y)`` and inserts
    every crossing parameter into its canonical edge.  T(n) is the cumulative
    arc length at the crossing that pushes the largest free gap under 1/n;
    once every scoped edge is that full, each point of the scoped faces lies
    within about 1/n of the orbit.  A singularity or an exhausted event
    budget leaves the remaining entries as None with ``partial`` set.
    """
    if isinstance(s, Region):
        s = s.four_copy()
    face0, x0, y0 = start
    alpha = QuadRat.of(alpha)
    if alpha.sign() == 0:
        raise ValueError("alpha must be a nonzero slope")
    fa = float(alpha)
    hyp = math.hypot(1.0, fa)
    rad = math.sqrt(alpha.d) if alpha.d else 0.0

    faces = list(scope) if scope is not None else s.faces
    edges = {s.canonical_edge(f, sd) for f in faces for sd in SIDES}
    params = {e: [] for e in edges}

    n_list = sorted(int(n) for n in n_list)
    if not n_list or n_list[0] < 1:
        raise ValueError("n_list must hold integers >= 1")
    results: dict = {}
    idx = 0
    thr = 1.0 / n_list[0]
    big = {e: 1 for e in edges}  # empty edge has the single gap [0, 1]
    big_total = len(edges)

    def recount():
        nonlocal big_total
        big_total = 0
        for e, ps in params.items():
            prev, cnt = 0.0, 0
            for v in ps:
                if v - prev >= thr:
                    cnt += 1
                prev = v
            if 1.0 - prev >= thr:
                cnt += 1
            big[e] = cnt
            big_total += cnt

    def insert(e, t):
        nonlocal big_total
        ps = params[e]
        i = bisect_left(ps, t)
        if i < len(ps) and ps[i] == t:
            return
        lo = ps[i - 1] if i else 0.0
        hi = ps[i] if i < len(ps) else 1.0
        delta = (t - lo >= thr) + (hi - t >= thr) - (hi - lo >= thr)
        ps.insert(i, t)
        if delta:
            big[e] += delta
            big_total += delta

    arc = 0.0
    entry_x = float(x0)
    first_visits = {face0: 0.0}
    cface, cx, cy = face0, x0, y0
    vx, vy = QuadRat.of(1), alpha
    done = 0
    partial, note = False, ""

    while idx < len(n_list):
        if done >= max_events:
            partial, note = True, "budget"
            break
        rec: list = []
        res = fast_trace(s, cface, cx, cy, vx, vy,
                         max_events=min(chunk, max_events - done), record=rec)
        for f, side, a, b, mden in rec:
            t = (a + b * rad) / mden
            if f not in first_visits:
                first_visits[f] = arc
            arc += (_side_x(side, t) - entry_x) * hyp
            tr = s.transition(f, side)
            if tr.rot:
                raise ValueError("cover_time needs a translation surface")
            entry_x = _side_x(tr.side, 1.0 - t if tr.flip else t)
            ce = s.canonical_edge(f, side)
            if ce in params:
                _, tt = s.canonical_coord(f, side, t)
                insert(ce, tt)
                while big_total == 0:
                    results[n_list[idx]] = arc
                    idx += 1
                    if idx >= len(n_list):
                        break
                    thr = 1.0 / n_list[idx]
                    recount()
            if idx >= len(n_list):
                break
        done += len(rec)
        if idx >= len(n_list):
            break
        if res.status == "singular":
            partial, note = True, "singular"
            break
        fin = res.final
        cface, cx, cy = fin.face, fin.x, fin.y

    covers = tuple(results.get(n) for n in n_list)
    return DensityReport(tuple(n_list), covers, _fit_exponent(n_list, covers),
                         first_visits, partial, note)


def grid_cover_time(s, start, alpha, n, scope=None, *,
                    max_events: int = 500_000):
    """Float cross-check of :func:`cover_time` against a 2D point grid.

    Returns the arc length after which every (i+1/2, j+1/2)/n centre of every
    scoped face lies within 1/n of the traced segments, or ``inf`` if the
    event budget runs out first.
    """
    if isinstance(s, Region):
        s = s.four_copy()
    face0, x0, y0 = start
    alpha = QuadRat.of(alpha)
    fa = float(alpha)
    hyp = math.hypot(1.0, fa)
    rad = math.sqrt(alpha.d) if alpha.d else 0.0
    r = 1.0 / n

    faces = list(scope) if scope is not None else s.faces
    mids = (np.arange(n) + 0.5) / n
    gx, gy = np.meshgrid(mids, mids)
    gx, gy = gx.ravel(), gy.ravel()
    alive = {f: np.ones(n * n, dtype=bool) for f in faces}
    left = {f: n * n for f in faces}
    remaining = len(faces) * n * n
    covered_arc = 0.0

    def sweep(f, ax, ay, bx, by, arc_end):
        nonlocal remaining, covered_arc
        m = alive.get(f)
        if m is None or not left[f]:
            return
        idx = np.nonzero(m)[0]
        px, py = gx[idx] - ax, gy[idx] - ay
        ux, uy = bx - ax, by - ay
        den = ux * ux + uy * uy
        tt = np.clip((px * ux + py * uy) / den, 0.0, 1.0) if den else 0.0
        dd = np.hypot(px - tt * ux, py - tt * uy)
        hit = idx[dd <= r]
        if hit.size:
            m[hit] = False
            left[f] -= hit.size
            remaining -= hit.size
            covered_arc = arc_end

    arc = 0.0
    ex, ey = float(x0), float(y0)
    cface, cx, cy = face0, x0, y0
    done = 0
    while remaining and done < max_events:
        rec: list = []
        res = fast_trace(s, cface, cx, cy, 1, alpha,
                         max_events=min(8192, max_events - done), record=rec)
        for f, side, a, b, mden in rec:
            t = (a + b * rad) / mden
            xx = _side_x(side, t)
            yy = t if side in ("L", "R") else (0.0 if side == "B" else 1.0)
            seg_arc = (xx - ex) * hyp
            arc += seg_arc
            sweep(f, ex, ey, xx, yy, arc)
            if not remaining:
                break
            tr = s.transition(f, side)
            t2 = 1.0 - t if tr.flip else t
            ex = _side_x(tr.side, t2)
            ey = t2 if tr.side in ("L", "R") else (0.0 if tr.side == "B" else 1.0)
        done += len(rec)
        if res.status == "singular":
            break
        fin = res.final
        cface, cx, cy = fin.face, fin.x, fin.y
    return covered_arc if not remaining else float("inf")


# ---------------------------------------------------------------------------
# escape rates on infinite surfaces


def _farthest(s, src, targets):
    """BFS restricted to ``targets``; farthest reachable member and distance.

    A trajectory's visited set is connected (consecutive events sit in
    adjacent faces), so the induced subgraph carries a genuine metric and
    the sweep never explores more than ``len(targets)`` faces.
    """
    inside = set(targets)
    inside.add(src)
    dist = {src: 0}
    far, fd = src, 0
    dq = deque((src,))
    while dq:
        f = dq.popleft()
        nd = dist[f] + 1
        for sd in SIDES:
            g = s.transition(f, sd).face
            if g in inside and g not in dist:
                dist[g] = nd
                dq.append(g)
                if nd > fd:
                    far, fd = g, nd
    return far, fd


def restricted_diameter(s, start_face, visited):
    """Diameter of the visited subgraph by double BFS sweep.

    Exact on trees, a lower bound in general.
    """
    u, _ = _farthest(s, start_face, visited)
    _, d = _farthest(s, u, visited)
    return d


def escape_rate(s, start, slope, checkpoints, *,
                max_events: int = 20_000_000, metric: str = None) -> EscapeReport:
    """Restricted diameter of the visited faces at arc-length checkpoints.

    The flow runs on a float kernel (millions of reflections are cheap and
    the diameter is a graph quantity, insensitive to float drift).  With
    ``metric="graph"`` diameters come from a double BFS sweep over the
    visited subgraph; ``metric="lattice"`` measures the max coordinate
    spread of the visited cells instead, which is the right distance for
    billiards in the plane (a sparse trajectory's subgraph diameter is just
    its own length).  Passing a Region picks the lattice metric.
    """
    if metric is None:
        metric = "lattice" if isinstance(s, Region) else "graph"
    if metric not in ("graph", "lattice"):
        raise ValueError("metric must be 'graph' or 'lattice'")
    if isinstance(s, Region):
        s = s.four_copy()
    face, x, y = start
    cps = sorted(float(c) for c in checkpoints)
    vx, vy = 1.0, float(slope)
    speed = math.hypot(vx, vy)
    fx, fy = float(x), float(y)

    visited = {face: 0.0}
    arc = 0.0
    f = face
    events = 0
    while arc < cps[-1] and events < max_events:
        tx = (1.0 - fx) / vx if vx > 0 else (fx / -vx if vx < 0 else math.inf)
        ty = (1.0 - fy) / vy if vy > 0 else (fy / -vy if vy < 0 else math.inf)
        if tx <= ty:
            t, side = tx, ("R" if vx > 0 else "L")
            param = min(max(fy + vy * tx, 0.0), 1.0)
        else:
            t, side = ty, ("T" if vy > 0 else "B")
            param = min(max(fx + vx * ty, 0.0), 1.0)
        arc += t * speed
        tr = s.transition(f, side)
        if tr.rot:
            raise ValueError("escape_rate needs a translation surface")
        f = tr.face
        p2 = 1.0 - param if tr.flip else param
        if tr.side == "L":
            fx, fy = 0.0, p2
        elif tr.side == "R":
            fx, fy = 1.0, p2
        elif tr.side == "B":
            fx, fy = p2, 0.0
        else:
            fx, fy = p2, 1.0
        if f not in visited:
            visited[f] = arc
        events += 1

    diams = []
    prev = 0
    for cp in cps:
        if metric == "lattice":
            xs = [g[0][0] for g, a in visited.items() if a <= cp]
            ys = [g[0][1] for g, a in visited.items() if a <= cp]
            d = max(max(xs) - min(xs), max(ys) - min(ys))
        else:
            seen = [g for g, a in visited.items() if a <= cp]
            d = restricted_diameter(s, face, seen)
        prev = max(prev, d)
        diams.append(prev)

    if len(cps) >= 2:
        c1, c0 = np.polyfit(np.log(cps), diams, 1)
    else:
        c1, c0 = float("nan"), float("nan")
    pos = [(cp, d) for cp, d in zip(cps, diams) if d > 0]
    if len(pos) >= 2:
        e, lc = np.polyfit(np.log([p[0] for p in pos]),
                           np.log([p[1] for p in pos]), 1)
        power = {"exponent": float(e), "coeff": float(math.exp(lc))}
    else:
        power = {"exponent": float("nan"), "coeff": float("nan")}
    return EscapeReport(tuple(cps), tuple(diams),
                        {"c0": float(c0), "c1": float(c1)}, power)


# ---------------------------------------------------------------------------
# wind-tree periodicity


def _free_cells(region, want):
    cells, radius = [], 0
    while len(cells) < want and radius < 64:
        ring = [(x, y)
                for x in range(-radius, radius + 1)
                for y in range(-radius, radius + 1)
                if max(abs(x), abs(y)) == radius and region.contains((x, y))]
        cells.extend(sorted(ring))
        radius += 1
    if not cells:
        raise ValueError("region has no free cells near the origin")
    return cells


def complete_periodicity_probe(wind, slope, samples: int = 20,
                               cutoff: int = 100_000, *,
                               escape_bound: int = 100, seed: int = 0) -> dict:
    """Sample exact billiard orbits and classify the direction.

    Every sample must revisit its initial phase state within ``cutoff``
    reflections for an ``all-closed`` verdict; one orbit drifting further
    than ``escape_bound`` cells yields ``escape-witness`` immediately.
    Samples landing on a corner are redrawn.
    """
    region = wind if isinstance(wind, Region) else build_wind_tree(*wind)
    sl = Fraction(slope)
    num, den = sl.numerator, sl.denominator
    rng = random.Random(seed)
    cells = _free_cells(region, samples)
    periods = []
    for i in range(samples):
        cell = cells[i % len(cells)]
        res = None
        for _ in range(6):
            xf = cell[0] + Fraction(rng.randrange(1, 97), 97)
            yf = cell[1] + Fraction(rng.randrange(1, 97), 97)
            res = trace_billiard(region, xf, yf, den, num, max_events=cutoff,
                                 escape_bound=escape_bound, detect_period=True)
            if res.status != "singular":
                break
        if res.status == "escaped":
            return {"verdict": "escape-witness", "slope": sl, "samples": i + 1,
                    "periods": periods,
                    "witness": {"start": (xf, yf), "final_cell": res.final_cell,
                                "crossings": res.crossings}}
        if res.status != "periodic":
            return {"verdict": "inconclusive", "slope": sl, "samples": i + 1,
                    "periods": periods, "witness": None}
        periods.append(res.trace.period)
    return {"verdict": "all-closed", "slope": sl, "samples": samples,
            "periods": periods, "witness": None}


def search_periodic_direction(wind, bound: int, *, samples: int = 8,
                              cutoff: int = 40_000, escape_bound: int = 60,
                              seed: int = 0) -> Optional[Fraction]:
    """First completely periodic slope k/l with k, l <= bound, if any."""
    region = wind if isinstance(wind, Region) else build_wind_tree(*wind)
    cands = sorted(((k, l)
                    for k in range(1, bound + 1)
                    for l in range(1, bound + 1)
                    if math.gcd(k, l) == 1),
                   key=lambda p: (p[0] + p[1], p[0]))
    for k, l in cands:
        rep = complete_periodicity_probe(region, Fraction(k, l), samples,
                                         cutoff, escape_bound=escape_bound,
                                         seed=seed)
        if rep["verdict"] == "all-closed":
            return Fraction(k, l)
    return None


# ---------------------------------------------------------------------------
# d-torus demo (float precision throughout)


def torus_cover_demo(d: int, direction, n_list, *,
                     max_steps: int = 5_000_000) -> DensityReport:
    """Cover time of the (1/n)-cell grid by a straight line on the d-torus.

    Pure float stepping from a fixed generic start; T(n) is the arc length
    at which the last of the n**d cells is first entered.
    """
    if d not in (2, 3):
        raise ValueError("d must be 2 or 3")
    v = [float(c) for c in direction]
    if len(v) != d or any(c == 0.0 for c in v):
        raise ValueError("direction needs d nonzero components")
    speed = math.hypot(*v)
    start = (0.1234567890123, 0.2718281828459, 0.3141592653589)[:d]

    n_list = sorted(int(n) for n in n_list)
    covers = []
    for n in n_list:
        # cell-local coordinates sidestep float trouble at exact boundaries
        cell = [int(p * n) % n for p in start]
        loc = [p * n - int(p * n) for p in start]
        seen = bytearray(n ** d)
        idx = sum(c * n ** i for i, c in enumerate(cell))
        seen[idx] = 1
        count, total = 1, n ** d
        arc = 0.0
        cover = None
        for _ in range(max_steps):
            t_best, axis = math.inf, 0
            for i in range(d):
                ti = (1.0 - loc[i]) / v[i] if v[i] > 0 else loc[i] / -v[i]
                if ti < t_best:
                    t_best, axis = ti, i
            for i in range(d):
                loc[i] = min(max(loc[i] + v[i] * t_best, 0.0), 1.0)
            arc += t_best * speed / n
            if v[axis] > 0:
                cell[axis] = (cell[axis] + 1) % n
                loc[axis] = 0.0
            else:
                cell[axis] = (cell[axis] - 1) % n
                loc[axis] = 1.0
            idx = sum(c * n ** i for i, c in enumerate(cell))
            if not seen[idx]:
                seen[idx] = 1
                count += 1
                if count == total:
                    cover = arc
                    break
        covers.append(cover)

    covers = tuple(covers)
    partial = any(c is None for c in covers)
    return DensityReport(tuple(n_list), covers, _fit_exponent(n_list, covers),
                         {}, partial, "budget" if partial else "")
