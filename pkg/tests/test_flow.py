import random
from fractions import Fraction

import pytest

from polyflow import (
    QuadRat,
    build_named,
    build_rectangle,
    build_snake_region,
    fast_trace,
    project_interval,
    retrace_back,
    trace,
    trace_billiard,
)
from polyflow.flow import billiard_point

SQRT2 = QuadRat.sqrt(2)
SILVER = 1 + SQRT2


def test_torus_rational_slope_periodic():
    t = build_named("torus")
    f = t.faces[0]
    r = trace(t, f, Fraction(1, 3), Fraction(1, 7), 2, 1, detect_period=True,
              max_events=100)
    assert r.status == "periodic"
    # direction (2, 1) closes up after two vertical and one horizontal crossing
    assert r.period == 3
    assert r.final.face == f


def test_axis_aligned_flow():
    t = build_named("torus")
    f = t.faces[0]
    r = trace(t, f, Fraction(1, 3), Fraction(1, 2), 0, 1, detect_period=True,
              max_events=10)
    assert r.status == "periodic" and r.period == 1
    assert r.events[0].side == "T" and r.events[0].param == Fraction(1, 3)
    # half a segment to the first crossing, one full period after it
    assert r.dx == 0 and r.dy == Fraction(3, 2) and r.time == Fraction(3, 2)


def test_corner_hit_is_singular():
    t = build_named("torus")
    f = t.faces[0]
    r = trace(t, f, Fraction(1, 2), Fraction(1, 2), 1, 1, max_events=10)
    assert r.status == "singular"
    assert r.crossings == 0
    assert r.final.x == 1 and r.final.y == 1
    assert r.time == Fraction(1, 2)
    # starting on a corner and sliding out across the adjacent edge is
    # singular too: the crossing parameter is exactly an endpoint
    r = trace(t, f, 1, 0, 1, 2, max_events=10)
    assert r.status == "singular" and r.crossings == 0


def test_irrational_slope_runs_and_retraces():
    t = build_named("torus")
    f = t.faces[0]
    r = trace(t, f, Fraction(1, 3), Fraction(1, 7), 1, SILVER, max_events=300,
              keep_events=False)
    assert r.status == "budget" and r.crossings == 300
    back = retrace_back(t, r)
    assert back.face == f
    assert back.x == Fraction(1, 3) and back.y == Fraction(1, 7)
    assert back.vx == 1 and back.vy == SILVER


def test_time_budget_stops_mid_segment():
    t = build_named("torus")
    f = t.faces[0]
    r = trace(t, f, 0, 0, 2, 1, max_time=Fraction(1, 5))
    assert r.status == "budget"
    assert r.time == Fraction(1, 5)
    assert r.final.x == Fraction(2, 5) and r.final.y == Fraction(1, 5)
    back = retrace_back(t, r)
    assert (back.x, back.y) == (0, 0)


def test_advance_budget_is_inclusive():
    t = build_named("torus")
    f = t.faces[0]
    r = trace(t, f, Fraction(1, 3), Fraction(1, 7), 1, SILVER, max_dx=10,
              keep_events=False)
    assert r.status == "budget"
    assert r.dx <= 10
    more = trace(t, f, Fraction(1, 3), Fraction(1, 7), 1, SILVER,
                 max_events=r.crossings + 1, keep_events=False)
    assert more.dx > 10


def test_fast_trace_matches_generic_on_translation_surfaces():
    rng = random.Random(91)
    for name in ("torus", "L", "gapwall"):
        s = build_named(name)
        for _ in range(3):
            f = s.faces[rng.randrange(len(s.faces))]
            x = Fraction(rng.randrange(1, 97), 97)
            y = Fraction(rng.randrange(1, 89), 89)
            vy = QuadRat(rng.randrange(1, 4), rng.choice([1, 1, -1]), 2)
            a = trace(s, f, x, y, 1, vy, max_events=400)
            rec = []
            b = fast_trace(s, f, x, y, 1, vy, max_events=400, record=rec)
            assert a.status == b.status
            assert a.crossings == b.crossings
            assert a.final == b.final
            assert a.time == b.time and a.dx == b.dx and a.dy == b.dy
            for ev, (face, side, pa, pb, pm) in zip(a.events, rec):
                assert ev.face == face and ev.side == side
                assert ev.param == QuadRat(Fraction(pa, pm), Fraction(pb, pm), 2)


def test_fast_trace_matches_generic_with_rotations():
    cube = build_named("cube")
    f = cube.faces[0]
    a = trace(cube, f, Fraction(1, 3), Fraction(1, 7), 1, SILVER,
              max_events=500, keep_events=False)
    b = fast_trace(cube, f, Fraction(1, 3), Fraction(1, 7), 1, SILVER,
                   max_events=500)
    assert a.final == b.final and a.time == b.time
    assert (a.dx, a.dy) == (b.dx, b.dy)


def test_fast_trace_budgets_and_period():
    t = build_named("torus")
    f = t.faces[0]
    a = trace(t, f, Fraction(1, 3), Fraction(1, 7), 2, 1, detect_period=True)
    b = fast_trace(t, f, Fraction(1, 3), Fraction(1, 7), 2, 1,
                   detect_period=True)
    assert (a.status, a.period) == (b.status, b.period) == ("periodic", 3)
    a = trace(t, f, Fraction(1, 3), Fraction(1, 7), 1, SILVER, max_dx=10,
              keep_events=False)
    b = fast_trace(t, f, Fraction(1, 3), Fraction(1, 7), 1, SILVER, max_dx=10)
    assert a.crossings == b.crossings and a.dx == b.dx
    a = trace(t, f, Fraction(1, 2), Fraction(1, 2), 1, 1, max_events=10)
    b = fast_trace(t, f, Fraction(1, 2), Fraction(1, 2), 1, 1, max_events=10)
    assert a.status == b.status == "singular"
    assert a.final == b.final and a.dx == b.dx and a.dy == b.dy


def test_fast_trace_coefficients_stay_bounded():
    # crossing coordinates live on finitely many translated lattices, so
    # denominators must not creep even over long runs and non-unit slopes
    L = build_named("L")
    beta = QuadRat(1, 2, 2)  # norm -7
    rec = []
    r = fast_trace(L, (0, 0), Fraction(1, 3), Fraction(1, 7), 1, beta,
                   max_events=5000, record=rec)
    assert r.status == "budget"
    assert max(t[4] for t in rec) < 10**4
    f = r.final
    assert f.x.p.denominator < 10**4 and f.y.p.denominator < 10**4


def test_billiard_square_diagonal_hits_corner():
    sq = build_rectangle(1, 1)
    r = trace_billiard(sq, Fraction(1, 2), Fraction(1, 2), 1, 1, max_events=50)
    assert r.status == "singular"


def test_billiard_rectangle_reflects_and_stays():
    box = build_rectangle(3, 1)
    r = trace_billiard(box, Fraction(1, 2), Fraction(1, 3), 1, 2,
                       max_events=2000)
    assert r.status == "budget"
    assert r.cells <= 3
    cx, cy = r.final_cell
    assert 0 <= cx < 3 and cy == 0


def test_billiard_point_roundtrip():
    box = build_rectangle(2, 1)
    r = trace_billiard(box, Fraction(1, 5), Fraction(1, 3), 1, SILVER,
                       max_events=77, escape_bound=None)
    ax, ay = billiard_point(r.trace.final.face, r.trace.final.x,
                            r.trace.final.y)
    # reflected coordinates always fold back into the region
    assert 0 <= ax <= 2 and 0 <= ay <= 1


def test_billiard_snake_escape_bound():
    snake = build_snake_region()
    r = trace_billiard(snake, Fraction(1, 2), Fraction(1, 2), 1, SILVER,
                       max_events=50000, escape_bound=2)
    assert r.status in ("escaped", "budget")
    if r.status == "escaped":
        assert r.distance > 2


def test_project_interval_single_piece_on_torus():
    t = build_named("torus")
    f = t.faces[0]
    pieces = project_interval(t, f, "L", Fraction(1, 10), Fraction(2, 10), 2)
    assert len(pieces) == 1
    p = pieces[0]
    assert p.side == "T"
    assert (p.lo, p.hi) == (Fraction(2, 5), Fraction(9, 20))
    assert p.length == Fraction(1, 20)


def test_project_interval_splits_and_keeps_length():
    # a shallow slope sends the lower half of the interval across a vertical
    # edge into the next face; the exact midpoint rides into a corner, so the
    # sampler must recurse around it without losing any length
    L = build_named("L")
    pieces = project_interval(L, (0, 0), "L", Fraction(1, 10),
                              Fraction(9, 10), Fraction(1, 2))
    total = sum((p.length for p in pieces), QuadRat(0))
    assert total == (Fraction(9, 10) - Fraction(1, 10)) / Fraction(1, 2)
    assert len(pieces) >= 2
    assert {p.face for p in pieces} == {(0, 0), (1, 0)}
    for p in pieces:
        assert p.side == "T"
        assert p.lo.sign() >= 0 and (p.hi - 1).sign() <= 0


def test_project_interval_rejects_rotating_gluings():
    cube = build_named("cube")
    hit = None
    for f in cube.faces:
        if cube.transition(f, "R").rot:
            hit = f
            break
    assert hit is not None
    with pytest.raises(ValueError):
        project_interval(cube, hit, "L", Fraction(1, 10), Fraction(2, 10),
                         Fraction(1, 5))
