import random
from fractions import Fraction

import pytest

from polyflow import (
    LStripSpec,
    QuadRat,
    TowerQuery,
    bounces_back,
    build_l_surface,
    build_strip,
    build_torus,
    build_wind_tree,
    cylinder_decompose,
    decompose_scope,
    map_slope,
    rhombus_maze,
    strip_region,
    strip_street_analysis,
    tower_exit,
    trace_billiard,
)

SQRT2 = QuadRat.sqrt(2)


def brute_tower_exit(k, m, gate=1):
    """Reflecting billiard in the [0,1] x [0,k] box, counting side-wall hits.

    The ray enters mid-gate along a line of slope m (leftward when coming
    through gate 2) and leaves the next time it meets a side wall inside the
    bottom square.  Exit types: 1/2 = far gate going up/down, 3/4 = entry
    gate going up/down.
    """
    x, y = Fraction(0 if gate == 1 else 1), Fraction(1, 2)
    vx = 1 if gate == 1 else -1
    vy = m * vx
    hits = 0
    while True:
        tx = 1 - x if vx > 0 else x
        ty = Fraction(k - y, vy) if vy > 0 else Fraction(y, -vy)
        assert tx != ty  # mid-gate rays with integer slope never meet a corner
        if tx < ty:
            x = Fraction(1 if vx > 0 else 0)
            y += vy * tx
            hits += 1
            if 0 < y < 1:
                far = (x == 1) if gate == 1 else (x == 0)
                up = vy > 0
                return hits, (1 if up else 2) if far else (3 if up else 4)
            vx = -vx
        else:
            x += vx * ty
            y = Fraction(k if vy > 0 else 0)
            vy = -vy


def test_tower_exit_matches_reflecting_box():
    for k in range(2, 7):
        for m in range(-10, 11):
            if m == 0:
                continue
            for gate in (1, 2):
                want = brute_tower_exit(k, m, gate)
                assert tower_exit(TowerQuery(k, m, gate)) == want, (k, m, gate)


def test_tower_exit_spot_values():
    assert tower_exit(TowerQuery(3, 1)) == (5, 2)
    assert tower_exit(TowerQuery(3, -3)) == (2, 4)
    for m in (2, 6, 10, -2, -6):
        assert tower_exit(TowerQuery(2, m)) == (2, 3 if m > 0 else 4)
    # height-3 towers by slope residue
    want = {0: 1, 1: 5, 2: 3, 3: 2, 4: 3, 5: 1}
    for m in range(1, 25):
        assert tower_exit(TowerQuery(3, m))[0] == want[m % 6]
    assert bounces_back(2, 6) and not bounces_back(2, 4)
    assert bounces_back(3, 9) and not bounces_back(3, 7)


def test_tower_query_validation():
    with pytest.raises(ValueError):
        TowerQuery(1, 3)
    with pytest.raises(ValueError):
        TowerQuery(4, 0)
    with pytest.raises(ValueError):
        TowerQuery(4, 2, gate=3)


def test_bouncing_is_gate_symmetric():
    rng = random.Random(7)
    for _ in range(120):
        k = rng.randrange(2, 10)
        m = rng.choice([i for i in range(-15, 16) if i != 0])
        e1 = tower_exit(TowerQuery(k, m, 1))[1]
        e2 = tower_exit(TowerQuery(k, m, 2))[1]
        assert (e1 in (3, 4)) == (e2 in (3, 4)), (k, m)


def test_torus_decompositions_are_exact():
    t = build_torus()
    for sl in (Fraction(1), Fraction(2), Fraction(1, 3), Fraction(3, 5),
               Fraction(-2)):
        cyls = decompose_scope(t, sl)
        assert len(cyls) == 1 and cyls[0].closed
        assert sum(c.area for c in cyls) == 1
    one = cylinder_decompose(t, 1, (t.faces[0], "L"))[0]
    assert one.crossings == 2 and one.rhombi() == 2
    assert one.circumference == SQRT2 and one.width == SQRT2 / 2
    assert cylinder_decompose(t, 2, (t.faces[0], "L"))[0].rhombi() == 4
    assert cylinder_decompose(t, Fraction(1, 3), (t.faces[0], "L"))[0].rhombi() == 6
    assert cylinder_decompose(t, Fraction(3, 5), (t.faces[0], "L"))[0].rhombi() == 30


def test_l_surface_decompositions():
    L = build_l_surface()
    c1 = decompose_scope(L, 1)
    assert sorted(c.rhombi() for c in c1) == [6]
    c2 = decompose_scope(L, 2)
    assert sorted(c.rhombi() for c in c2) == [4, 8]
    for cs in (c1, c2):
        assert all(c.closed for c in cs)
        assert sum(c.area for c in cs) == 3


def test_point_seed_returns_containing_cylinder():
    L = build_l_surface()
    cyls = cylinder_decompose(L, 2, ((0, 0), "B"))
    assert [c.interval for c in cyls] == [
        (Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(1)),
    ]
    cut = cyls[0].interval[1]
    up = L.transition((0, 0), "B").face  # face whose top edge feeds the seed
    eps = Fraction(1, 97)
    for off, want in ((cut - eps, cyls[0]), (cut + eps, cyls[1])):
        got = cylinder_decompose(L, 2, (up, off / 2, 1 - off))
        assert len(got) == 1
        assert frozenset(got[0].orbit) == frozenset(want.orbit)


def test_separatrix_seeds_are_rejected():
    t = build_torus()
    f = t.faces[0]
    # the corner orbit itself
    with pytest.raises(ValueError, match="separatrix"):
        cylinder_decompose(t, 1, (f, Fraction(1, 4), Fraction(1, 4)))
    # a point whose first crossing lands exactly on a cut
    L = build_l_surface()
    cut = cylinder_decompose(L, 2, ((0, 0), "B"))[0].interval[1]
    up = L.transition((0, 0), "B").face
    with pytest.raises(ValueError, match="separatrix"):
        cylinder_decompose(L, 2, (up, cut / 2, 1 - cut))
    with pytest.raises(ValueError, match="rational"):
        cylinder_decompose(t, 1, (f, SQRT2 - 1, Fraction(1, 2)))


def test_wind_tree_cylinders():
    wt = build_wind_tree(Fraction(1, 2), Fraction(1, 2))
    s = wt.four_copy()
    seed = (((1, 1), (1, 1)), "L")
    closed = cylinder_decompose(s, 1, seed)
    assert closed and all(c.closed for c in closed)
    assert {c.crossings for c in closed} == {24}
    assert {c.rhombi() for c in closed} == {24}
    esc = cylinder_decompose(s, 2, seed, bound=300)
    bad = [c for c in esc if not c.closed]
    assert bad
    rep = bad[0].report()
    assert rep["status"] == "escaped" and rep["bound"] == 300
    assert "circumference" in rep and "width" in rep


def test_infinite_l_strip_closes_at_slope_two():
    s = build_strip(2, 2).four_copy()
    faces = s.faces_within(radius=2)
    for sl in (2, -2):
        cyls = decompose_scope(s, sl, faces, bound=200)
        assert cyls and all(c.closed for c in cyls)
        assert {c.rhombi() for c in cyls} == {24}
        assert {c.circumference for c in cyls} == {QuadRat(0, 6, 5)}


def test_map_slope():
    assert map_slope(2, Fraction(0)) == 2
    assert map_slope(1, SQRT2 - 1) == 1 + SQRT2
    # the matrix ((1, -1), (m, m)) sends (1, beta) to a vector of that slope
    m, beta = 3, Fraction(2, 7)
    assert map_slope(m, beta) == Fraction(m * (1 + beta), 1 - beta)
    with pytest.raises(ValueError):
        map_slope(1, QuadRat.of(1))


def test_rhombus_maze_torus():
    maze, corr = rhombus_maze(build_torus(), 1)
    assert maze.is_finite and len(maze.faces) == 2
    assert {rid[0] for rid in maze.faces} == {"E"}  # both centres sit on edges
    for st in maze.streets():
        assert st.closed and st.length == 2
    assert corr.ne == (1, 1) and corr.nw == (-1, 1)
    centers = {corr.center(rid)[1:] for rid in maze.faces}
    assert centers == {(Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(0))}


def test_rhombus_maze_infinite_strip():
    s = build_strip(2, 2).four_copy()
    cells = [(x, 0) for x in range(6)] + [(x, 1) for x in (0, 2, 4)]
    faces = [(c, g) for c in cells for g in ((1, 1), (-1, 1), (1, -1), (-1, -1))]
    maze, corr = rhombus_maze(s, 2, scope=faces, bound=400)
    assert not maze.is_finite
    assert corr.ne == (1, 2)
    st = maze.street(maze.origin, "R")
    assert st.closed and st.length == 24
    st = maze.street(maze.origin, "T")
    assert st.closed and st.length == 24


def test_rhombus_maze_rejects_escaping_slopes():
    wt = build_wind_tree(Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(ValueError, match="unsupported geometry"):
        rhombus_maze(wt, 2, scope=2, bound=300)


def test_l_strip_spec_geometry():
    spec = LStripSpec(((2, 3), (4, 2), (3, 4)))
    assert spec.n == 3 and spec.span == 9
    assert [spec.x_of(i) for i in range(3)] == [0, 3, 5]
    assert [spec.tower_of(x) for x in (0, 5, -1, -3, -4, 9, 13)] == \
        [0, 2, -1, -1, -2, 3, 4]
    region = strip_region(spec)
    assert region.contains((0, 0)) and region.contains((0, 1))
    assert not region.contains((1, 1))
    assert region.contains((3, 3)) and not region.contains((3, 4))
    # constant extensions repeat the end towers
    assert region.contains((-3, 1)) and region.contains((9, 2))
    assert not region.contains((-1, 1)) and not region.contains((0, 2))
    with pytest.raises(ValueError):
        LStripSpec(((1, 2),))
    with pytest.raises(ValueError):
        LStripSpec(((6, 2),), r=5)


def test_billiard_bounce_and_escape_in_a_strip():
    region = strip_region(LStripSpec(((2, 8), (2, 8))))
    # slope 2 bounces off both towers: trapped, hence periodic
    res = trace_billiard(region, Fraction(3, 2), Fraction(1, 3), 1, 2,
                         max_events=4000, escape_bound=30, detect_period=True)
    assert res.status == "periodic"
    # slope 1 passes through every tower and runs off
    res = trace_billiard(region, Fraction(3, 2), Fraction(1, 3), 1, 1,
                         max_events=4000, escape_bound=30)
    assert res.status == "escaped"


def test_strip_analysis_uniform_towers():
    spec2 = LStripSpec(tuple((2, 2) for _ in range(5)))
    for m in (1, 2, 3, 4, 5, 6):
        rep = strip_street_analysis(spec2, m, bound=6)
        if m % 4 == 2:
            assert rep.kind == "finite-streets"
            assert rep.bouncers == list(range(5))
            assert rep.pockets and all(
                c.closed for p in rep.pockets for c in p["cylinders"])
        else:
            assert rep.kind == "infinite-street"
            assert rep.witness["status"] == "escaped"
            assert rep.witness["towers_crossed"] >= 6

    spec3 = LStripSpec(tuple((3, 2) for _ in range(5)))
    for m in (2, 3, 9):
        rep = strip_street_analysis(spec3, m, bound=6)
        assert (rep.kind == "finite-streets") == (m % 6 == 3)


def test_strip_analysis_mixed_towers_never_seal():
    mix = LStripSpec(((2, 2), (2, 2), (3, 2), (3, 2)))
    for m in (2, 3, 6):
        rep = strip_street_analysis(mix, m, bound=6)
        assert rep.kind == "infinite-street"
        assert rep.witness["status"] == "escaped"
        assert rep.witness["towers_crossed"] >= 6


def test_prime_height_towers_seal_strips():
    rng = random.Random(2026)
    for p in (3, 5):
        x0, e = tower_exit(TowerQuery(p, p))
        assert e in (3, 4) and x0 % 2 == 0
        for _ in range(3):
            n = rng.randrange(3, 6)
            mid = [(rng.randrange(2, 6), rng.randrange(2, 6))
                   for _ in range(n - 2)]
            towers = [(p, rng.randrange(2, 6))] + mid + \
                [(p, rng.randrange(2, 6))]
            spec = LStripSpec(tuple(towers), r=5)
            rep = strip_street_analysis(spec, p, bound=6)
            assert rep.kind == "finite-streets"
            assert 0 in rep.bouncers and spec.n - 1 in rep.bouncers
            assert all(c.closed for pk in rep.pockets
                       for c in pk["cylinders"])
