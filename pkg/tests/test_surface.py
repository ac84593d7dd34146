import json

import pytest

from polyflow import (
    Region,
    build_cube,
    build_gapwall,
    build_l_surface,
    build_named,
    build_rectangle,
    build_snake_region,
    build_strip,
    build_torus,
    build_wind_tree,
    four_copy,
    unfold_rotations,
)
from polyflow.store import generator_doc, surface_from_doc, surface_to_doc
from polyflow.surface import OPPOSITE, SIDES, coord_flip, entry_side


def street_summary(s, scope=None):
    return sorted((st.kind, st.length) for st in s.streets(scope))


def test_torus():
    t = build_torus()
    t.validate()
    assert t.is_translation
    assert street_summary(t) == [("h", 1), ("v", 1)]
    assert t.vertex_profile() == [4]
    assert t.street_lcm() == 1


def test_l_surface_streets_and_vertex():
    L = build_l_surface()
    L.validate()
    assert L.is_translation
    sts = {st.key(): st for st in L.streets()}.values()
    by_kind = {}
    for st in sts:
        by_kind.setdefault(st.kind, []).append(sorted(st.faces))
    assert sorted(len(f) for f in by_kind["h"]) == [1, 2]
    assert sorted(len(f) for f in by_kind["v"]) == [1, 2]
    # the two long streets share the corner face
    assert [(0, 0), (1, 0)] in by_kind["h"]
    assert [(0, 0), (0, 1)] in by_kind["v"]
    # one singular vertex, cone angle 6 pi = 12 quadrants
    assert L.vertex_profile() == [12]
    assert L.street_lcm() == 2


def test_l_surface_labels():
    L = build_l_surface()
    A, B, C = (0, 0), (1, 0), (0, 1)
    assert L.edge_label(A, "B") == "h1" and L.edge_label(C, "T") == "h1"
    assert L.edge_label(B, "B") == "h2" and L.edge_label(B, "T") == "h2"
    assert L.edge_label(A, "T") == "h3" and L.edge_label(C, "B") == "h3"
    assert L.edge_label(A, "L") == "v1" and L.edge_label(B, "R") == "v1"
    assert L.edge_label(C, "L") == "v2" and L.edge_label(C, "R") == "v2"
    assert L.edge_label(A, "R") == "v3" and L.edge_label(B, "L") == "v3"
    # canonical edge agrees from both incidences
    for f, s in [(A, "B"), (A, "T"), (B, "R"), (C, "R")]:
        tr = L.transition(f, s)
        assert L.canonical_edge(f, s) == L.canonical_edge(tr.face, tr.side)


def test_p_distance_on_l():
    L = build_l_surface()
    A, B, C = (0, 0), (1, 0), (0, 1)
    assert L.p_distance(A, A) == 0
    assert L.p_distance(A, B) == 1
    assert L.p_distance(A, C) == 1
    assert L.p_distance(B, C) == 2
    assert L.p_diameter(L.faces) == 2
    assert L.p_distance(B, C, max_dist=1) is None


def test_gapwall():
    g = build_gapwall()
    g.validate()
    assert len(g.faces) == 13
    h = sorted(st.length for st in g.streets() if st.kind == "h")
    v = sorted(st.length for st in g.streets() if st.kind == "v")
    assert h == [1, 1, 2, 3, 3, 3]
    assert v == [1, 3, 4, 5]
    assert g.street_lcm() == 60


def test_cube_bands_and_corners():
    c = build_cube()
    c.validate()
    assert len(c.faces) == 6
    sts = c.streets()
    assert [st.length for st in sts] == [4, 4, 4]
    assert all(st.kind == "mixed" for st in sts)
    # every face lies on exactly two of the three bands
    for f in c.faces:
        assert sum(f in st.faces for st in sts) == 2
    # eight corners, cone angle 3 pi / 2 each
    assert c.vertex_profile() == [3] * 8
    assert not c.is_translation
    with pytest.raises(ValueError):
        four_copy(build_torus())


def test_cube_four_copy():
    c4 = build_named("cube-4copy")
    c4.validate()
    assert len(c4.faces) == 24
    assert c4.is_translation
    sts = c4.streets()
    assert sorted(st.length for st in sts) == [4] * 12
    assert c4.vertex_profile() == [12] * 8
    assert c4.street_lcm() == 4


def test_snake_four_copy():
    s4 = build_snake_region().four_copy()
    s4.validate()
    assert len(s4.faces) == 24
    assert sorted(st.length for st in s4.streets()) == [2] * 4 + [4] * 10
    assert s4.street_lcm() == 4


def test_square_region_unfolds_to_torus():
    q = build_rectangle(1, 1)
    s = q.four_copy()
    s.validate()
    assert len(s.faces) == 4
    assert sorted(st.length for st in s.streets()) == [2, 2, 2, 2]
    assert s.vertex_profile() == [4, 4, 4, 4]


def test_region_walls_and_reflection():
    snake = build_snake_region()
    assert sorted(snake.walls((0, 0))) == ["B", "L", "R"]
    assert sorted(snake.walls((1, 1))) == ["B", "R"]
    s = snake.four_copy()
    # wall hit flips the copy, interior crossing keeps it
    f = ((0, 0), (1, 1))
    assert s.transition(f, "R").face == ((0, 0), (-1, 1))
    assert s.transition(f, "T").face == ((0, 1), (1, 1))
    # moving right in a flipped copy walks left in the region
    g = ((1, 1), (-1, 1))
    assert s.transition(g, "R").face == ((0, 1), (-1, 1))


def test_strip_region():
    st = build_strip(period=2, heights=2)
    assert st.contains((5, 0)) and st.contains((-4, 1))
    assert not st.contains((1, 1)) and not st.contains((0, 2))
    assert not st.contains((0, -1))
    tall = build_strip(period=3, heights=lambda k: 2 + (k % 2))
    assert tall.contains((3, 2)) and not tall.contains((0, 2))


def test_wind_tree_region():
    r = build_wind_tree("1/2", "1/2")
    assert r.scale == 4
    # obstacle occupies a 2x2 cell block around each multiple of 4
    for cell in [(0, 0), (-1, 0), (0, -1), (3, 4), (4, 3)]:
        assert not r.contains(cell)
    for cell in [(1, 0), (0, 1), (2, 2), (1, 3)]:
        assert r.contains(cell)
    s = r.four_copy()
    f = ((1, 0), (1, 1))
    assert s.transition(f, "L").face == ((1, 0), (-1, 1))  # obstacle wall
    assert s.transition(f, "R").face == ((2, 0), (1, 1))


def test_rotation_side_rules():
    assert entry_side("R", 0) == "L"
    assert entry_side("R", 90) == "B"
    assert entry_side("T", 270) == "L"
    assert not coord_flip("R", 0)
    assert coord_flip("R", 90)
    assert coord_flip("R", 180)
    assert not coord_flip("R", 270)
    for s in SIDES:
        assert OPPOSITE[OPPOSITE[s]] == s


def test_transition_involution_spot_checks():
    for s in (build_cube(), build_named("cube-4copy"), build_gapwall()):
        for f in s.faces:
            for side in SIDES:
                tr = s.transition(f, side)
                back = s.transition(tr.face, tr.side)
                assert (back.face, back.side) == (f, side)
                assert (back.rot + tr.rot) % 360 == 0


def test_json_round_trip_finite():
    for name in ("torus", "L", "gapwall", "cube", "cube-4copy", "snake-4copy"):
        s = build_named(name)
        doc = json.loads(json.dumps(surface_to_doc(s)))
        s2 = surface_from_doc(doc)
        assert street_summary(s) == street_summary(s2)
        assert sorted(map(repr, s.faces)) == sorted(map(repr, s2.faces))
        assert s.vertex_profile() == s2.vertex_profile()
    # labels survive
    L2 = surface_from_doc(surface_to_doc(build_l_surface()))
    assert L2.edge_label((0, 0), "B") == "h1"
    assert L2.edge_label((0, 1), "R") == "v2"


def test_json_generator_doc():
    s = surface_from_doc(generator_doc("shark"))
    assert s.right_of((0, 0)) == (1, 0)
    with pytest.raises(ValueError):
        surface_from_doc(generator_doc("no-such-maze"))


def test_json_rejects_bad_docs():
    doc = surface_to_doc(build_torus())
    doc["right"] = {}
    with pytest.raises(ValueError):
        surface_from_doc(doc)
    bad = surface_to_doc(build_cube())
    bad["rotation"][0][4] = (bad["rotation"][0][4] + 90) % 360
    with pytest.raises(ValueError):
        surface_from_doc(bad)


def test_unfold_rotations_is_translation_cover():
    c = build_cube()
    c4 = unfold_rotations(c)
    # projecting any unfolded transition recovers the base transition
    for f in c.faces:
        for side in SIDES:
            tr4 = c4.transition((f, 0), side)
            tr = c.transition(f, side)
            assert tr4.face == (tr.face, (-tr.rot) % 360)
            assert tr4.rot == 0
