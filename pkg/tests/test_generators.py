import random
import threading

import pytest

from polyflow import PROVIDERS, growth_probe, provide, verify_maze_bound
from polyflow.surface import Surface, Transition


def test_snake_strips_all_streets_two():
    for name in ("shark", "staircase", "hybrid"):
        s, prof = provide(name, seed=3)
        assert prof.street_bound == 2
        rep = verify_maze_bound(s, prof, radius=10)
        assert rep.ok, (name, rep.worst)


def test_shark_is_the_zigzag_strip():
    s, _ = provide("shark")
    # columns hold two cells; teeth alternate so rows stay in {0, 1}
    ball = s.faces_within(radius=12)
    assert {y for _, y in ball} <= {0, 1, -1}
    ys = sorted({y for x, y in ball if x == 5})
    assert len(ys) == 2 and ys[1] - ys[0] == 1


def test_staircase_climbs():
    s, _ = provide("staircase")
    ball = s.faces_within(radius=20)
    xs = {x for x, _ in ball}
    for x in sorted(xs)[2:-2]:
        cols = sorted(y for cx, y in ball if cx == x)
        assert cols == [x - 1, x] or len(cols) < 2


def test_hybrid_is_seed_deterministic():
    a1, _ = provide("hybrid", seed=11)
    a2, _ = provide("hybrid", seed=11)
    b, _ = provide("hybrid", seed=12)
    ball1 = a1.faces_within(radius=15)
    assert ball1 == a2.faces_within(radius=15)
    assert ball1 != b.faces_within(radius=15)


def test_maze3_streets_exactly_three():
    s, prof = provide("maze3")
    assert prof.street_bound == 3
    for st in s.streets(scope=s.faces_within(radius=6), limit=20):
        assert st.closed and st.length == 3
    rep = verify_maze_bound(s, prof)
    assert rep.ok


def test_plusminus_streets_at_most_six():
    s, prof = provide("plusminus", seed=5)
    seen = set()
    for st in s.streets(scope=s.faces_within(radius=8), limit=32):
        assert st.closed and st.length <= 6
        seen.add(st.length)
    assert max(seen) >= 4  # mixing the two block patterns stretches runs


def test_pq_maze_bound():
    for p, q in ((5, 2), (7, 3)):
        s, prof = provide("pq", p=p, q=q, seed=1)
        assert prof.street_bound == 2 * p - 2
        rep = verify_maze_bound(s, prof, radius=6)
        assert rep.ok, rep.worst
    with pytest.raises(ValueError):
        provide("pq", p=6, q=3)


def test_tree_maze_streets_and_growth():
    s, prof = provide("tree")
    for st in s.streets(scope=s.faces_within(radius=3), limit=20):
        assert st.closed and st.length == 4
    g = growth_probe(s, prof)
    assert g["ok"], g
    # balls triple-ish per street step
    b = [len(s.faces_within(radius=r)) for r in (1, 2, 3)]
    assert b[0] == 7 and b[1] == 25 and b[2] == 79


def test_polycube_corridor_street_menu():
    s, prof = provide("polycube-corridor")
    lens = {st.length for st in s.streets(scope=s.faces_within(radius=2), limit=88)}
    assert lens == {4, 12, 20}
    rep = verify_maze_bound(s, prof)
    assert rep.ok


def test_growth_probes():
    expected = {
        "shark": "linear",
        "maze3": "quadratic",
        "polycube-corridor": "cubic",
        "tree": "exponential",
    }
    for name, cls in expected.items():
        s, prof = provide(name)
        assert prof.growth == cls
        g = growth_probe(s, prof)
        assert g["ok"], (name, g)


def test_corrupted_provider_is_caught():
    s, prof = provide("maze3")
    fn = s._fn

    def bad_fn(face, side):
        # drop the wrap at one hole so a street runs off to the right
        if side == "R" and face[1] == 0:
            return Transition((face[0] + 1, face[1]), "L")
        return fn(face, side)

    bad = Surface(bad_fn, origin=(0, 0), name="maze3-corrupt")
    rep = verify_maze_bound(bad, prof, radius=2)
    assert not rep.ok
    assert rep.worst is not None and (not rep.worst.closed or rep.worst.length > 3)


def test_lazy_surfaces_are_thread_safe():
    s, _ = provide("plusminus", seed=9)
    results = []

    def worker():
        random.seed()  # distinct interleavings
        results.append(tuple(sorted(map(repr, s.faces_within(radius=5)))))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results)) == 1


def test_provider_menu():
    assert set(PROVIDERS) >= {
        "shark", "staircase", "hybrid", "maze3", "plusminus",
        "pq", "tree", "polycube-corridor", "inf-L-strip-4copy",
    }
    with pytest.raises(ValueError):
        provide("cathedral")
