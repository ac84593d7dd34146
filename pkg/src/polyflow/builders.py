"""Builders for the named finite surfaces and the unfolding constructions.

Planar translation surfaces are given by their right/top permutations on
(i, j) faces.  Cube-like surfaces are generated from a voxel solid: faces are
(voxel, normal) boundary squares, and crossings fold flat/convex/concave in
integer 3D arithmetic, which fixes the rotation tag of every gluing.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from .region import Region, build_rectangle, build_snake_region, build_strip
from .surface import OPPOSITE, Surface, Transition, coord_flip, rotate_side

# ---------------------------------------------------------------------------
# planar builders


def build_torus() -> Surface:
    f = (0, 0)
    return Surface.from_permutations({f: f}, {f: f}, name="torus")


def build_l_surface() -> Surface:
    """Three unit squares in an L, opposite-side gluings, one 6-pi vertex.

    Faces: A=(0,0), B=(1,0), C=(0,1).  Edge labels: h1..h3 bottom-to-top,
    v1..v3 left-to-right, interior edges h3 (A top) and v3 (A right).
    """
    A, B, C = (0, 0), (1, 0), (0, 1)
    right = {A: B, B: A, C: C}
    top = {A: C, C: A, B: B}
    labels = {
        (A, "B"): "h1", (C, "T"): "h1",
        (B, "B"): "h2", (B, "T"): "h2",
        (A, "T"): "h3", (C, "B"): "h3",
        (A, "L"): "v1", (B, "R"): "v1",
        (C, "L"): "v2", (C, "R"): "v2",
        (A, "R"): "v3", (B, "L"): "v3",
    }
    return Surface.from_permutations(right, top, labels=labels, name="L")


def build_gapwall() -> Surface:
    """13-face surface whose street lengths have lcm 60.

    Horizontal streets 3+3+3+1+1+2, vertical 5+1+3+4.
    """
    rows = {4: [0, 1, 2], 3: [0, 1, 2], 2: [0, 1, 2], 1: [0, 2], 0: [0, 1]}
    faces = [(x, y) for y, xs in rows.items() for x in xs]

    def cyc(perm, cells):
        for i, c in enumerate(cells):
            perm[c] = cells[(i + 1) % len(cells)]

    right: dict = {}
    cyc(right, [(0, 4), (1, 4), (2, 4)])
    cyc(right, [(0, 3), (1, 3), (2, 3)])
    cyc(right, [(0, 2), (1, 2), (2, 2)])
    cyc(right, [(0, 1)])
    cyc(right, [(2, 1)])
    cyc(right, [(0, 0), (1, 0)])

    top: dict = {}
    cyc(top, [(0, 0), (0, 1), (0, 2), (0, 3), (0, 4)])
    cyc(top, [(1, 0)])
    cyc(top, [(1, 2), (1, 3), (1, 4)])
    cyc(top, [(2, 1), (2, 2), (2, 3), (2, 4)])

    assert set(faces) == set(right) == set(top)
    return Surface.from_permutations(right, top, name="gapwall")


# ---------------------------------------------------------------------------
# voxel surfaces (cube, polycubes)

_AXES = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}
NORMALS = {
    "+x": (1, 0, 0), "-x": (-1, 0, 0),
    "+y": (0, 1, 0), "-y": (0, -1, 0),
    "+z": (0, 0, 1), "-z": (0, 0, -1),
}
_NORMAL_OF = {v: k for k, v in NORMALS.items()}
# right-handed in-plane chart axes per outward normal: u cross v == normal
_CHART = {
    "+z": ((1, 0, 0), (0, 1, 0)),
    "-z": ((0, 1, 0), (1, 0, 0)),
    "+x": ((0, 1, 0), (0, 0, 1)),
    "-x": ((0, 0, 1), (0, 1, 0)),
    "+y": ((0, 0, 1), (1, 0, 0)),
    "-y": ((1, 0, 0), (0, 0, 1)),
}
_SIDE_CORNERS = {  # chart endpoints of each side, in parameter order
    "R": ((1, 0), (1, 1)),
    "T": ((0, 1), (1, 1)),
    "L": ((0, 0), (0, 1)),
    "B": ((0, 0), (1, 0)),
}


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _neg(a):
    return (-a[0], -a[1], -a[2])


def _scale(a, k):
    return (a[0] * k, a[1] * k, a[2] * k)


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _corner0(voxel, normal: str):
    """3D position of the chart origin (0,0) of the face square."""
    n = NORMALS[normal]
    return tuple(voxel[i] + (1 if n[i] > 0 else 0) for i in range(3))


def _chart_point(voxel, normal: str, x, y):
    u, v = _CHART[normal]
    c = _corner0(voxel, normal)
    return tuple(c[i] + x * u[i] + y * v[i] for i in range(3))


_ROT_OF_VEC = {(1, 0): 0, (0, 1): 90, (-1, 0): 180, (0, -1): 270}


def voxel_surface(
    solid: Callable[[tuple], bool],
    voxels: Optional[Iterable[tuple]] = None,
    origin: Optional[tuple] = None,
    name: str = "voxel",
) -> Surface:
    """Boundary surface of a voxel solid, with rotation-tagged gluings.

    Faces are (voxel, normal) with the neighbour across ``normal`` empty.
    Crossing an edge goes flat, rolls over a convex edge, or climbs a concave
    one; the direction map between charts gives the rotation tag.
    """

    def face_exists(face):
        v, n = face
        return solid(v) and not solid(_add(v, NORMALS[n]))

    def fn(face, side):
        v, nname = face
        if not face_exists(face):
            raise ValueError(f"no face {face!r}")
        n = NORMALS[nname]
        u, w = _CHART[nname]
        t3 = {"R": u, "T": w, "L": _neg(u), "B": _neg(w)}[side]
        vt = _add(v, t3)
        if not solid(vt):
            if solid(_add(vt, n)):
                raise ValueError(f"pinched edge at {face!r} side {side}")
            v2, n2vec, t2 = v, t3, _neg(n)  # convex: roll over the edge
        elif not solid(_add(vt, n)):
            v2, n2vec, t2 = vt, n, t3  # flat continuation
        else:
            v2, n2vec, t2 = _add(vt, n), _neg(t3), n  # concave: climb the wall
        n2 = _NORMAL_OF[n2vec]

        # direction map between charts: edge-axis component fixed, t3 -> t2
        e3 = _cross(n, t3)
        u2, w2 = _CHART[n2]

        def push(d3):
            img = _add(_scale(t2, _dot(d3, t3)), _scale(e3, _dot(d3, e3)))
            return (_dot(img, u2), _dot(img, w2))

        col1 = push(u)
        rot = _ROT_OF_VEC[col1]
        expect2 = {0: (0, 1), 90: (-1, 0), 180: (0, -1), 270: (1, 0)}[rot]
        assert push(w) == expect2, "chart map is not a rotation"

        # entry side: the side of the new face lying on the crossed edge
        a, b = (_chart_point(v, nname, *p) for p in _SIDE_CORNERS[side])
        side2 = None
        for s2, (pa, pb) in _SIDE_CORNERS.items():
            qa = _chart_point(v2, n2, *pa)
            qb = _chart_point(v2, n2, *pb)
            if {qa, qb} == {a, b}:
                side2 = s2
                # check the parameter orientation against the flip rule
                flipped = qa != a
                assert flipped == coord_flip(side, rot), "flip convention broke"
                break
        if side2 is None:
            raise AssertionError(f"no matching edge on {v2, n2}")
        return Transition((v2, n2), side2, rot)

    faces = None
    if voxels is not None:
        faces = [
            (tuple(v), nn)
            for v in voxels
            for nn in NORMALS
            if not solid(_add(tuple(v), NORMALS[nn]))
        ]
    return Surface(fn, faces=faces, origin=origin, name=name)


def build_cube() -> Surface:
    v = (0, 0, 0)
    s = voxel_surface({v}.__contains__, voxels=[v], origin=(v, "+z"), name="cube")
    return s


# ---------------------------------------------------------------------------
# unfoldings


def unfold_rotations(s: Surface, name: str = "") -> Surface:
    """Four direction-tagged copies of a rotating surface; translation result.

    A face (f, r) is f seen by flow that has accumulated rotation r; crossing
    a gluing of rotation rho sends it to (f', r - rho).
    """

    def fn(face, side):
        f, r = face
        base_side = rotate_side(side, -r)
        tr = s.transition(f, base_side)
        return Transition((tr.face, (r - tr.rot) % 360), OPPOSITE[side], 0)

    faces = None
    if s.is_finite:
        faces = [(f, r) for f in s.faces for r in (0, 90, 180, 270)]
    org = None
    if s.origin is not None:
        org = (s.origin, 0)
    return Surface(fn, faces=faces, origin=org, name=name or (s.name + "-4copy"))


def four_copy(x):
    """Reflection unfolding of a region, or rotation unfolding of a surface."""
    if isinstance(x, Region):
        return x.four_copy()
    if isinstance(x, Surface):
        if x.is_finite and x.is_translation:
            raise ValueError("surface is already a translation surface")
        return unfold_rotations(x)
    raise TypeError(f"cannot four_copy {type(x).__name__}")


# ---------------------------------------------------------------------------
# named menu (finite pieces; lazy families live in generators)

_FINITE = {
    "torus": build_torus,
    "L": build_l_surface,
    "gapwall": build_gapwall,
    "cube": build_cube,
    "cube-4copy": lambda: unfold_rotations(build_cube(), name="cube-4copy"),
    "square": build_rectangle,
    "snake": build_snake_region,
    "snake-4copy": lambda: build_snake_region().four_copy(),
    "square-4copy": lambda: build_rectangle().four_copy(),
    "strip": build_strip,
}


def build_named(name: str, **params):
    """Build a named surface or region; lazy families come from generators."""
    if name in _FINITE:
        return _FINITE[name](**params)
    from . import generators

    if name in generators.PROVIDERS:
        surf, _prof = generators.provide(name, **params)
        return surf
    raise ValueError(f"unknown surface name {name!r}")


def named_menu() -> list:
    from . import generators

    return sorted(_FINITE) + sorted(generators.PROVIDERS)
