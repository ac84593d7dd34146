"""Polysquare regions: unions of grid cells with walls on the boundary.

A region models a billiard table (possibly infinite, like the wind-tree
plane).  Its ``four_copy`` unfolding replaces reflections by straight flow:
four sign-tagged copies of every cell, glued so that hitting a wall lands in
the mirror copy.  The result is an ordinary translation :class:`Surface`.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Optional

from .surface import OPPOSITE, Surface, Transition

# the four reflected copies, tagged by axis signs
COPIES = ((1, 1), (-1, 1), (1, -1), (-1, -1))

_STEP_AXIS = {"R": 0, "L": 0, "T": 1, "B": 1}
_STEP_SIGN = {"R": 1, "L": -1, "T": 1, "B": -1}


class Region:
    """Union of unit grid cells; finite set or lazy membership predicate."""

    def __init__(
        self,
        contains: Callable[[tuple], bool],
        cells: Optional[Iterable[tuple]] = None,
        origin: Optional[tuple] = None,
        name: str = "",
        scale: int = 1,
    ):
        self._contains = contains
        self._cells = sorted(cells) if cells is not None else None
        if origin is None and self._cells:
            origin = self._cells[0]
        self.origin = origin
        self.name = name
        # physical units per grid cell divide by this (wind-tree rescaling)
        self.scale = scale

    @staticmethod
    def from_cells(cells: Iterable[tuple], name: str = "", scale: int = 1) -> "Region":
        cs = set(map(tuple, cells))
        return Region(cs.__contains__, cells=cs, name=name)

    def contains(self, cell) -> bool:
        return bool(self._contains(tuple(cell)))

    @property
    def is_finite(self) -> bool:
        return self._cells is not None

    @property
    def cells(self) -> list:
        if self._cells is None:
            raise ValueError(f"region {self.name!r} is lazy; no cell list")
        return self._cells

    def walls(self, cell) -> list:
        """Sides of the cell that are boundary walls."""
        x, y = cell
        out = []
        for s, n in (("R", (x + 1, y)), ("T", (x, y + 1)), ("L", (x - 1, y)), ("B", (x, y - 1))):
            if not self.contains(n):
                out.append(s)
        return out

    def four_copy(self) -> Surface:
        """Reflection unfolding: translation surface on (cell, signs) faces."""
        contains = self.contains

        def fn(face, side):
            cell, g = face
            axis = _STEP_AXIS[side]
            step = _STEP_SIGN[side] * g[axis]
            nxt = (cell[0] + step, cell[1]) if axis == 0 else (cell[0], cell[1] + step)
            if contains(nxt):
                return Transition((nxt, g), OPPOSITE[side], 0)
            g2 = (-g[0], g[1]) if axis == 0 else (g[0], -g[1])
            return Transition((cell, g2), OPPOSITE[side], 0)

        faces = None
        if self._cells is not None:
            faces = [(c, g) for c in self._cells for g in COPIES]
        return Surface(
            fn,
            faces=faces,
            origin=(self.origin, COPIES[0]) if self.origin is not None else None,
            name=(self.name + "-4copy") if self.name else "region-4copy",
        )

    def __repr__(self):
        n = len(self._cells) if self._cells is not None else "lazy"
        return f"Region({self.name or 'unnamed'}, cells={n})"


def build_rectangle(w: int = 1, h: int = 1) -> Region:
    cells = [(x, y) for x in range(w) for y in range(h)]
    return Region.from_cells(cells, name=f"rect{w}x{h}")


def build_snake_region() -> Region:
    """Six-cell staircase: every unfolded street has 2 or 4 faces."""
    cells = [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 3)]
    return Region.from_cells(cells, name="snake")


def wind_tree_scale(a: Fraction, b: Fraction) -> int:
    """Grid refinement so obstacles sit on whole cells with even sides."""
    a, b = Fraction(a), Fraction(b)
    if not (0 < a < 1 and 0 < b < 1):
        raise ValueError("obstacle sides must be in (0, 1)")
    L = lcm(a.denominator, b.denominator)
    if (a * L) % 2 != 0 or (b * L) % 2 != 0:
        L *= 2
    return L


def build_wind_tree(a, b) -> Region:
    """Plane with an a-by-b rectangular obstacle centred on every lattice point.

    Cells are 1/L of the original unit; report lengths divided by ``scale``.
    """
    a, b = Fraction(a), Fraction(b)
    L = wind_tree_scale(a, b)
    ha = int(a * L) // 2  # obstacle half-width in cells
    hb = int(b * L) // 2

    def contains(cell):
        x, y = cell
        return not ((x % L < ha or x % L >= L - ha) and (y % L < hb or y % L >= L - hb))

    return Region(contains, origin=(ha, hb), name=f"windtree({a},{b})", scale=L)


def build_wind_tree_config(a, b, sign, seed: int = 0) -> Region:
    """Wind-tree with 3x3 blocks of obstacle sites; centre site optional.

    ``sign`` maps a block (I, J) to +1 (centre obstacle present) or -1; pass
    a callable, or one of "plus"/"minus"/"random" (seeded).
    """
    a, b = Fraction(a), Fraction(b)
    L = wind_tree_scale(a, b)
    ha = int(a * L) // 2
    hb = int(b * L) // 2

    if callable(sign):
        sgn = sign
    elif sign == "plus":
        sgn = lambda I, J: 1
    elif sign == "minus":
        sgn = lambda I, J: -1
    elif sign == "random":
        sgn = lambda I, J: 1 if random.Random(f"{seed}:{I}:{J}").random() < 0.5 else -1
    else:
        raise ValueError(f"bad sign spec {sign!r}")

    def contains(cell):
        x, y = cell
        if not ((x % L < ha or x % L >= L - ha) and (y % L < hb or y % L >= L - hb)):
            return True  # not at an obstacle site
        cx, cy = (x + ha) // L, (y + hb) // L  # obstacle centre indices
        if cx % 3 == 1 and cy % 3 == 1 and sgn(cx // 3, cy // 3) < 0:
            return True  # centre site removed in a minus block
        return False

    return Region(contains, origin=(ha, hb), name=f"windtree3({a},{b})", scale=L)


def build_strip(period: int = 2, heights=2, name: str = "") -> Region:
    """Infinite corridor row plus a tower every ``period`` columns.

    ``heights`` is a constant or a callable tower-index -> height; towers
    include their corridor cell, so a height-2 tower adds one cell on top.
    """
    if callable(heights):
        hfn = heights
    else:
        hv = int(heights)
        hfn = lambda k: hv

    def contains(cell):
        x, y = cell
        if y == 0:
            return True
        if y < 0 or x % period != 0:
            return False
        return y < hfn(x // period)

    return Region(contains, origin=(0, 0), name=name or f"strip(p={period})")
