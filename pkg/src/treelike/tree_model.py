"""The trivalent tree whose vertices are bounded prefixes of ends.

A vertex ``(prefix; n)`` is the restriction of some end to the indices below
``n``. Its three neighbours are the restriction one step down and the two
extensions by a bit at index ``n``. Ends are the rays that keep extending.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator

from treelike.seq_ends import INF, End, first_diff


class Direction(enum.Enum):
    DOWN = "down"
    EXT0 = "ext0"
    EXT1 = "ext1"

    @staticmethod
    def ext(bit: int) -> "Direction":
        return Direction.EXT1 if bit else Direction.EXT0


@dataclass(frozen=True, slots=True)
class TreeVertex:
    prefix: tuple[int, ...]
    level: int

    def __post_init__(self):
        prefix = tuple(self.prefix)
        if any(a >= b for a, b in zip(prefix, prefix[1:])):
            raise ValueError(f"prefix must be strictly increasing: {prefix}")
        if prefix and prefix[-1] >= self.level:
            raise ValueError(f"prefix index {prefix[-1]} not below level {self.level}")
        object.__setattr__(self, "prefix", prefix)

    @classmethod
    def of_end(cls, x: End, n: int) -> "TreeVertex":
        return cls(x.below(n), n)

    @classmethod
    def parse(cls, text: str) -> "TreeVertex":
        m = re.fullmatch(r"\s*\(\s*\{([-0-9,\s]*)\}\s*;\s*(-?\d+)\s*\)\s*", text)
        if m is None:
            raise ValueError(f"not a TreeVertex literal: {text!r}")
        body = m.group(1).strip()
        prefix = tuple(int(t) for t in body.split(",")) if body else ()
        return cls(prefix, int(m.group(2)))

    def __str__(self):
        return "({" + ",".join(map(str, self.prefix)) + "};" + str(self.level) + ")"

    def step(self, d: Direction) -> "TreeVertex":
        n = self.level
        if d is Direction.DOWN:
            return TreeVertex(tuple(i for i in self.prefix if i < n - 1), n - 1)
        if d is Direction.EXT1:
            return TreeVertex(self.prefix + (n,), n + 1)
        return TreeVertex(self.prefix, n + 1)

    def direction_to(self, other: "TreeVertex") -> Direction:
        """Direction of the first edge on the path from self to other."""
        if other == self:
            raise ValueError("no direction from a vertex to itself")
        n = self.level
        if other.level > n and tuple(i for i in other.prefix if i < n) == self.prefix:
            return Direction.ext(1 if n in other.prefix else 0)
        return Direction.DOWN


def neighbors(v: TreeVertex) -> dict[Direction, TreeVertex]:
    return {d: v.step(d) for d in Direction}


def _meet_level(u: TreeVertex, v: TreeVertex) -> int:
    m = min(u.level, v.level)
    diff = {i for i in u.prefix if i < m} ^ {i for i in v.prefix if i < m}
    return min(diff) if diff else m


def tree_distance(u: TreeVertex, v: TreeVertex) -> int:
    ell = _meet_level(u, v)
    return (u.level - ell) + (v.level - ell)


def tree_path(u: TreeVertex, v: TreeVertex) -> list[TreeVertex]:
    """Vertices of the geodesic from u to v, both included."""
    ell = _meet_level(u, v)
    up = [TreeVertex(tuple(i for i in u.prefix if i < n), n) for n in range(u.level, ell - 1, -1)]
    down = [TreeVertex(tuple(i for i in v.prefix if i < n), n) for n in range(ell + 1, v.level + 1)]
    return up + down


def ray_step(v: TreeVertex, x: End) -> Direction:
    n = v.level
    if x.below(n) == v.prefix:
        return Direction.ext(x.bit(n))
    return Direction.DOWN


def ray(v: TreeVertex, x: End) -> Iterator[TreeVertex]:
    """The vertices of S(v, x), starting at v. Infinite."""
    while True:
        yield v
        v = v.step(ray_step(v, x))


def ray_vertex(v: TreeVertex, x: End, d: int) -> TreeVertex:
    """The vertex at distance d from v along the ray toward x."""
    for _ in range(d):
        v = v.step(ray_step(v, x))
    return v


@dataclass(frozen=True)
class Line:
    """The two-way path l(x, y): two upward rays glued at the branch vertex."""

    x: End
    y: End
    branch: TreeVertex

    def __contains__(self, w: TreeVertex) -> bool:
        if w.level < self.branch.level:
            return False
        return w.prefix == self.x.below(w.level) or w.prefix == self.y.below(w.level)


def line(x: End, y: End) -> Line:
    if x == y:
        raise ValueError("a line needs two distinct ends")
    i = first_diff(x, y)
    return Line(x, y, TreeVertex.of_end(x, i))


def branch_vertex(x: End, y: End) -> TreeVertex:
    return line(x, y).branch


def median(x: End, y: End, z: End) -> TreeVertex:
    """The vertex at which x, y, z lie in three distinct cones."""
    if x == y or y == z or x == z:
        raise ValueError("median needs three distinct ends")
    pairs = ((first_diff(x, y), x), (first_diff(y, z), y), (first_diff(x, z), x))
    level, rep = max(pairs, key=lambda p: p[0])
    return TreeVertex.of_end(rep, level)


def lines_disjoint(x: End, y: End, z: End, w: End) -> bool:
    """Whether l(x,y) and l(z,w) share no vertex; x != y and z != w."""
    cross = max(first_diff(x, z), first_diff(x, w), first_diff(y, z), first_diff(y, w))
    return cross < max(first_diff(x, y), first_diff(z, w))


def d_from_tree(x: End, y: End, z: End, w: End) -> bool:
    if x == y:
        return x != z and x != w
    if z == w:
        return x != z and y != z
    if len({x, y, z, w}) < 4:
        return False
    return lines_disjoint(x, y, z, w)


def e_a(a: TreeVertex, x: End, y: End) -> bool:
    return ray_step(a, x) == ray_step(a, y)


def line_vertices_window(x: End, y: End, top: int) -> set[TreeVertex]:
    """Vertices of l(x, y) with level at most ``top``."""
    lo = first_diff(x, y)
    out = set()
    for n in range(lo, top + 1):
        out.add(TreeVertex.of_end(x, n))
        out.add(TreeVertex.of_end(y, n))
    return out


def lines_disjoint_by_window(x: End, y: End, z: End, w: End) -> bool:
    """Disjointness of l(x,y) and l(z,w) by materialising both lines.

    Above the largest finite pairwise first difference every prefix is unique
    to its end, so intersecting up to that level plus one decides the question.
    """
    ends = (x, y, z, w)
    finite = [first_diff(a, b) for a in ends for b in ends if a != b]
    top = max(f for f in finite if f is not INF) + 1
    return not (line_vertices_window(x, y, top) & line_vertices_window(z, w, top))
