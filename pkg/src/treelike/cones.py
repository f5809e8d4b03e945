"""Cones in canonical form and the boolean algebra of finite cone unions.

``Prefix(s; n)`` is the set of ends agreeing with ``s`` below ``n``;
``CoPrefix(s; n)`` is its complement. Every cone has exactly one such form.
"""
from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from typing import Iterable

from treelike.seq_ends import End
from treelike.tree_model import Direction, TreeVertex, ray_step, tree_path


class Kind(enum.Enum):
    PREFIX = "P"
    COPREFIX = "C"


class Relation(enum.Enum):
    EQUAL = "equal"
    DISJOINT = "disjoint"
    FIRST_INSIDE_SECOND = "first_inside_second"
    SECOND_INSIDE_FIRST = "second_inside_first"
    UNION_IS_EVERYTHING = "union_is_everything"


@dataclass(frozen=True, slots=True)
class Cone:
    kind: Kind
    vertex: TreeVertex

    @classmethod
    def prefix(cls, prefix: Iterable[int], level: int) -> "Cone":
        return cls(Kind.PREFIX, TreeVertex(tuple(prefix), level))

    @classmethod
    def coprefix(cls, prefix: Iterable[int], level: int) -> "Cone":
        return cls(Kind.COPREFIX, TreeVertex(tuple(prefix), level))

    @classmethod
    def at(cls, v: TreeVertex, d: Direction) -> "Cone":
        """The cone at v in direction d, i.e. the E_v-class leaving along d."""
        if d is Direction.DOWN:
            return cls(Kind.COPREFIX, v)
        return cls(Kind.PREFIX, v.step(d))

    @classmethod
    def parse(cls, text: str) -> "Cone":
        m = re.fullmatch(r"\s*([PC])\(\s*\{?([-0-9,\s]*)\}?\s*;\s*(-?\d+)\s*\)\s*", text)
        if m is None:
            raise ValueError(f"not a Cone literal: {text!r}")
        body = m.group(2).strip()
        prefix = tuple(int(t) for t in body.split(",")) if body else ()
        return cls(Kind(m.group(1)), TreeVertex(prefix, int(m.group(3))))

    def __str__(self):
        v = self.vertex
        return f"{self.kind.value}({{{','.join(map(str, v.prefix))}}};{v.level})"

    @property
    def base_vertex(self) -> TreeVertex:
        if self.kind is Kind.PREFIX:
            return self.vertex.step(Direction.DOWN)
        return self.vertex

    @property
    def direction(self) -> Direction:
        """Direction at base_vertex through which the cone leaves."""
        if self.kind is Kind.COPREFIX:
            return Direction.DOWN
        n = self.vertex.level
        return Direction.ext(1 if n - 1 in self.vertex.prefix else 0)

    def contains(self, x: End) -> bool:
        inside = x.below(self.vertex.level) == self.vertex.prefix
        return inside if self.kind is Kind.PREFIX else not inside

    def canonical_end(self) -> End:
        """A deterministic member: the defining prefix, extended by zeros."""
        v = self.vertex
        if self.kind is Kind.PREFIX:
            return End(v.prefix)
        # flip the bit just below the level
        n = v.level - 1
        low = tuple(i for i in v.prefix if i < n)
        return End(low if n in v.prefix else low + (n,))


def contains(c: Cone, x: End) -> bool:
    return c.contains(x)


def complement(c: Cone) -> Cone:
    kind = Kind.COPREFIX if c.kind is Kind.PREFIX else Kind.PREFIX
    return Cone(kind, c.vertex)


def cones_at(v: TreeVertex) -> tuple[Cone, Cone, Cone]:
    return (Cone.at(v, Direction.EXT0), Cone.at(v, Direction.EXT1), Cone.at(v, Direction.DOWN))


def _prefix_nested(a: TreeVertex, b: TreeVertex) -> bool:
    """Prefix(a) is a subset of Prefix(b)."""
    return a.level >= b.level and tuple(i for i in a.prefix if i < b.level) == b.prefix


def _compatible(a: TreeVertex, b: TreeVertex) -> bool:
    return _prefix_nested(a, b) or _prefix_nested(b, a)


def relate(c1: Cone, c2: Cone) -> Relation:
    """Classify a pair of cones. A complementary pair counts as UNION_IS_EVERYTHING."""
    if c1 == c2:
        return Relation.EQUAL
    if c2 == complement(c1):
        return Relation.UNION_IS_EVERYTHING
    a, b = c1.vertex, c2.vertex
    p1 = c1.kind is Kind.PREFIX
    p2 = c2.kind is Kind.PREFIX
    if p1 and p2:
        if not _compatible(a, b):
            return Relation.DISJOINT
        return Relation.FIRST_INSIDE_SECOND if _prefix_nested(a, b) else Relation.SECOND_INSIDE_FIRST
    if p1 and not p2:
        if not _compatible(a, b):
            return Relation.FIRST_INSIDE_SECOND
        return Relation.DISJOINT if _prefix_nested(a, b) else Relation.UNION_IS_EVERYTHING
    if p2 and not p1:
        if not _compatible(a, b):
            return Relation.SECOND_INSIDE_FIRST
        return Relation.DISJOINT if _prefix_nested(b, a) else Relation.UNION_IS_EVERYTHING
    if not _compatible(a, b):
        return Relation.UNION_IS_EVERYTHING
    return Relation.SECOND_INSIDE_FIRST if _prefix_nested(a, b) else Relation.FIRST_INSIDE_SECOND


# ---------------------------------------------------------------------------
# definable sets


def _cone_sort_key(c: Cone):
    return (c.vertex.level, c.vertex.prefix, c.kind.value)


@dataclass(frozen=True)
class DefinableSet:
    """``(union(cones) | plus) - minus``, or ``M - minus`` when ``universe``.

    In normal form the cones are exactly the maximal cones inside the set, so
    equal sets have equal representations.
    """

    cones: tuple[Cone, ...] = ()
    plus: frozenset = field(default_factory=frozenset)
    minus: frozenset = field(default_factory=frozenset)
    universe: bool = False

    def contains(self, x: End) -> bool:
        if x in self.minus:
            return False
        if self.universe or x in self.plus:
            return True
        return any(c.contains(x) for c in self.cones)

    def clopen_contains(self, x: End) -> bool:
        return self.universe or any(c.contains(x) for c in self.cones)

    @property
    def is_empty(self) -> bool:
        return not self.universe and not self.cones and not self.plus

    def to_json(self) -> dict:
        return {
            "universe": self.universe,
            "cones": [str(c) for c in self.cones],
            "plus": sorted(str(x) for x in self.plus),
            "minus": sorted(str(x) for x in self.minus),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


EMPTY = DefinableSet()
EVERYTHING = DefinableSet(universe=True)


def _hull(vertices: Iterable[TreeVertex]) -> set[TreeVertex]:
    vs = list(dict.fromkeys(vertices))
    if not vs:
        return set()
    root = vs[0]
    out = {root}
    for v in vs[1:]:
        out.update(tree_path(root, v))
    return out


def _boundary_cones(hull: set[TreeVertex]) -> list[Cone]:
    out = []
    for v in hull:
        for d in Direction:
            if v.step(d) not in hull:
                out.append(Cone.at(v, d))
    return out


def _merge(selected: set[Cone]) -> DefinableSet:
    """Collapse disjoint cones to the maximal ones, deepest sibling pair first."""
    cones = set(selected)
    while True:
        by_base: dict[TreeVertex, list[Cone]] = {}
        for c in cones:
            by_base.setdefault(c.base_vertex, []).append(c)
        groups = [(v, cs) for v, cs in by_base.items() if len(cs) >= 2]
        if not groups:
            break
        v, cs = max(groups, key=lambda g: (g[0].level, g[0].prefix))
        if len(cs) == 3:
            return EVERYTHING
        a, b = cs
        missing = next(d for d in Direction if d not in (a.direction, b.direction))
        cones -= {a, b}
        cones.add(complement(Cone.at(v, missing)))
    return DefinableSet(tuple(sorted(cones, key=_cone_sort_key)))


def _clopen_combine(parts: list[DefinableSet], rule) -> DefinableSet:
    """Normal form of the clopen set ``rule(memberships)`` over the clopen parts."""
    vertices = [c.base_vertex for p in parts for c in p.cones]
    if not vertices:
        full = rule([p.universe for p in parts])
        return EVERYTHING if full else EMPTY
    hull = _hull(vertices)
    pieces = _boundary_cones(hull)
    chosen = set()
    for piece in pieces:
        probe = piece.canonical_end()
        if rule([p.clopen_contains(probe) for p in parts]):
            chosen.add(piece)
    if not chosen:
        return EMPTY
    if len(chosen) == len(pieces):
        return EVERYTHING
    return _merge(chosen)


def _combine(parts: list[DefinableSet], rule) -> DefinableSet:
    clopen = _clopen_combine(parts, rule)
    candidates = set()
    for p in parts:
        candidates |= p.plus | p.minus
    plus, minus = set(), set()
    for x in candidates:
        actual = rule([p.contains(x) for p in parts])
        base = clopen.clopen_contains(x)
        if actual and not base:
            plus.add(x)
        elif base and not actual:
            minus.add(x)
    return DefinableSet(clopen.cones, frozenset(plus), frozenset(minus), clopen.universe)


def normalize(ds: DefinableSet) -> DefinableSet:
    return _combine([ds], lambda m: m[0])


def union_collapse(cones: Iterable[Cone]) -> DefinableSet:
    parts = [DefinableSet((c,)) for c in cones]
    if not parts:
        return EMPTY
    return _combine(parts, any)


def ds_complement(a: DefinableSet) -> DefinableSet:
    return _combine([a], lambda m: not m[0])


def ds_union(a: DefinableSet, b: DefinableSet) -> DefinableSet:
    return _combine([a, b], any)


def ds_intersect(a: DefinableSet, b: DefinableSet) -> DefinableSet:
    return _combine([a, b], all)


def ds_difference(a: DefinableSet, b: DefinableSet) -> DefinableSet:
    return _combine([a, b], lambda m: m[0] and not m[1])


def ds_points(points: Iterable[End]) -> DefinableSet:
    return DefinableSet(plus=frozenset(points))


def is_normal(ds: DefinableSet) -> bool:
    """Structural normal-form check: disjoint, merge-free cones, tight exceptions."""
    if ds.universe and (ds.cones or ds.plus):
        return False
    cs = ds.cones
    for i, a in enumerate(cs):
        for b in cs[i + 1:]:
            if relate(a, b) is not Relation.DISJOINT:
                return False
            if a.base_vertex == b.base_vertex:
                return False
    if any(ds.clopen_contains(x) for x in ds.plus):
        return False
    if any(not ds.clopen_contains(x) for x in ds.minus):
        return False
    return normalize(ds) == ds


def cone_of(v: TreeVertex, x: End) -> Cone:
    """The cone at v containing x."""
    return Cone.at(v, ray_step(v, x))
