"""A-centres, A-vertices, and the orbits of the pointwise stabiliser of a
finite set A on the ends outside A.

The orbits come in two kinds. A ``TypeA`` orbit is a single cone at a
non-centre A-vertex that misses A. A ``TypeB`` family belongs to a pair
(centre u, a in A) whose cone at u meets A only in a; its members are the
off-ray cones at the vertices of S(u, a) past u, one orbit per depth.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from treelike.cones import (
    EMPTY,
    complement,
    cones_at,
    Cone,
    DefinableSet,
    cone_of,
    ds_difference,
    ds_points,
    ds_union,
    union_collapse,
)
from treelike.seq_ends import End, first_diff
from treelike.tree_model import Direction, TreeVertex, median, ray_step, ray_vertex, tree_distance, tree_path


def a_centres(A: Iterable[End]) -> frozenset[TreeVertex]:
    A = list(dict.fromkeys(A))
    return frozenset(median(a, b, c) for a, b, c in combinations(A, 3))


@dataclass(frozen=True)
class VertexTree:
    vertices: frozenset
    edges: frozenset  # frozensets {u, v}


def a_vertices(A: Iterable[End]) -> VertexTree:
    centres = sorted(a_centres(A), key=lambda v: (v.level, v.prefix))
    verts = set(centres)
    for u, v in combinations(centres, 2):
        verts.update(tree_path(u, v))
    edges = set()
    for v in verts:
        for d in Direction:
            w = v.step(d)
            if w in verts:
                edges.add(frozenset((v, w)))
    return VertexTree(frozenset(verts), frozenset(edges))


@dataclass(frozen=True)
class TypeA:
    cone: Cone

    def contains(self, x: End) -> bool:
        return self.cone.contains(x)

    def __str__(self):
        return f"A[{self.cone}]"


@dataclass(frozen=True)
class TypeB:
    centre: TreeVertex
    anchor: End

    def vertex_at(self, depth: int) -> TreeVertex:
        return ray_vertex(self.centre, self.anchor, depth)

    def cone_at_depth(self, depth: int) -> Cone:
        """The off-ray cone at the depth-th vertex past the centre (depth >= 1)."""
        if depth < 1:
            raise ValueError("TypeB depths start at 1")
        v = self.vertex_at(depth)
        back = v.direction_to(self.vertex_at(depth - 1))
        forward = ray_step(v, self.anchor)
        off = next(d for d in Direction if d is not back and d is not forward)
        return Cone.at(v, off)

    def tail_cone(self, depth: int) -> Cone:
        """Cone whose removal of the anchor is the union of all depths >= depth."""
        return cone_of(self.vertex_at(depth - 1), self.anchor)

    @cached_property
    def _cone(self) -> Cone:
        return cone_of(self.centre, self.anchor)

    @cached_property
    def _anchor_descent(self) -> int:
        return _descent(self.centre, self.anchor)

    def depth_of(self, x: End) -> int | None:
        """Depth of the family member containing x, or None if x is not in the family."""
        if x == self.anchor or not self._cone.contains(x):
            return None
        n = self.centre.level
        la, lx = self._anchor_descent, _descent(self.centre, x)
        if la != lx:
            # the two rays part while still going down
            return n - max(la, lx)
        return (n - la) + (first_diff(x, self.anchor) - la)

    def contains(self, x: End) -> bool:
        return self.depth_of(x) is not None

    def unroll(self, depth: int) -> list[Cone]:
        return [self.cone_at_depth(d) for d in range(1, depth + 1)]

    def __str__(self):
        return f"B[{self.centre};{self.anchor}]"


@dataclass(frozen=True)
class OrbitClassification:
    A: tuple[End, ...]
    centres: frozenset
    tree: VertexTree
    type_a: tuple[TypeA, ...]
    type_b: tuple[TypeB, ...]

    def claims(self, x: End) -> list:
        """All descriptors whose orbit contains x."""
        return [o for o in (*self.type_a, *self.type_b) if o.contains(x)]

    def locate(self, x: End) -> tuple:
        """Identify the single orbit of x outside A: (descriptor, depth or None)."""
        hits = self.claims(x)
        if len(hits) != 1:
            raise ValueError(f"{x} is claimed by {len(hits)} descriptors")
        o = hits[0]
        return (o, o.depth_of(x) if isinstance(o, TypeB) else None)

    def representatives(self, depth: int) -> list[End]:
        """One canonical end per orbit, TypeB families cut off at ``depth``."""
        reps = [o.cone.canonical_end() for o in self.type_a]
        for fam in self.type_b:
            reps.extend(c.canonical_end() for c in fam.unroll(depth))
        return reps


def _descent(v: TreeVertex, x: End) -> int:
    """Lowest level visited by the ray from v toward x."""
    diff = set(x.below(v.level)) ^ set(v.prefix)
    return min(diff) if diff else v.level


def _vkey(v: TreeVertex):
    return (v.level, v.prefix)


def orbit_classification(A: Sequence[End]) -> OrbitClassification:
    A = tuple(dict.fromkeys(A))
    if len(A) < 3:
        raise ValueError("orbit classification needs |A| >= 3")
    centres = a_centres(A)
    tree = a_vertices(A)
    type_a = []
    for w in sorted(tree.vertices - centres, key=_vkey):
        for d in Direction:
            c = Cone.at(w, d)
            if not any(c.contains(a) for a in A):
                type_a.append(TypeA(c))
    type_b = []
    for u in sorted(centres, key=_vkey):
        for a in A:
            U = cone_of(u, a)
            if all(b == a or not U.contains(b) for b in A):
                type_b.append(TypeB(u, a))
    return OrbitClassification(A, centres, tree, tuple(type_a), tuple(type_b))


@dataclass(frozen=True)
class BSelection:
    """Depths chosen from one TypeB family: finitely many, plus optionally a full tail."""

    family: TypeB
    depths: frozenset = frozenset()
    tail_from: int | None = None

    def __post_init__(self):
        if not isinstance(self.depths, (frozenset, set, tuple, list)):
            raise ValueError("TypeB depths must be a finite collection")
        depths = frozenset(self.depths)
        if any(not isinstance(d, int) or d < 1 for d in depths):
            raise ValueError("TypeB depths must be integers >= 1")
        if self.tail_from is not None and self.tail_from < 1:
            raise ValueError("tail must start at depth >= 1")
        object.__setattr__(self, "depths", depths)

    def contains(self, x: End) -> bool:
        d = self.family.depth_of(x)
        if d is None:
            return False
        return d in self.depths or (self.tail_from is not None and d >= self.tail_from)


def normalize_from_orbits(
    A: Sequence[End],
    selections: Iterable,
    plus: Iterable[End] = (),
    minus: Iterable[End] = (),
) -> DefinableSet:
    """Normal form of a union of selected orbits, adjusted by points of A."""
    A = tuple(dict.fromkeys(A))
    oc = orbit_classification(A)
    known_a = set(oc.type_a)
    known_b = set(oc.type_b)
    plus, minus = frozenset(plus), frozenset(minus)
    if not (plus | minus) <= set(A):
        raise ValueError("exceptional points must lie in A")
    cones: list[Cone] = []
    anchors_removed = set()
    for sel in selections:
        if isinstance(sel, TypeA):
            if sel not in known_a:
                raise ValueError(f"{sel} is not a TypeA orbit of A")
            cones.append(sel.cone)
        elif isinstance(sel, BSelection):
            if sel.family not in known_b:
                raise ValueError(f"{sel.family} is not a TypeB family of A")
            tail = sel.tail_from
            for d in sorted(sel.depths):
                if tail is None or d < tail:
                    cones.append(sel.family.cone_at_depth(d))
            if tail is not None:
                cones.append(sel.family.tail_cone(tail))
                anchors_removed.add(sel.family.anchor)
        else:
            raise ValueError(f"unsupported orbit selection {sel!r}; infinite selections must be tails")
    ds = union_collapse(cones) if cones else EMPTY
    if anchors_removed:
        ds = ds_difference(ds, ds_points(anchors_removed))
    if plus:
        ds = ds_union(ds, ds_points(plus))
    if minus:
        ds = ds_difference(ds, ds_points(minus))
    return ds


def on_ray(v: TreeVertex, a: End, w: TreeVertex) -> bool:
    return ray_vertex(v, a, tree_distance(v, w)) == w


def is_fraisse_shaped(ds: DefinableSet, A: Sequence[End]) -> bool:
    """Whether every cone is at an A-vertex missing A, or at a vertex of some
    S(v, a) with v an A-centre, and all exceptions lie in A."""
    A = tuple(dict.fromkeys(A))
    if not (ds.plus | ds.minus) <= set(A):
        return False
    if ds.universe or not ds.cones:
        return True
    oc = orbit_classification(A)

    def admissible(c: Cone) -> bool:
        v = c.base_vertex
        if v in oc.tree.vertices and not any(c.contains(a) for a in A):
            return True
        return any(on_ray(u, a, v) for u in oc.centres for a in A)

    for c in ds.cones:
        if admissible(c):
            continue
        # a maximal cone M - O for an orbit cone O is based just inside O;
        # it is still the union of the other two cones at O's base
        other = complement(c)
        if all(admissible(d) for d in cones_at(other.base_vertex) if d != other):
            continue
        return False
    return True
