"""Explicit automorphisms of (M, D) as words in four generators.

``GlobalXor(t)``   x -> x + t
``Shift(k)``       index i moves to i + k
``ConeXor(c, s)``  x -> x + s on the prefix cone c, identity elsewhere
``Pivot()``        the tree automorphism fixing the vertex ({};0), fixing the
                   cone P({};1) pointwise and exchanging the cones P({0};1)
                   and C({};0)

The first three fix the end of the tree at -inf and so preserve C as well as
D; none of them can move a CoPrefix cone onto a Prefix cone. ``Pivot`` is the
extra generator that does, which is what 3-transitivity and the Jordan
witnesses for CoPrefix cones need.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence, Union

from treelike.cones import Cone, Kind, cones_at
from treelike.seq_ends import End, d_from_c, first_diff, xor
from treelike.tree_model import (
    Direction,
    TreeVertex,
    branch_vertex,
    median,
    ray_step,
    ray_vertex,
    tree_distance,
)


@dataclass(frozen=True)
class GlobalXor:
    t: End

    def __call__(self, x: End) -> End:
        return xor(x, self.t)

    def inverse(self):
        return self

    def __str__(self):
        return f"GX{self.t}"


@dataclass(frozen=True)
class Shift:
    k: int

    def __call__(self, x: End) -> End:
        return End._trusted(tuple(i + self.k for i in x.support))

    def inverse(self):
        return Shift(-self.k)

    def __str__(self):
        return f"SH{{{self.k}}}"


@dataclass(frozen=True)
class ConeXor:
    cone: Cone
    s: End

    def __post_init__(self):
        if self.cone.kind is not Kind.PREFIX:
            raise ValueError("ConeXor acts on prefix cones only")
        if self.s.support and self.s.support[0] < self.cone.vertex.level:
            raise ValueError("ConeXor support must sit at or above the cone level")

    def __call__(self, x: End) -> End:
        return xor(x, self.s) if self.cone.contains(x) else x

    def inverse(self):
        return self

    def __str__(self):
        return f"CX{{{self.cone};{self.s}}}"


@dataclass(frozen=True)
class Pivot:
    def __call__(self, x: End) -> End:
        sup = x.support
        if not sup or sup[0] > 0:
            return x
        if sup[0] == 0:
            # P({0};1) -> C({};0): leading run of ones at 1..r sets the depth
            r = 0
            while r + 1 < len(sup) and sup[r + 1] == r + 1:
                r += 1
            return End._trusted((-(r + 1),) + tuple(n - 2 * r - 2 for n in sup[r + 1:]))
        r = -sup[0] - 1
        return End._trusted(tuple(range(0, r + 1)) + tuple(m + 2 * r + 2 for m in sup[1:]))

    def inverse(self):
        return self

    def __str__(self):
        return "PV{}"


Generator = Union[GlobalXor, Shift, ConeXor, Pivot]


@dataclass(frozen=True)
class Automorphism:
    gens: tuple = ()

    def __call__(self, x: End) -> End:
        for g in self.gens:
            x = g(x)
        return x

    def then(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(self.gens + other.gens)

    def inverse(self) -> "Automorphism":
        return Automorphism(tuple(g.inverse() for g in reversed(self.gens)))

    def reduced(self) -> "Automorphism":
        """Same map with adjacent generators merged and trivial ones dropped."""
        out: list = []
        for g in self.gens:
            top = out[-1] if out else None
            if isinstance(g, Pivot) and isinstance(top, Pivot):
                out.pop()
                continue
            if isinstance(g, Shift) and isinstance(top, Shift):
                g = Shift(top.k + g.k)
                out.pop()
            elif isinstance(g, GlobalXor) and isinstance(top, GlobalXor):
                g = GlobalXor(xor(top.t, g.t))
                out.pop()
            elif isinstance(g, ConeXor) and isinstance(top, ConeXor) and top.cone == g.cone:
                g = ConeXor(g.cone, xor(top.s, g.s))
                out.pop()
            trivial = (
                (isinstance(g, Shift) and g.k == 0)
                or (isinstance(g, GlobalXor) and not g.t.support)
                or (isinstance(g, ConeXor) and not g.s.support)
            )
            if not trivial:
                out.append(g)
        return Automorphism(tuple(out))

    def __str__(self):
        return " ".join(map(str, self.gens)) or "ID"

    @classmethod
    def parse(cls, text: str) -> "Automorphism":
        text = text.strip()
        if text in ("", "ID"):
            return cls()
        gens = []
        pos = 0
        token = re.compile(r"\s*(GX|SH|CX|PV)\{")
        while pos < len(text):
            m = token.match(text, pos)
            if m is None:
                raise ValueError(f"bad generator word at {text[pos:]!r}")
            tag = m.group(1)
            depth, j = 1, m.end()
            while depth:
                if j >= len(text):
                    raise ValueError("unbalanced braces in generator word")
                depth += {"{": 1, "}": -1}.get(text[j], 0)
                j += 1
            body = text[m.end(): j - 1]
            if tag == "GX":
                gens.append(GlobalXor(End.parse("{" + body + "}")))
            elif tag == "SH":
                gens.append(Shift(int(body)))
            elif tag == "PV":
                gens.append(Pivot())
            else:
                cone_txt, s_txt = body.rsplit(";", 1)
                gens.append(ConeXor(Cone.parse(cone_txt), End.parse(s_txt)))
            pos = j
            while pos < len(text) and text[pos].isspace():
                pos += 1
        return cls(tuple(gens))


IDENTITY = Automorphism()


def word(*gens: Generator) -> Automorphism:
    return Automorphism(tuple(gens))


def apply(g: Automorphism, x: End) -> End:
    return g(x)


def apply_vertex(g: Automorphism, v: TreeVertex) -> TreeVertex:
    """Image of a tree vertex: the median of the images of three ends meeting at v."""
    a, b, c = (cone.canonical_end() for cone in cones_at(v))
    return median(g(a), g(b), g(c))


def preserves_d(g: Automorphism, quadruples: Iterable[Sequence[End]]) -> bool:
    return all(d_from_c(*q) == d_from_c(*(g(x) for x in q)) for q in quadruples)


# ---------------------------------------------------------------------------
# witnesses

ORIGIN = TreeVertex((), 0)
_A0 = Cone.prefix((), 1)
_A1 = Cone.prefix((0,), 1)
_SWAP_01 = ConeXor(Cone.prefix((), 0), End((0,)))
_ZERO = End()
_ONE = End((0,))
_MINUS_ONE = End((-1,))


def _to_origin(v: TreeVertex) -> list:
    gens: list = []
    if v.prefix:
        gens.append(GlobalXor(End(v.prefix)))
    if v.level:
        gens.append(Shift(-v.level))
    return gens


def jordan_witness(c: Cone, x: End, y: End) -> Automorphism:
    """An automorphism swapping x and y and fixing every end outside c."""
    if not (c.contains(x) and c.contains(y)):
        raise ValueError(f"{x} and {y} must both lie in {c}")
    if c.kind is Kind.PREFIX:
        return word(ConeXor(c, xor(x, y)))
    h = Automorphism(tuple(_to_origin(c.vertex)) + (Pivot(),))
    hx, hy = h(x), h(y)
    return h.then(word(ConeXor(_A1, xor(hx, hy)))).then(h.inverse())


def _sector(x: End) -> int:
    """Which cone at the origin holds x: 0 for P({};1), 1 for P({0};1), 2 for C({};0)."""
    if _A0.contains(x):
        return 0
    if _A1.contains(x):
        return 1
    return 2


def _canonise(x: End, y: End, z: End) -> Automorphism:
    """A word sending (x, y, z) to ({}, {0}, {-1})."""
    gens = _to_origin(median(x, y, z))
    g = Automorphism(tuple(gens))
    x, y, z = g(x), g(y), g(z)
    extra = []

    def push(gen):
        nonlocal x, y, z
        extra.append(gen)
        x, y, z = gen(x), gen(y), gen(z)

    if _sector(x) == 1:
        push(_SWAP_01)
    elif _sector(x) == 2:
        push(Pivot())
        push(_SWAP_01)
    if _sector(y) == 2:
        push(Pivot())
    if x != _ZERO:
        push(ConeXor(_A0, x))
    if y != _ONE:
        push(ConeXor(_A1, xor(y, _ONE)))
    if z != _MINUS_ONE:
        push(Pivot())
        push(ConeXor(_A1, xor(z, _ONE)))
        push(Pivot())
    return Automorphism(tuple(gens) + tuple(extra))


def three_transitivity_witness(src: Sequence[End], dst: Sequence[End]) -> Automorphism:
    if len(set(src)) != 3 or len(set(dst)) != 3:
        raise ValueError("both triples must consist of three distinct ends")
    if tuple(src) == tuple(dst):
        return IDENTITY
    return _canonise(*src).then(_canonise(*dst).inverse()).reduced()


# ---------------------------------------------------------------------------
# tuple shapes


@dataclass(frozen=True)
class TupleShape:
    """The tree generated by a tuple, labelled by tuple positions.

    Each centre is named by the set of index triples whose median it is, so
    two shapes are label-respecting isomorphic iff they compare equal.
    ``edges`` carries path lengths; ``contracted()`` forgets them.
    """

    size: int
    centres: tuple
    edges: frozenset
    attach: tuple

    def contracted(self) -> "TupleShape":
        return TupleShape(self.size, self.centres, frozenset(e[:2] for e in self.edges), self.attach)

    def relabel(self, perm: Sequence[int]) -> "TupleShape":
        """Shape of the tuple whose entry perm[i] is this tuple's entry i."""

        def name(trs):
            return tuple(sorted(tuple(sorted(perm[i] for i in tr)) for tr in trs))

        edges = set()
        for e in self.edges:
            a, b = sorted((name(e[0]), name(e[1])))
            edges.add((a, b) + tuple(e[2:]))
        attach = [None] * self.size
        for i, c in enumerate(self.attach):
            attach[perm[i]] = name(c)
        return TupleShape(self.size, tuple(sorted(name(c) for c in self.centres)), frozenset(edges), tuple(attach))


def _fd_matrix(t: Sequence[End]):
    n = len(t)
    fd = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            fd[i][j] = fd[j][i] = first_diff(t[i], t[j])
    return fd


def shape(t: Sequence[End], fd=None) -> TupleShape:
    """TupleShape of t; ``fd`` may supply the first-difference matrix of t."""
    t = tuple(t)
    n = len(t)
    if len(set(t)) != n:
        raise ValueError("shape needs distinct entries")
    if n < 3:
        return TupleShape(n, (), frozenset(), ())
    if fd is None:
        fd = _fd_matrix(t)
    # centres keyed by (level, prefix) to skip TreeVertex validation
    by_vertex: dict[tuple, list] = {}
    for i, j, k in combinations(range(n), 3):
        # the median sits at the largest of the three first differences
        level, rep = fd[i][j], i
        if fd[j][k] > level:
            level, rep = fd[j][k], j
        if fd[i][k] > level:
            level, rep = fd[i][k], i
        by_vertex.setdefault((level, t[rep].below(level)), []).append((i, j, k))
    verts = list(by_vertex)
    names = [tuple(by_vertex[v]) for v in verts]
    m = len(verts)
    bits = [frozenset(p) for _, p in verts]
    dist = [[0] * m for _ in range(m)]
    for a, b in combinations(range(m), 2):
        (la, _), (lb, _) = verts[a], verts[b]
        low = min(la, lb)
        diff = [i for i in bits[a] ^ bits[b] if i < low]
        meet = min(diff) if diff else low
        dist[a][b] = dist[b][a] = la + lb - 2 * meet
    edges = set()
    for a, b in combinations(range(m), 2):
        dab = dist[a][b]
        if not any(c != a and c != b and dist[a][c] + dist[c][b] == dab for c in range(m)):
            key = tuple(sorted((names[a], names[b])))
            edges.add((key[0], key[1], dab))
    # direction of each entry at each centre: 0/1 for the extensions, 2 for down
    dirs = []
    for level, prefix in verts:
        dirs.append([x.bit(level) if x.below(level) == prefix else 2 for x in t])
    attach = []
    for i in range(n):
        for v in range(m):
            dv = dirs[v]
            if dv.count(dv[i]) == 1:
                attach.append(names[v])
                break
        else:  # pragma: no cover - every entry has a nearest centre when n >= 3
            raise AssertionError("entry without attachment centre")
    return TupleShape(n, tuple(sorted(names)), frozenset(edges), tuple(attach))


def qf_type_equal(t1: Sequence[End], t2: Sequence[End]) -> bool:
    if len(t1) != len(t2):
        raise ValueError("tuples of different length")
    return shape(t1).contracted() == shape(t2).contracted()


def weighted_shape_equal(t1: Sequence[End], t2: Sequence[End]) -> bool:
    if len(t1) != len(t2):
        raise ValueError("tuples of different length")
    return shape(t1) == shape(t2)


def atom_table(t: Sequence[End], only: int | None = None) -> tuple:
    """Equality atoms over index pairs and D atoms over index quadruples.

    D is evaluated from the matrix of first differences, each C(a;b,c) being
    fd(a,b) < fd(b,c). With ``only`` set, just the atoms mentioning that index.
    """
    n = len(t)
    inf = float("inf")
    fd = [[inf if a == b else first_diff(a, b) for b in t] for a in t]

    def c(a, b, e):
        return fd[a][b] < fd[b][e]

    def d(x, y, z, w):
        return (c(x, z, w) and c(y, z, w)) or (c(z, x, y) and c(w, x, y))

    rng = range(n)
    pairs = [(i, j) for i in rng for j in rng if only is None or only in (i, j)]
    quads = [(i, j, k, l) for i in rng for j in rng for k in rng for l in rng
             if only is None or only in (i, j, k, l)]
    return tuple(t[i] == t[j] for i, j in pairs) + tuple(d(*q) for q in quads)


# ---------------------------------------------------------------------------
# back and forth


def back_and_forth_extend(f: dict, a1: End) -> tuple[End, dict]:
    """Extend a partial isomorphism ``f`` to ``a1``, mirroring the new centre.

    ``f`` must induce an isomorphism of the generated trees including path
    lengths; a D-isomorphism alone can squeeze a segment that ``a1`` needs.
    """
    if a1 in f:
        raise ValueError(f"{a1} already in the domain")
    dom = tuple(f)
    rng = tuple(f[a] for a in dom)
    if len(set(rng)) != len(rng):
        raise ValueError("partial map is not injective")
    if not weighted_shape_equal(dom, rng):
        raise ValueError("partial map does not preserve the generated tree")
    n = len(dom)
    if n == 0:
        a2 = _ZERO
    elif n == 1:
        a2 = xor(rng[0], _ONE)
    elif n == 2:
        a2 = Cone.at(branch_vertex(rng[0], rng[1]), Direction.DOWN).canonical_end()
    else:
        a2 = _mirror(f, dom, a1)
    if a2 in rng:  # pragma: no cover - guarded by the shape check
        raise AssertionError("mirrored end collides with the range")
    g = dict(f)
    g[a1] = a2
    return a2, g


def _mirror(f: dict, dom: tuple, a1: End) -> End:
    from treelike.orbits import a_centres

    old = a_centres(dom)
    for b, c in combinations(dom, 2):
        v1 = median(a1, b, c)
        if v1 not in old:
            break
    else:  # pragma: no cover - there is always a new centre
        raise AssertionError("no new centre found")
    d = next(e for e in dom if e != b and e != c)
    u1 = median(b, c, d)
    side = b if ray_step(u1, a1) == ray_step(u1, b) else c
    delta = tree_distance(u1, v1)
    u2 = median(f[b], f[c], f[d])
    v2 = ray_vertex(u2, f[side], delta)
    used = {ray_step(v2, f[b]), ray_step(v2, f[c])}
    off = next(dd for dd in Direction if dd not in used)
    return Cone.at(v2, off).canonical_end()
