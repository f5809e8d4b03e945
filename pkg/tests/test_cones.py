import random

from hypothesis import given

from conftest import E, ends
from treelike.cones import (
    EMPTY,
    Cone,
    Relation,
    complement,
    cone_of,
    cones_at,
    contains,
    ds_complement,
    ds_difference,
    ds_intersect,
    ds_points,
    ds_union,
    is_normal,
    relate,
    union_collapse,
)
from treelike.seq_ends import random_end
from treelike.tree_model import Direction, TreeVertex, e_a
from treelike.sampling import random_cone, random_vertex

P, C = Cone.parse, Cone.parse
V = TreeVertex.parse


def sample(n=1000, seed=0, window=8):
    rng = random.Random(seed)
    return [random_end(rng, window) for _ in range(n)]


def test_cones_at_origin():
    assert set(cones_at(V("({};0)"))) == {P("P({};1)"), P("P({0};1)"), C("C({};0)")}


def test_cones_at_partition_and_match_e_a():
    rng = random.Random(2)
    xs = sample(300, 1)
    for _ in range(30):
        v = random_vertex(rng, 6)
        cs = cones_at(v)
        for x in xs:
            assert sum(c.contains(x) for c in cs) == 1
        for x, y in zip(xs, xs[1:]):
            same = any(c.contains(x) and c.contains(y) for c in cs)
            assert same == e_a(v, x, y)


def test_cone_at_matches_direction_classes():
    # exhaustive over a radius-2 ball of vertices around the origin
    from treelike.tree_model import neighbors

    ball = {V("({};0)")}
    for _ in range(2):
        ball |= {w for v in ball for w in neighbors(v).values()}
    xs = sample(400, 3)
    for v in ball:
        for d in Direction:
            c = Cone.at(v, d)
            assert c.base_vertex == v and c.direction is d
            for x in xs:
                from treelike.tree_model import ray_step

                assert c.contains(x) == (ray_step(v, x) is d)


def test_contains_examples():
    c = P("P({};0)")
    assert contains(c, E("{3}"))
    assert not contains(c, E("{-1}"))
    assert complement(c) == C("C({};0)")


@given(ends())
def test_complement_law(x):
    for c in (P("P({1};3)"), C("C({-2};0)")):
        assert c.contains(x) != complement(c).contains(x)


def test_relate_examples():
    assert relate(P("P({0};1)"), P("P({};0)")) is Relation.FIRST_INSIDE_SECOND
    assert relate(P("P({};1)"), P("P({0};1)")) is Relation.DISJOINT
    c = P("P({2};4)")
    assert relate(c, complement(c)) is Relation.UNION_IS_EVERYTHING
    assert relate(c, c) is Relation.EQUAL


def test_relate_agrees_with_membership():
    rng = random.Random(4)
    xs = sample(600, 5, 6)
    for _ in range(300):
        a, b = random_cone(rng, 4, 3), random_cone(rng, 4, 3)
        ma = [a.contains(x) for x in xs]
        mb = [b.contains(x) for x in xs]
        r = relate(a, b)
        if r is Relation.EQUAL:
            assert ma == mb
        elif r is Relation.DISJOINT:
            assert not any(p and q for p, q in zip(ma, mb))
        elif r is Relation.FIRST_INSIDE_SECOND:
            assert all(q for p, q in zip(ma, mb) if p)
        elif r is Relation.SECOND_INSIDE_FIRST:
            assert all(p for p, q in zip(ma, mb) if q)
        else:
            assert all(p or q for p, q in zip(ma, mb))


def test_union_collapse_examples():
    ds = union_collapse([P("P({};1)"), P("P({0};1)")])
    assert ds.cones == (P("P({};0)"),)
    c = P("P({3};5)")
    assert union_collapse([c, complement(c)]).universe
    assert union_collapse([c]).cones == (c,)
    assert union_collapse([]).is_empty


def test_boolean_examples():
    a = union_collapse([P("P({};1)")])
    assert ds_complement(a).cones == (C("C({};1)"),)
    siblings = union_collapse([P("P({};1)"), P("P({0};1)")])
    comp = ds_complement(siblings)
    assert comp.cones == (C("C({};0)"),)
    for x in sample(1000, 6):
        assert comp.contains(x) == (not siblings.contains(x))
    assert ds_intersect(a, ds_complement(a)).is_empty


def test_boolean_ops_agree_pointwise():
    rng = random.Random(7)
    xs = sample(1000, 8, 6)
    for _ in range(40):
        a = union_collapse([random_cone(rng, 4, 3) for _ in range(rng.randint(0, 3))])
        b = union_collapse([random_cone(rng, 4, 3) for _ in range(rng.randint(0, 3))])
        pts = ds_points([xs[rng.randrange(len(xs))] for _ in range(2)])
        a = ds_union(a, pts) if rng.random() < 0.5 else ds_difference(a, pts)
        for op, f in ((ds_union, lambda p, q: p or q), (ds_intersect, lambda p, q: p and q),
                      (ds_difference, lambda p, q: p and not q)):
            r = op(a, b)
            assert is_normal(r)
            for x in xs:
                assert r.contains(x) == f(a.contains(x), b.contains(x))
        assert all(ds_complement(a).contains(x) != a.contains(x) for x in xs)


def test_points_and_empty():
    pts = ds_points([E("{1}")])
    assert pts.contains(E("{1}")) and not pts.contains(E("{}"))
    assert EMPTY.is_empty and not ds_complement(EMPTY).is_empty


def test_cone_of_and_canonical_end():
    v = V("({};2)")
    for t in ("{}", "{0}", "{2}"):
        assert cone_of(v, E(t)).contains(E(t))
    for c in cones_at(V("({-1,1};3)")):
        assert c.contains(c.canonical_end())


def test_parse_round_trip():
    for text in ("P({};0)", "C({-4,-3};-1)"):
        assert str(Cone.parse(text)) == text
