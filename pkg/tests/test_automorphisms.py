import random

import pytest

from conftest import E
from treelike.automorphisms import (
    IDENTITY,
    Automorphism,
    ConeXor,
    GlobalXor,
    Pivot,
    Shift,
    apply,
    apply_vertex,
    atom_table,
    back_and_forth_extend,
    jordan_witness,
    preserves_d,
    qf_type_equal,
    shape,
    three_transitivity_witness,
    weighted_shape_equal,
    word,
)
from treelike.cones import Cone, cones_at
from treelike.sampling import distinct_ends, end_in_cone, end_outside, random_cone
from treelike.seq_ends import all_ends, random_end, xor
from treelike.tree_model import TreeVertex, median

P = Cone.parse


def quads(rng, n, window=10):
    return [tuple(random_end(rng, window) for _ in range(4)) for _ in range(n)]


def test_apply_examples():
    assert apply(word(GlobalXor(E("{0}"))), E("{}")) == E("{0}")
    assert apply(word(Shift(2)), E("{0,3}")) == E("{2,5}")
    assert apply(word(ConeXor(P("P({};0)"), E("{0,3}"))), E("{-1}")) == E("{-1}")


@pytest.mark.parametrize("gen", [GlobalXor(E("{-2,1}")), Shift(-3), ConeXor(P("P({1};2)"), E("{2,5}")), Pivot()])
def test_generators_preserve_d(gen):
    rng = random.Random(11)
    assert preserves_d(word(gen), quads(rng, 10_000))


def test_generators_are_bijective_on_a_window():
    xs = all_ends(-4, 6)
    for gen in (GlobalXor(E("{-1}")), Shift(1), ConeXor(P("P({};1)"), E("{3}")), Pivot()):
        g = word(gen)
        assert all(g.inverse()(g(x)) == x for x in xs)


def test_pivot_is_an_involution_swapping_two_cones():
    pv = Pivot()
    a1, down = P("P({0};1)"), Cone.parse("C({};0)")
    rng = random.Random(2)
    for _ in range(300):
        x = end_in_cone(rng, a1)
        assert down.contains(pv(x)) and pv(pv(x)) == x
    assert pv(E("{1,4}")) == E("{1,4}")


def test_broken_map_fails_preserves_d():
    # XOR by {0} on the half-space of ends with bit 3 set: not a cone
    class HalfXor:
        def __call__(self, x):
            return xor(x, E("{0}")) if x.bit(3) else x

    g = Automorphism((HalfXor(),))
    assert not preserves_d(g, quads(random.Random(3), 2_000, 6))


def test_composition_inverse_and_parse():
    g = word(GlobalXor(E("{1}")), Shift(2), ConeXor(P("P({};0)"), E("{0}")), Pivot())
    xs = all_ends(-3, 4)
    assert all(g.then(g.inverse())(x) == x for x in xs)
    assert Automorphism.parse(str(g)) == g
    assert str(IDENTITY) == "ID" and Automorphism.parse("ID") == IDENTITY


def test_reduced_is_the_same_map():
    g = word(Shift(2), Shift(-2), Pivot(), Pivot(), GlobalXor(E("{1}")), GlobalXor(E("{1,2}")),
             ConeXor(P("P({};0)"), E("{0}")), ConeXor(P("P({};0)"), E("{3}")))
    r = g.reduced()
    assert len(r.gens) == 2
    assert all(r(x) == g(x) for x in all_ends(-3, 4))


def test_jordan_witness_examples():
    c = P("P({};0)")
    g = jordan_witness(c, E("{0}"), E("{3}"))
    assert g == word(ConeXor(c, E("{0,3}")))
    assert g(E("{0}")) == E("{3}")
    same = jordan_witness(c, E("{2}"), E("{2}"))
    assert same == word(ConeXor(c, E("{}")))
    with pytest.raises(ValueError):
        jordan_witness(c, E("{-1}"), E("{3}"))


def test_jordan_witness_on_random_cones():
    rng = random.Random(4)
    for _ in range(150):
        c = random_cone(rng)
        x, y = end_in_cone(rng, c), end_in_cone(rng, c)
        g = jordan_witness(c, x, y)
        assert g(x) == y and g(y) == x
        assert all(g(z) == z for z in (end_outside(rng, c) for _ in range(20)))
        assert all(g(g(z)) == z for z in (random_end(rng, 12) for _ in range(20)))


def test_three_transitivity_examples():
    src = (E("{}"), E("{0}"), E("{2}"))
    assert three_transitivity_witness(src, src) == IDENTITY
    dst = (E("{}"), E("{1}"), E("{3}"))
    g = three_transitivity_witness(src, dst)
    assert tuple(g(x) for x in src) == dst
    with pytest.raises(ValueError):
        three_transitivity_witness((E("{}"), E("{}"), E("{2}")), dst)


def test_three_transitivity_random():
    rng = random.Random(5)
    for _ in range(30):
        src, dst = distinct_ends(rng, 3), distinct_ends(rng, 3)
        g = three_transitivity_witness(src, dst)
        assert [g(x) for x in src] == dst
        assert preserves_d(g, quads(rng, 200))


def test_apply_vertex_commutes_with_median():
    rng = random.Random(6)
    g = word(GlobalXor(E("{-1,2}")), Shift(1), Pivot())
    for _ in range(50):
        x, y, z = distinct_ends(rng, 3, 6)
        assert apply_vertex(g, median(x, y, z)) == median(g(x), g(y), g(z))


def test_qf_type_examples():
    t = (E("{}"), E("{0}"), E("{2}"), E("{2,3}"))
    assert qf_type_equal(t, t)
    g = word(GlobalXor(E("{1}")), Pivot(), Shift(3))
    assert qf_type_equal(t, tuple(g(x) for x in t))
    crossed = (t[0], t[2], t[1], t[3])
    assert not qf_type_equal(t, crossed)
    assert atom_table(t) != atom_table(crossed)
    with pytest.raises(ValueError):
        qf_type_equal(t, t[:3])


def test_weighted_shape_sees_edge_lengths():
    a = (E("{}"), E("{0}"), E("{2}"), E("{2,3}"))
    b = (E("{}"), E("{0}"), E("{2}"), E("{2,4}"))
    assert qf_type_equal(a, b)
    assert not weighted_shape_equal(a, b)


def test_shape_relabel_matches_permuted_tuple():
    rng = random.Random(7)
    for _ in range(40):
        t = distinct_ends(rng, 5, 6)
        perm = rng.sample(range(5), 5)
        permuted = [None] * 5
        for i, p in enumerate(perm):
            permuted[p] = t[i]
        assert shape(t).relabel(perm) == shape(permuted)


def test_back_and_forth_runs():
    rng = random.Random(8)
    for _ in range(20):
        f = {}
        dom = distinct_ends(rng, 6)
        rng.shuffle(dom)
        for a in dom:
            _, f = back_and_forth_extend(f, a)
        keys = list(f)
        assert atom_table(keys) == atom_table([f[k] for k in keys])


def test_back_and_forth_small_cases():
    a2, f = back_and_forth_extend({}, E("{5}"))
    assert f == {E("{5}"): a2}
    b, c, d = E("{}"), E("{0}"), E("{2}")
    _, f = back_and_forth_extend({b: b, c: c}, d)
    assert weighted_shape_equal((b, c, d), (f[b], f[c], f[d]))
    with pytest.raises(ValueError):
        back_and_forth_extend({b: c, c: c}, d)
    with pytest.raises(ValueError):
        back_and_forth_extend({b: b}, b)
