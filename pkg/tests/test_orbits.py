import random

import pytest

from conftest import E
from treelike.automorphisms import atom_table
from treelike.cones import complement, ds_complement, ds_intersect, is_normal
from treelike.orbits import (
    BSelection,
    TypeA,
    TypeB,
    a_centres,
    a_vertices,
    is_fraisse_shaped,
    normalize_from_orbits,
    orbit_classification,
)
from treelike.sampling import distinct_ends, probe_ends
from treelike.tree_model import TreeVertex, ray_step

V = TreeVertex.parse


def test_two_points_give_empty_tree():
    A = [E("{}"), E("{0}")]
    assert not a_centres(A)
    assert not a_vertices(A).vertices


def test_single_centre():
    A = [E("{}"), E("{0}"), E("{2}")]
    assert a_centres(A) == {V("({};2)")}
    assert a_vertices(A).vertices == {V("({};2)")}


def test_two_centres_and_connecting_path():
    A = [E("{}"), E("{0}"), E("{2}"), E("{2,3}")]
    # ({},2) for triples containing {} or {0} with {2}-side; ({2};3) splits {2} from {2,3}
    assert a_centres(A) == {V("({};2)"), V("({2};3)")}
    tree = a_vertices(A)
    assert tree.vertices == {V("({};2)"), V("({2};3)")}
    assert len(tree.edges) == 1


def test_single_centre_classification():
    oc = orbit_classification([E("{}"), E("{0}"), E("{2}")])
    assert not oc.type_a and len(oc.type_b) == 3
    with pytest.raises(ValueError):
        orbit_classification([E("{}"), E("{0}")])


def _walk_depth(f: TypeB, x):
    from treelike.cones import cone_of

    if x == f.anchor or not cone_of(f.centre, f.anchor).contains(x):
        return None
    v, d = f.centre, 0
    while True:
        s = ray_step(v, f.anchor)
        if ray_step(v, x) != s and d > 0:
            return d
        v, d = v.step(s), d + 1


def test_depth_of_matches_ray_walk():
    rng = random.Random(3)
    for _ in range(60):
        A = distinct_ends(rng, rng.randint(3, 5), 6)
        oc = orbit_classification(A)
        for x in probe_ends(rng, A, 100):
            for f in oc.type_b:
                assert f.depth_of(x) == _walk_depth(f, x)


def test_unique_descriptor_and_equal_atom_tables():
    rng = random.Random(5)
    for _ in range(20):
        A = distinct_ends(rng, rng.randint(3, 5), 6)
        oc = orbit_classification(A)
        seen = {}
        for x in probe_ends(rng, A, 150):
            if x in A:
                continue
            o, depth = oc.locate(x)
            key = (str(o), depth)
            tab = atom_table(list(A) + [x], only=len(A))
            assert seen.setdefault(key, tab) == tab


def test_normalize_examples():
    A = [E("{}"), E("{0}"), E("{2}"), E("{2,3}")]
    oc = orbit_classification(A)
    assert normalize_from_orbits(A, []).is_empty
    if oc.type_a:
        ds = normalize_from_orbits(A, [oc.type_a[0]])
        assert ds.cones == (oc.type_a[0].cone,)
    fam = oc.type_b[0]
    tail = normalize_from_orbits(A, [BSelection(fam, tail_from=2)])
    assert tail.cones == (fam.tail_cone(2),) and tail.minus == {fam.anchor}
    rng = random.Random(1)
    for x in probe_ends(rng, A, 500):
        d = fam.depth_of(x)
        assert tail.contains(x) == (d is not None and d >= 2)


def test_normalize_rejects_bad_selections():
    A = [E("{}"), E("{0}"), E("{2}")]
    other = TypeB(V("({};5)"), E("{}"))
    with pytest.raises(ValueError):
        normalize_from_orbits(A, [BSelection(other, {1})])
    with pytest.raises(ValueError):
        BSelection(orbit_classification(A).type_b[0], depths=range(1, 10**6).__iter__())
    with pytest.raises(ValueError):
        normalize_from_orbits(A, ["all depths"])
    with pytest.raises(ValueError):
        normalize_from_orbits(A, [], plus=[E("{7}")])


def test_complement_of_orbit_cone_is_fraisse_shaped():
    A = [E("{}"), E("{0}"), E("{2}")]
    oc = orbit_classification(A)
    fam = oc.type_b[0]
    one = normalize_from_orbits(A, [BSelection(fam, {3})])
    comp = ds_complement(one)
    assert is_normal(comp)
    # a single maximal cone based inside the removed orbit cone
    assert comp.cones == (complement(fam.cone_at_depth(3)),)
    assert is_fraisse_shaped(comp, A)
    assert is_fraisse_shaped(ds_intersect(comp, one), A)


def test_stray_cone_is_not_fraisse_shaped():
    from treelike.cones import Cone, union_collapse

    A = [E("{}"), E("{0}"), E("{2}")]
    far = union_collapse([Cone.parse("P({5};7)")])
    assert not is_fraisse_shaped(far, A)


def test_type_descriptors_render():
    oc = orbit_classification([E("{}"), E("{0}"), E("{2}"), E("{2,3}")])
    assert all(str(o).startswith("A[") for o in oc.type_a)
    assert all(str(o).startswith("B[") for o in oc.type_b)
    assert all(isinstance(o, TypeA) for o in oc.type_a)
