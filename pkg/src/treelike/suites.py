"""Verification suites behind the CLI commands.

Each runner takes a RunConfig and returns a JSON-ready dict of checks. A
check either expects the property to hold (``expect: pass``) or is a
negative control that must catch a planted violation (``expect: detect``).
Reports carry no timings, so equal configs give byte-identical output.
"""
from __future__ import annotations

import dataclasses
import random
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from treelike import automorphisms as au
from treelike import classical as cl
from treelike import dt_graphs as dt
from treelike.axioms import (
    FAIL,
    NO_WITNESS,
    RelationHandle,
    check_d_axioms,
    check_jordan,
    check_s_axioms,
    check_structural_partition,
    check_syzygetic,
)
from treelike.cones import (
    Cone,
    cones_at,
    ds_complement,
    ds_difference,
    ds_intersect,
    ds_union,
    is_normal,
)
from treelike.ef_game import STAR_BASE, ef_equiv_m, star_pair
from treelike.exhaustive import d_equivalence_check, qf_oracle_check
from treelike.orbits import BSelection, TypeB, is_fraisse_shaped, normalize_from_orbits, orbit_classification
from treelike.sampling import (
    distinct_ends,
    end_in_cone,
    end_outside,
    end_sampler,
    end_witnesses,
    probe_ends,
    random_cone,
    random_vertex,
)
from treelike.seq_ends import End, d_from_c, random_end
from treelike.tree_model import d_from_tree

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    window: int = 12
    samples: int = 10_000
    exist_samples: int = 1_000
    unroll_depth: int = 8
    exhaustive_lo: int = -2
    exhaustive_hi: int = 2
    qf_max_len: int = 5
    iso_random: int = 10_000
    jordan_instances: int = 1_000
    jordan_outside: int = 50
    jordan_quads: int = 100
    transitivity_pairs: int = 200
    transitivity_quads: int = 1_000
    bf_runs: int = 100
    bf_size: int = 6
    orbit_sets: int = 50
    orbit_probes: int = 200
    fraisse_instances: int = 1_000
    fraisse_probes: int = 1_000
    ef_ranks: tuple = (1, 2)
    dt_pairs: tuple = ((2, 3), (3, 3), (2, 4))
    dt_radius: int = 4
    dt_claim_kl: tuple = (2, 3)
    dt_claim_sets: tuple = ((1,), (2,), (1, 2), (1, 3))
    dt_recon: tuple = ((2, 3, 1), (3, 3, 1))
    dt_t2: tuple = ((3, 4), (4, 4))
    dt_cap: int = 1_000_000
    primes: tuple = (2, 3, 5)
    rational_bound: int = 1_000
    affine_maps: int = 1_000
    affine_triples: int = 1_000
    jobs: int = 1

    def __post_init__(self):
        if self.window < 1:
            raise ValueError("window must be positive")
        for k, l in (*self.dt_pairs, self.dt_claim_kl, *(r[:2] for r in self.dt_recon)):
            if k < 2 or l < 3:
                raise ValueError(f"dt-graphs need k >= 2 and l >= 3, got ({k}, {l})")
        for p in self.primes:
            if not cl.is_prime(p):
                raise ValueError(f"{p} is not a prime")
        if any(m < 0 for m in self.ef_ranks):
            raise ValueError("EF ranks must be non-negative")

    def to_json(self) -> dict:
        d = dataclasses.asdict(self)
        d.pop("jobs")
        return {k: _jsonable(v) for k, v in d.items()}


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def suite_seed(seed: int, name: str) -> int:
    return (seed * 1_000_003 + zlib.crc32(name.encode())) % (1 << 63)


def _check(name: str, ok: bool, expect: str = "pass", **detail) -> dict:
    return {"name": name, "expect": expect, "ok": bool(ok), **detail}


def _reports(reports) -> list[dict]:
    return [r.to_json() for r in reports]


def _suite(name: str, seed: int, checks: list[dict]) -> dict:
    return {"suite": name, "seed": seed, "ok": all(c["ok"] for c in checks), "checks": checks}


def _end_rel(name, fn):
    return RelationHandle(name, 4, fn)


# ---------------------------------------------------------------------------
# axioms


def run_axioms(cfg: RunConfig) -> dict:
    seed = suite_seed(cfg.seed, "verify-axioms")
    sampler = end_sampler(cfg.window)
    checks = []
    outcomes = {}
    for name, fn in (("d_from_c", d_from_c), ("d_from_tree", d_from_tree)):
        reps = check_d_axioms(_end_rel(name, fn), sampler, cfg.samples, seed, end_witnesses, cfg.exist_samples)
        outcomes[name] = [(r.axiom, r.status, r.instances, r.failure_count) for r in reps]
        checks.append(_check(f"D-axioms {name}", all(r.ok for r in reps), reports=_reports(reps)))
    checks.append(_check("d_from_tree report equals d_from_c report", outcomes["d_from_c"] == outcomes["d_from_tree"]))

    always = check_d_axioms(_end_rel("always-true", lambda *a: True), sampler, min(cfg.samples, 1000), seed,
                            end_witnesses, 10)
    d2 = next(r for r in always if r.axiom == "D2")
    checks.append(_check("always-true relation violates D2", d2.status == FAIL, "detect", report=d2.to_json()))

    rng = random.Random(seed)
    universe = [random_end(rng, cfg.window) for _ in range(1000)]
    cones = [random_cone(rng, cfg.window) for _ in range(50)]
    rep = check_syzygetic([(str(c), c.contains) for c in cones], universe, seed)
    checks.append(_check("cones form a syzygetic family", rep.ok, report=rep.to_json()))
    chain = [Cone.prefix((), n) for n in range(-3, 4)]
    rep = check_syzygetic([(str(c), c.contains) for c in chain], universe, seed)
    checks.append(_check("nested chain is syzygetic", rep.ok and rep.instances == 0, report=rep.to_json()))
    crossing = [("x0=1", lambda x: x.bit(0) == 1), ("x1=1", lambda x: x.bit(1) == 1)]
    rep = check_syzygetic(crossing, universe, seed)
    checks.append(_check("crossing half-spaces are not syzygetic", rep.status == FAIL, "detect", report=rep.to_json()))

    part_ok, last = True, None
    for _ in range(20):
        v = random_vertex(rng, cfg.window)
        parts = [c.contains for c in cones_at(v)]
        sample = [end_in_cone(rng, c, cfg.window) for c in cones_at(v) for _ in range(60)]
        reps = check_structural_partition(parts, _end_rel("d_from_c", d_from_c), sample, seed, n=500)
        part_ok &= all(r.ok for r in reps)
        last = reps
    checks.append(_check("cones at a vertex form a structural partition", part_ok, reports=_reports(last)))

    v = random_vertex(rng, cfg.window)
    u1, u2, u3 = cones_at(v)
    w = u3.base_vertex.step(u3.direction)  # u3 is C(v): its two halves are the other cones at Down(v)
    halves = [c for c in cones_at(w) if not c.contains(u1.canonical_end())]
    parts = [u1.contains, u2.contains, halves[0].contains, halves[1].contains]
    sample = [end_in_cone(rng, c, cfg.window) for c in (u1, u2, *halves) for _ in range(60)]
    reps = check_structural_partition(parts, _end_rel("d_from_c", d_from_c), sample, seed, n=500)
    clause_ii = next(r for r in reps if r.axiom == "clause-ii")
    checks.append(_check("split sector breaks clause (ii)", clause_ii.status == FAIL, "detect", report=clause_ii.to_json()))
    return _suite("verify-axioms", seed, checks)


# ---------------------------------------------------------------------------
# isomorphism, transitivity, back and forth, qf types


def _random_quads(rng, count, window):
    return [tuple(random_end(rng, window) for _ in range(4)) for _ in range(count)]


def run_isomorphism(cfg: RunConfig) -> dict:
    seed = suite_seed(cfg.seed, "verify-isomorphism")
    rng = random.Random(seed)
    checks = []
    ex = d_equivalence_check(cfg.exhaustive_lo, cfg.exhaustive_hi)
    checks.append(_check("d_from_tree = d_from_c on every window quadruple", ex["ok"], detail=ex))
    mism = []
    for q in _random_quads(rng, cfg.iso_random, cfg.window):
        if d_from_tree(*q) != d_from_c(*q):
            mism.append([str(x) for x in q])
    checks.append(_check("d_from_tree = d_from_c on random quadruples", not mism, quadruples=cfg.iso_random,
                         mismatches=len(mism), examples=mism[:5]))

    bad = []
    for _ in range(cfg.transitivity_pairs):
        src = distinct_ends(rng, 3, cfg.window)
        dst = distinct_ends(rng, 3, cfg.window)
        g = au.three_transitivity_witness(src, dst)
        quads = [tuple(rng.choice(src + dst) if rng.random() < 0.3 else random_end(rng, cfg.window)
                       for _ in range(4)) for _ in range(cfg.transitivity_quads)]
        if [g(x) for x in src] != dst or not au.preserves_d(g, quads):
            bad.append({"src": [str(x) for x in src], "dst": [str(x) for x in dst], "word": str(g)})
    checks.append(_check("3-transitivity witnesses", not bad, pairs=cfg.transitivity_pairs, failures=bad[:5]))

    bad = []
    for _ in range(cfg.bf_runs):
        dom = distinct_ends(rng, cfg.bf_size, cfg.window)
        f: dict = {}
        try:
            for a in dom:
                _, f = au.back_and_forth_extend(f, a)
        except ValueError as exc:
            bad.append({"domain": [str(x) for x in dom], "error": str(exc)})
            continue
        keys = list(f)
        if au.atom_table(keys) != au.atom_table([f[a] for a in keys]):
            bad.append({"domain": [str(x) for x in dom], "error": "atom tables differ"})
    checks.append(_check("back-and-forth builds isomorphisms", not bad, runs=cfg.bf_runs, size=cfg.bf_size,
                         failures=bad[:5]))

    qf = qf_oracle_check(cfg.exhaustive_lo, cfg.exhaustive_hi, cfg.qf_max_len)
    checks.append(_check("contracted shape agrees with atom tables", qf["ok"], detail=qf))
    if cfg.qf_max_len >= 4:
        # edge lengths first separate tuples with equal atom tables at length 4
        weighted = sum(r["weighted_disagreements"] for r in qf["rows"])
        checks.append(_check("weighted shape is finer than atom tables", weighted > 0, "detect",
                             weighted_disagreements=weighted))
    return _suite("verify-isomorphism", seed, checks)


# ---------------------------------------------------------------------------
# Jordan sets


def run_jordan(cfg: RunConfig) -> dict:
    seed = suite_seed(cfg.seed, "verify-jordan")
    rng = random.Random(seed)
    bad = []
    coprefix = 0
    for _ in range(cfg.jordan_instances):
        c = random_cone(rng, cfg.window)
        coprefix += c.kind.value == "C"
        x, y = end_in_cone(rng, c, cfg.window), end_in_cone(rng, c, cfg.window)
        g = au.jordan_witness(c, x, y)
        outside = [end_outside(rng, c, cfg.window) for _ in range(cfg.jordan_outside)]

        def pt():
            return end_in_cone(rng, c, cfg.window) if rng.random() < 0.5 else random_end(rng, cfg.window)

        quads = [tuple(pt() for _ in range(4)) for _ in range(cfg.jordan_quads)]
        reason = None
        if g(x) != y or g(y) != x:
            reason = "does not swap x and y"
        elif any(g(z) != z for z in outside):
            reason = "moves an outside end"
        elif not au.preserves_d(g, quads):
            reason = "breaks D"
        if reason:
            bad.append({"cone": str(c), "x": str(x), "y": str(y), "reason": reason})
    checks = [_check("Jordan witnesses on prefix and coprefix cones", not bad, instances=cfg.jordan_instances,
                     coprefix_instances=coprefix, failures=bad[:5])]

    sampler = end_sampler(cfg.window)
    rel = _end_rel("d_from_c", d_from_c)
    for kind in ("P", "C"):
        c = next(c for c in iter(lambda: random_cone(rng, cfg.window), None) if c.kind.value == kind)
        rep = check_jordan(c.contains, lambda r, c=c: end_in_cone(r, c, cfg.window) if r.random() < 0.6 else random_end(r, cfg.window),
                           lambda x, y, c=c: au.jordan_witness(c, x, y), n=100, seed=seed, rel=rel, n_quads=20,
                           name=f"jordan {c}")
        checks.append(_check(f"check_jordan on a {kind} cone", rep.ok, report=rep.to_json()))

    # two cones at distance, each handled by its own ConeXor: nothing crosses between them
    left, right = Cone.prefix((), 3), Cone.prefix((0,), 3)
    union = lambda x: left.contains(x) or right.contains(x)

    def restricted(x, y):
        for c in (left, right):
            if c.contains(x) and c.contains(y):
                return au.jordan_witness(c, x, y)
        return None

    pick = lambda r: end_in_cone(r, left if r.random() < 0.4 else right, cfg.window) if r.random() < 0.8 else sampler(r)
    rep = check_jordan(union, pick, restricted, n=100, seed=seed, name="jordan non-cone union")
    checks.append(_check("union of two non-sibling cones lacks witnesses", rep.status == NO_WITNESS, "detect",
                         report=rep.to_json()))
    return _suite("verify-jordan", seed, checks)


# ---------------------------------------------------------------------------
# orbits and definable sets


def _descriptor_key(o, depth):
    return (str(o), depth)


def run_orbits(cfg: RunConfig) -> dict:
    seed = suite_seed(cfg.seed, "verify-orbits")
    rng = random.Random(seed)
    claim_bad, atom_bad = [], []
    groups_checked = 0
    for _ in range(cfg.orbit_sets):
        A = distinct_ends(rng, rng.randint(3, 5), cfg.window)
        oc = orbit_classification(A)
        groups: dict = {}
        for x in probe_ends(rng, A, cfg.orbit_probes, cfg.window):
            if x in A:
                continue
            hits = oc.claims(x)
            if len(hits) != 1:
                claim_bad.append({"A": [str(a) for a in A], "x": str(x), "claims": len(hits)})
                continue
            o = hits[0]
            depth = o.depth_of(x) if isinstance(o, TypeB) else None
            groups.setdefault(_descriptor_key(o, depth), []).append(x)
        n = len(A)
        for key, xs in groups.items():
            if len(xs) < 2:
                continue
            groups_checked += 1
            tables = {au.atom_table(tuple(A) + (x,), only=n) for x in dict.fromkeys(xs)}
            if len(tables) != 1:
                atom_bad.append({"A": [str(a) for a in A], "descriptor": key[0], "depth": key[1]})
    checks = [
        _check("every end outside A has exactly one descriptor", not claim_bad, sets=cfg.orbit_sets,
               probes=cfg.orbit_probes, failures=claim_bad[:5]),
        _check("ends in one descriptor cone share atom tables over A", not atom_bad and groups_checked > 0,
               groups=groups_checked, failures=atom_bad[:5]),
    ]
    A = [End(), End((0,)), End((2,))]
    oc = orbit_classification(A)
    checks.append(_check("single-centre triple has three TypeB families and no TypeA",
                         len(oc.type_a) == 0 and len(oc.type_b) == 3 and len(oc.centres) == 1))
    return _suite("verify-orbits", seed, checks)


def _random_selection(rng: random.Random, oc) -> tuple[list, list]:
    sels, direct = [], []
    for o in oc.type_a:
        if rng.random() < 0.4:
            sels.append(o)
            direct.append(o.contains)
    for fam in oc.type_b:
        r = rng.random()
        if r < 0.5:
            continue
        depths = frozenset(d for d in range(1, 7) if rng.random() < 0.3)
        tail = rng.randint(1, 6) if rng.random() < 0.5 else None
        sel = BSelection(fam, depths, tail)
        sels.append(sel)
        direct.append(sel.contains)
    return sels, direct


def _base_set(rng, A, oc):
    sels, direct = _random_selection(rng, oc)
    plus = {a for a in A if rng.random() < 0.25}
    minus = {a for a in A if rng.random() < 0.25} - plus
    ds = normalize_from_orbits(A, sels, plus, minus)

    def member(x):
        if x in minus:
            return False
        return x in plus or any(f(x) for f in direct)

    return ds, member


_OPS = (
    ("union", ds_union, lambda a, b: a or b),
    ("intersect", ds_intersect, lambda a, b: a and b),
    ("difference", ds_difference, lambda a, b: a and not b),
)


def run_fraisse(cfg: RunConfig) -> dict:
    seed = suite_seed(cfg.seed, "verify-fraisse")
    rng = random.Random(seed)
    bad = []
    for i in range(cfg.fraisse_instances):
        A = distinct_ends(rng, rng.randint(3, 5), min(cfg.window, 6))
        oc = orbit_classification(A)
        ds, member = _base_set(rng, A, oc)
        expr = ["S0"]
        for _ in range(rng.randint(1, 2)):
            other, omember = _base_set(rng, A, oc)
            name, op, fn = rng.choice(_OPS)
            ds = op(ds, other)
            member = (lambda f, g, h: lambda x: h(f(x), g(x)))(member, omember, fn)
            expr.append(name)
        if rng.random() < 0.3:
            ds = ds_complement(ds)
            member = (lambda f: lambda x: not f(x))(member)
            expr.append("complement")
        reason = None
        if not is_normal(ds):
            reason = "not in normal form"
        elif not is_fraisse_shaped(ds, A):
            reason = "cones not at A-vertices or on rays from centres"
        else:
            for x in probe_ends(rng, A, cfg.fraisse_probes, cfg.window):
                if ds.contains(x) != member(x):
                    reason = f"membership of {x}"
                    break
        if reason:
            bad.append({"instance": i, "A": [str(a) for a in A], "expr": expr, "set": ds.to_json(), "reason": reason})
    return _suite("verify-fraisse", seed, [
        _check("boolean combinations of orbit sets have the normal form", not bad,
               instances=cfg.fraisse_instances, probes=cfg.fraisse_probes, failures=bad[:5]),
    ])


# ---------------------------------------------------------------------------
# EF corroboration


def run_ef(cfg: RunConfig) -> dict:
    seed = suite_seed(cfg.seed, "verify-ef")
    rng = random.Random(seed)
    checks = []
    bases = [STAR_BASE, tuple(distinct_ends(rng, 3, 6))]
    for m in cfg.ef_ranks:
        lo = 2**m
        pairs = [(lo, lo + 1), (lo, lo + 2)] if m >= 2 else [(lo, lo + 1), (lo, lo + 2), (lo + 1, lo + 2)]
        depth = max(cfg.unroll_depth, lo + 4)
        results = []
        for base in bases:
            for anchor in range(3):
                for d1, d2 in pairs:
                    t1, t2 = star_pair(d1, d2, base, anchor)
                    results.append({"base": [str(x) for x in base], "anchor": anchor, "depths": [d1, d2],
                                    "equivalent": ef_equiv_m(t1, t2, m, depth)})
        checks.append(_check(f"rank {m}: depths >= {lo} are equivalent", all(r["equivalent"] for r in results),
                             verdict="restricted-game-exact", instances=results))
        d1, d2 = lo - 1, lo
        t1, t2 = star_pair(d1, d2)
        eq = ef_equiv_m(t1, t2, m, depth)
        checks.append(_check(f"rank {m}: depths {d1} and {d2} are separated", not eq, "detect",
                             verdict="restricted-game-exact", depths=[d1, d2], equivalent=eq))
    t1, t2 = star_pair(1, 5)
    checks.append(_check("rank 0 is quantifier-free type", ef_equiv_m(t1, t2, 0) == au.qf_type_equal(t1, t2)))
    return _suite("verify-ef", seed, checks)


# ---------------------------------------------------------------------------
# distance-transitive graphs


def run_dt(cfg: RunConfig) -> dict:
    seed = suite_seed(cfg.seed, "dt-graphs")
    checks = []
    for k, l in cfg.dt_pairs:
        rep = dt.counting_report(k, l, cfg.dt_radius, cfg.dt_cap)
        checks.append(_check(f"sphere and ball counts for Gamma_{{{k},{l}}}", rep["ok"], detail=rep))
    anchors = {"gamma_1": dt.gamma_s(2, 3, 1), "gamma_2": dt.gamma_s(2, 3, 2), "ball_2": dt.ball_size(2, 3, 2),
               "gamma_n1": dt.reconstruction_gamma(2, 3, 1)}
    checks.append(_check("anchors for (2,3)", anchors == {"gamma_1": 6, "gamma_2": 24, "ball_2": 31, "gamma_n1": 15},
                         **anchors))
    for ns in cfg.dt_claim_sets:
        k, l = cfg.dt_claim_kl
        rep = dt.claim_check(k, l, ns, cap=cfg.dt_cap)
        checks.append(_check(f"Claim for ({k},{l}) with distances {list(ns)}", rep["ok"], detail=rep))
    for k, l, n in cfg.dt_recon:
        rep = dt.adjacency_reconstruction(k, l, n, cap=cfg.dt_cap)
        checks.append(_check(f"adjacency from ball intersections ({k},{l}), n={n}", rep["ok"], detail=rep))
    for t, radius in cfg.dt_t2:
        rep = dt.t2_decomposition(t, radius, cfg.dt_cap)
        checks.append(_check(f"distance-2 graph of the {t}-regular tree", rep["ok"], detail=rep))
    return _suite("dt-graphs", seed, checks)


# ---------------------------------------------------------------------------
# classical reducts


def run_classical(cfg: RunConfig) -> dict:
    seed = suite_seed(cfg.seed, "classical")
    rng = random.Random(seed)
    checks = []
    qs = cl.rational_sampler(cfg.rational_bound, cfg.primes)
    for p in cfg.primes:
        rel = RelationHandle(f"D from C_{p}", 4, lambda *a, p=p: cl.d_from_c_p(p, *a))
        reps = check_d_axioms(rel, qs, cfg.samples, seed, cl.p_adic_witnesses(p), cfg.exist_samples)
        checks.append(_check(f"C_{p}-derived D satisfies D1-D5", all(r.ok for r in reps), reports=_reports(reps)))

    points = [qs(rng) for _ in range(3 * cfg.affine_triples)]
    triples = [tuple(points[3 * i: 3 * i + 3]) for i in range(cfg.affine_triples)]
    maps = []
    while len(maps) < cfg.affine_maps:
        a = qs(rng)
        if a != 0:
            maps.append((a, qs(rng)))
    for p in cfg.primes:
        rep = cl.affine_invariance_check(p, maps, triples)
        checks.append(_check(f"C_{p} invariant under affine maps", rep["ok"], maps=rep["maps"], triples=rep["triples"],
                             failures=rep["failures"]))
    control = [tuple(qs(rng) for _ in range(3)) for _ in range(2_000)]
    rep = cl.map_invariance_check(2, lambda x: x * x, control)
    checks.append(_check("x -> x^2 breaks C_2", not rep["ok"], "detect", violation=rep["violation"]))

    ps = cl.point_sampler(cfg.rational_bound, cfg.primes)
    p0 = cfg.primes[0]
    grouping_n = max(cfg.samples // 5, 200)

    def axioms_ok(fn):
        reps = check_d_axioms(RelationHandle("D_p", 4, fn), ps, grouping_n, seed, cl.p_adic_witnesses(p0),
                              grouping_n // 10)
        return all(r.ok for r in reps)

    grouping, tried = cl.select_grouping(p0, axioms_ok)
    checks.append(_check("a cross-ratio grouping passes D1-D5", grouping == cl.ADOPTED_GROUPING,
                         selected=list(grouping) if grouping else None, adopted=list(cl.ADOPTED_GROUPING), tried=tried))
    for p in cfg.primes:
        rel = RelationHandle(f"D_{p}", 4, lambda *a, p=p: cl.d_p(p, *a))
        reps = check_d_axioms(rel, ps, cfg.samples, seed, cl.p_adic_witnesses(p), cfg.exist_samples)
        checks.append(_check(f"D_{p} satisfies D1-D5 under grouping {list(cl.ADOPTED_GROUPING)}",
                             all(r.ok for r in reps), reports=_reports(reps)))
    bad = []
    for _ in range(200):
        while True:
            a, b, c, d = (qs(rng) for _ in range(4))
            if a * d - b * c != 0:
                break
        f = cl.mobius(a, b, c, d)
        q = [ps(rng) for _ in range(4)]
        if cl.d_p(p0, *q) != cl.d_p(p0, *(f(x) for x in q)):
            bad.append([str(x) for x in q])
    checks.append(_check(f"D_{p0} invariant under Mobius maps", not bad, maps=200, failures=bad[:5]))

    s_rel = RelationHandle("S", 4, cl.s_total)
    for label, sampler in (("Q", cl.rational_sampler(20, ())), ("Z", cl.integer_sampler(50))):
        reps = check_s_axioms(s_rel, sampler, cfg.samples, seed)
        checks.append(_check(f"separation on {label} satisfies S1-S4", all(r.ok for r in reps), reports=_reports(reps)))
    reps = check_s_axioms(RelationHandle("B as 4-ary", 4, lambda x, y, z, w: cl.b_rel(x, y, z)),
                          cl.integer_sampler(50), min(cfg.samples, 1000), seed)
    checks.append(_check("betweenness fails the S-axioms", any(r.status == FAIL for r in reps), "detect",
                         reports=_reports(reps)))
    mism = 0
    isampler = cl.rational_sampler(50, ())
    for _ in range(cfg.samples):
        q = [isampler(rng) for _ in range(4)]
        if len(set(q)) == 4 and cl.s_rel(*q) != cl.s_from_k(*q):
            mism += 1
    checks.append(_check("K induces S", mism == 0, samples=cfg.samples, mismatches=mism))

    seps = {}
    for p, r in combinations(cfg.primes, 2):
        seps[f"{p},{r}"] = cl.separating_triple(p, r)
    checks.append(_check("distinct primes give distinct C_p", all(v is not None for v in seps.values()),
                         witnesses={k: list(v) if v else None for k, v in seps.items()}))
    zg = [cl.z_graph_family(n, 0, max(15, 4 * 2**n - 1)) for n in range(4)]
    checks.append(_check("Z graphs have 2^n path components",
                         all(z["components"] == 2**z["n"] and z["paths"] for z in zg), graphs=zg))
    return _suite("classical", seed, checks)


RUNNERS: dict[str, Callable[[RunConfig], dict]] = {
    "verify-axioms": run_axioms,
    "verify-isomorphism": run_isomorphism,
    "verify-jordan": run_jordan,
    "verify-orbits": run_orbits,
    "verify-fraisse": run_fraisse,
    "verify-ef": run_ef,
    "dt-graphs": run_dt,
    "classical": run_classical,
}


def _run_one(args):
    name, cfg = args
    return RUNNERS[name](cfg)


def run(command: str, cfg: RunConfig) -> dict:
    if command == "all":
        names = list(RUNNERS)
    elif command in RUNNERS:
        names = [command]
    else:
        raise KeyError(command)
    if cfg.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(names))) as pool:
            suites = list(pool.map(_run_one, [(n, cfg) for n in names]))
    else:
        suites = [RUNNERS[n](cfg) for n in names]
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": cfg.to_json(),
        "ok": all(s["ok"] for s in suites),
        "suites": suites,
    }
