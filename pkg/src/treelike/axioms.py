"""Sampling checkers for the D- and S-axioms, syzygetic families, structural
partitions and Jordan sets.

Universal axioms are instantiated on sampled tuples. Existential clauses
search a finite pool, so an unmet one is reported as ``no-witness`` rather
than as a refutation.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Any, Callable, Iterable, Sequence

PASS = "pass"
FAIL = "fail"
NO_WITNESS = "no-witness"
INSUFFICIENT = "insufficient-coverage"

MAX_LISTED = 5


@dataclass(frozen=True)
class RelationHandle:
    name: str
    arity: int
    evaluator: Callable[..., bool]

    def __post_init__(self):
        if self.arity not in (3, 4):
            raise ValueError("relation arity must be 3 or 4")

    def __call__(self, *args) -> bool:
        return bool(self.evaluator(*args))


@dataclass
class SuiteReport:
    axiom: str
    seed: int
    samples: int = 0
    instances: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0
    kind: str = "universal"
    status: str = PASS

    def fail(self, tuple_, note: str = "", missing_witness: bool = False):
        """Record a counterexample. Missing witnesses never override a refutation."""
        self.failure_count += 1
        if len(self.failures) < MAX_LISTED:
            entry = {"tuple": [str(x) for x in tuple_]}
            if note:
                entry["note"] = note
            self.failures.append(entry)
        missing = missing_witness or self.kind == "existential"
        self.status = NO_WITNESS if missing and self.status != FAIL else FAIL

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "seed": self.seed,
            "samples": self.samples,
            "instances": self.instances,
            "kind": self.kind,
            "status": self.status,
            "failure_count": self.failure_count,
            "failures": self.failures,
        }


Sampler = Callable[[random.Random], Any]


def _draw(rng: random.Random, sampler: Sampler, pool: list, k: int, repeat: float = 0.15) -> tuple:
    """k points; with probability ``repeat`` a slot copies an earlier one, to hit degenerate cases."""
    out = []
    for i in range(k):
        if i and rng.random() < repeat:
            out.append(rng.choice(out))
        elif pool and rng.random() < 0.5:
            out.append(rng.choice(pool))
        else:
            out.append(sampler(rng))
    return tuple(out)


def _pool(rng: random.Random, sampler: Sampler, size: int) -> list:
    return [sampler(rng) for _ in range(size)]


# ---------------------------------------------------------------------------
# D-relations


def check_d_axioms(
    rel: RelationHandle,
    sampler: Sampler,
    n: int = 10_000,
    seed: int = 0,
    witnesses: Callable[[Any, Any, Any], Iterable] | None = None,
    n_exist: int | None = None,
) -> list[SuiteReport]:
    """One report per axiom D1..D5.

    ``witnesses(x, y, z)`` supplies domain-specific candidates for the w of
    D5; the sampled pool is always searched too.
    """
    if rel.arity != 4:
        raise ValueError("D-axioms need a 4-ary relation")
    D = rel
    rng = random.Random(seed)
    pool = _pool(rng, sampler, 64)
    reps = {a: SuiteReport(a, seed) for a in ("D1", "D2", "D3", "D4")}
    for _ in range(n):
        x, y, z, w, u = _draw(rng, sampler, pool, 5)
        for r in reps.values():
            r.samples += 1
        if D(x, y, z, w):
            reps["D1"].instances += 1
            if not (D(y, x, z, w) and D(x, y, w, z) and D(z, w, x, y)):
                reps["D1"].fail((x, y, z, w))
            reps["D2"].instances += 1
            if D(x, z, y, w):
                reps["D2"].fail((x, y, z, w))
            reps["D3"].instances += 1
            if not (D(u, y, z, w) or D(x, y, z, u)):
                reps["D3"].fail((x, y, z, w, u))
        if x != z and y != z:
            reps["D4"].instances += 1
            if not D(x, y, z, z):
                reps["D4"].fail((x, y, z))
    d5 = SuiteReport("D5", seed, kind="existential")
    for _ in range(n // 10 if n_exist is None else n_exist):
        x, y, z = _draw(rng, sampler, pool, 3, repeat=0.0)
        d5.samples += 1
        if len({x, y, z}) < 3:
            continue
        d5.instances += 1
        cands = list(witnesses(x, y, z)) if witnesses else []
        if not any(w != z and D(x, y, z, w) for w in cands + pool):
            d5.fail((x, y, z), "no witness within pool")
    return [*reps.values(), d5]


# ---------------------------------------------------------------------------
# separation relations


def check_s_axioms(rel: RelationHandle, sampler: Sampler, n: int = 10_000, seed: int = 0) -> list[SuiteReport]:
    if rel.arity != 4:
        raise ValueError("S-axioms need a 4-ary relation")
    S = rel
    rng = random.Random(seed)
    pool = _pool(rng, sampler, 64)
    reps = {a: SuiteReport(a, seed) for a in ("S1", "S2", "S3", "S4")}
    for _ in range(n):
        x, y, z, w, t = _draw(rng, sampler, pool, 5)
        for r in reps.values():
            r.samples += 1
        if S(x, y, z, w):
            reps["S1"].instances += 1
            if not (S(y, x, z, w) and S(z, w, x, y)):
                reps["S1"].fail((x, y, z, w))
            reps["S3"].instances += 1
            if not (S(x, y, z, t) or S(x, y, w, t)):
                reps["S3"].fail((x, y, z, w, t))
        reps["S2"].instances += 1
        if (S(x, y, z, w) and S(x, z, y, w)) != (y == z or x == w):
            reps["S2"].fail((x, y, z, w))
        reps["S4"].instances += 1
        if not (S(x, y, z, w) or S(x, z, w, y) or S(x, w, y, z)):
            reps["S4"].fail((x, y, z, w))
    return list(reps.values())


# ---------------------------------------------------------------------------
# families of sets


def check_syzygetic(sets: Sequence, universe: Sequence, seed: int = 0) -> SuiteReport:
    """``sets`` is a list of (name, predicate) pairs or bare predicates."""
    named = [s if isinstance(s, tuple) else (f"set{i}", s) for i, s in enumerate(sets)]
    rep = SuiteReport("syzygetic", seed)
    members = [(name, [bool(p(x)) for x in universe]) for name, p in named]
    for (na, ma), (nb, mb) in combinations(members, 2):
        rep.samples += 1
        only_a = any(a and not b for a, b in zip(ma, mb))
        only_b = any(b and not a for a, b in zip(ma, mb))
        both = any(a and b for a, b in zip(ma, mb))
        if not (only_a and only_b and both):
            continue
        rep.instances += 1
        outside = next((x for x, a, b in zip(universe, ma, mb) if not a and not b), None)
        if outside is not None:
            rep.fail((na, nb, outside), "three regions inhabited but union misses a point")
    return rep


def check_structural_partition(
    parts: Sequence[Callable[[Any], bool]],
    rel: RelationHandle,
    sample: Sequence,
    seed: int = 0,
    n: int = 2_000,
) -> list[SuiteReport]:
    if len(parts) < 3:
        raise ValueError("a structural partition needs at least three parts")
    rng = random.Random(seed)
    strata: list[list] = [[] for _ in parts]
    unplaced = 0
    for x in sample:
        idx = [i for i, p in enumerate(parts) if p(x)]
        if len(idx) != 1:
            unplaced += 1
            continue
        strata[idx[0]].append(x)
    cover = SuiteReport("partition", seed, samples=len(sample), instances=len(sample) - unplaced)
    if unplaced:
        cover.fail(("points outside or in several parts", unplaced))
    r1 = SuiteReport("clause-i", seed)
    r2 = SuiteReport("clause-ii", seed)
    if any(not s for s in strata):
        for r in (r1, r2):
            r.status = INSUFFICIENT
        return [cover, r1, r2]
    k = len(parts)
    for _ in range(n):
        i = rng.randrange(k)
        x, y = rng.choice(strata[i]), rng.choice(strata[i])
        others = [j for j in range(k) if j != i]
        z = rng.choice(strata[rng.choice(others)])
        w = rng.choice(strata[rng.choice(others)])
        if len({x, y, z, w}) < 4:
            continue
        r1.samples += 1
        r1.instances += 1
        if not rel(x, y, z, w):
            r1.fail((x, y, z, w))
    if k >= 4:
        for _ in range(n):
            r2.samples += 1
            chosen = rng.sample(range(k), 4)
            quad = tuple(rng.choice(strata[j]) for j in chosen)
            r2.instances += 1
            for perm in permutations(quad):
                if rel(*perm):
                    r2.fail(perm)
                    break
    else:
        r2.status = PASS  # vacuous: fewer than four sectors
    return [cover, r1, r2]


def check_jordan(
    member: Callable[[Any], bool],
    sampler: Sampler,
    witness_search: Callable[[Any, Any], Any],
    n: int = 100,
    seed: int = 0,
    n_outside: int = 50,
    rel: RelationHandle | None = None,
    n_quads: int = 0,
    name: str = "jordan",
) -> SuiteReport:
    """For sampled x, y in the set, the witness must swap them into place and
    fix the sampled outside points; ``None`` from the search counts as no witness."""
    rng = random.Random(seed)
    rep = SuiteReport(name, seed)
    inside, outside = [], []
    tries = 0
    while (len(inside) < 2 * n or len(outside) < n_outside) and tries < 200 * (n + n_outside):
        tries += 1
        x = sampler(rng)
        if member(x):
            if len(inside) < 2 * n:
                inside.append(x)
        elif len(outside) < n_outside:
            outside.append(x)
    if len(inside) < 2 or not outside:
        rep.status = INSUFFICIENT
        return rep
    for i in range(0, len(inside) - 1, 2):
        x, y = inside[i], inside[i + 1]
        rep.samples += 1
        rep.instances += 1
        g = witness_search(x, y)
        if g is None:
            rep.fail((x, y), "no witness in the search space", missing_witness=True)
            continue
        if g(x) != y:
            rep.fail((x, y), "image of x is not y")
            continue
        moved = next((z for z in outside if g(z) != z), None)
        if moved is not None:
            rep.fail((x, y, moved), "outside point moved")
            continue
        if rel is not None:
            for _ in range(n_quads):
                q = tuple(sampler(rng) for _ in range(4))
                if rel(*q) != rel(*(g(p) for p in q)):
                    rep.fail((x, y) + q, "relation not preserved")
                    break
    return rep
