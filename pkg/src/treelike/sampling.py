"""Seeded samplers for ends, cones and configurations used by the suites."""
from __future__ import annotations

import random
from typing import Sequence

from treelike.cones import Cone, Kind, cones_at
from treelike.seq_ends import End, random_end, xor
from treelike.tree_model import TreeVertex, median, ray_step


def end_sampler(window: int = 12):
    return lambda rng: random_end(rng, window)


def random_vertex(rng: random.Random, window: int = 12, spread: int = 4) -> TreeVertex:
    return TreeVertex.of_end(random_end(rng, window), rng.randint(-spread, spread))


def random_cone(rng: random.Random, window: int = 12, spread: int = 4) -> Cone:
    return rng.choice(cones_at(random_vertex(rng, window, spread)))


def end_in_cone(rng: random.Random, c: Cone, window: int = 12) -> End:
    """A random member of c with support in [-window, window] where possible."""
    v = c.vertex
    if c.kind is Kind.PREFIX:
        hi = max(window, v.level + 2)
        tail = tuple(i for i in range(v.level, hi + 1) if rng.random() < 0.5)
        return End(v.prefix + tail)
    while True:
        x = random_end(rng, max(window, abs(v.level) + 2))
        if c.contains(x):
            return x
        # flip one bit below the level to leave the prefix cone
        i = rng.randint(min(-window, v.level - 1), v.level - 1)
        y = xor(x, End((i,)))
        if c.contains(y):
            return y


def end_outside(rng: random.Random, c: Cone, window: int = 12) -> End:
    from treelike.cones import complement

    return end_in_cone(rng, complement(c), window)


def near(rng: random.Random, a: End, lo: int = 0, hi: int = 10) -> End:
    """a with one bit flipped somewhere in [lo, hi]: close to a in the tree."""
    return xor(a, End((rng.randint(lo, hi),)))


def end_witnesses(x: End, y: End, z: End, depth: int = 24) -> list[End]:
    """Candidate w for D(x,y;z,w): canonical ends of cones along the ray to z."""
    v = median(x, y, z)
    out = []
    for _ in range(depth):
        v = v.step(ray_step(v, z))
        out.extend(c.canonical_end() for c in cones_at(v))
    return out


def distinct_ends(rng: random.Random, k: int, window: int = 12) -> list[End]:
    out: list[End] = []
    while len(out) < k:
        x = random_end(rng, window)
        if x not in out:
            out.append(x)
    return out


def probe_ends(rng: random.Random, A: Sequence[End], count: int, window: int = 12) -> list[End]:
    """Random ends mixed with near-neighbours of A, so deep cones get hit."""
    out = []
    for _ in range(count):
        r = rng.random()
        if r < 0.4 or not A:
            out.append(random_end(rng, window))
        elif r < 0.95:
            out.append(near(rng, rng.choice(A), -window, window + 4))
        else:
            out.append(rng.choice(A))
    return out
