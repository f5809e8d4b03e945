"""Exhaustive oracles over all ends with support in a small window.

D is tabulated once over every quadruple of window ends; atom tables of
tuples are then index lookups into that table.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Callable, Sequence

import numpy as np

from treelike.automorphisms import shape
from treelike.seq_ends import End, all_ends


def d_table(ends: Sequence[End], rel: Callable) -> np.ndarray:
    n = len(ends)
    flat = np.fromiter((rel(*q) for q in product(ends, repeat=4)), dtype=bool, count=n**4)
    return flat.reshape((n,) * 4)


@lru_cache(maxsize=4)
def window_d_table(lo: int, hi: int, rel: Callable) -> np.ndarray:
    """d_table over all ends of the window, shared between the oracles."""
    return d_table(all_ends(lo, hi), rel)


@lru_cache(maxsize=None)
def _atom_index(length: int) -> tuple[np.ndarray, ...]:
    """Index columns for the = atoms over pairs and the D atoms over quadruples."""
    pairs = list(product(range(length), repeat=2))
    quads = list(product(range(length), repeat=4))
    return np.array(pairs, dtype=np.intp).reshape(-1, 2), np.array(quads, dtype=np.intp).reshape(-1, 4)


def atom_tables(combos: np.ndarray, D: np.ndarray, chunk: int = 8192) -> np.ndarray:
    """Rows of equality and D atoms for each tuple of end indices."""
    length = combos.shape[1]
    n = D.shape[0]
    pairs, quads = _atom_index(length)
    flat = D.reshape(-1)
    out = np.empty((len(combos), len(pairs) + len(quads)), dtype=bool)
    for start in range(0, len(combos), chunk):
        c = combos[start:start + chunk]
        out[start:start + chunk, :len(pairs)] = c[:, pairs[:, 0]] == c[:, pairs[:, 1]]
        lin = ((c[:, quads[:, 0]] * n + c[:, quads[:, 1]]) * n + c[:, quads[:, 2]]) * n + c[:, quads[:, 3]]
        out[start:start + chunk, len(pairs):] = flat[lin]
    return out


def permute_table(row: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    """Atom table of the tuple whose entry perm[i] is entry i of the original."""
    return row[_permute_index(tuple(perm))]


@lru_cache(maxsize=None)
def _permute_index(perm: tuple) -> np.ndarray:
    length = len(perm)
    inv = [0] * length
    for i, p in enumerate(perm):
        inv[p] = i
    pairs, quads = _atom_index(length)
    src_pairs = [inv[a] * length + inv[b] for a, b in pairs]
    l2 = length * length
    src_quads = [
        l2 + ((inv[a] * length + inv[b]) * length + inv[c]) * length + inv[d] for a, b, c, d in quads
    ]
    return np.array(src_pairs + src_quads, dtype=np.intp)


def qf_oracle_check(lo: int = -2, hi: int = 2, max_len: int = 5, rel: Callable | None = None) -> dict:
    """Shape equality against atom-table equality on every ordered tuple of
    distinct window ends of length up to ``max_len``.

    Each ordered tuple is a permutation of a sorted one, and both shapes and
    tables transform under relabelling, so it is enough to compute them on
    sorted tuples and push every distinct (shape, table) pair through all
    permutations. Disagreement means one shape with two tables or vice versa.
    """
    from treelike.seq_ends import d_from_c, first_diff

    ends = all_ends(lo, hi)
    D = window_d_table(lo, hi, rel or d_from_c)
    fd = [[first_diff(a, b) for b in ends] for a in ends]
    rows = []
    for length in range(1, max_len + 1):
        combos = np.array(list(combinations(range(len(ends)), length)), dtype=np.intp)
        tables = atom_tables(combos, D)
        distinct: dict = {}
        weighted_distinct: dict = {}
        for c, tab in zip(combos, tables):
            c = c.tolist()
            s = shape([ends[i] for i in c], [[fd[i][j] for j in c] for i in c])
            key = tab.tobytes()
            distinct.setdefault((s.contracted(), key), tab)
            weighted_distinct.setdefault((s, key), tab)

        def count_conflicts(pairs: dict) -> int:
            shape_to_table: dict = {}
            table_to_shape: dict = {}
            conflicts = 0
            for (s, _), tab in pairs.items():
                for perm in permutations(range(length)):
                    ps = s.relabel(perm)
                    pt = permute_table(tab, perm).tobytes()
                    if shape_to_table.setdefault(ps, pt) != pt:
                        conflicts += 1
                    if table_to_shape.setdefault(pt, ps) != ps:
                        conflicts += 1
            return conflicts

        rows.append({
            "length": length,
            "sorted_tuples": len(combos),
            "shape_classes": len({s for s, _ in distinct}),
            "contracted_disagreements": count_conflicts(distinct),
            "weighted_disagreements": count_conflicts(weighted_distinct),
        })
    return {
        "window": [lo, hi],
        "ends": len(ends),
        "rows": rows,
        "ok": all(r["contracted_disagreements"] == 0 for r in rows),
    }


def d_equivalence_check(lo: int = -2, hi: int = 2, rel_a: Callable | None = None,
                        rel_b: Callable | None = None) -> dict:
    """Every quadruple of window ends: two D implementations must agree."""
    from treelike.seq_ends import d_from_c
    from treelike.tree_model import d_from_tree

    ends = all_ends(lo, hi)
    a = window_d_table(lo, hi, rel_a or d_from_c)
    b = d_table(ends, rel_b or d_from_tree)
    bad = np.argwhere(a != b)
    return {
        "window": [lo, hi],
        "ends": len(ends),
        "quadruples": int(a.size),
        "true_count": int(a.sum()),
        "mismatches": int(len(bad)),
        "examples": [[str(ends[i]) for i in q] for q in bad[:5]],
        "ok": len(bad) == 0,
    }
