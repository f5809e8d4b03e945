"""Ehrenfeucht-Fraisse games on tuples of ends with moves restricted to orbit
representatives of the current parameters.

Moves inside one orbit of the pointwise stabiliser lead to positions with
the same type, so only one representative per orbit is needed. TypeB
families are infinite and get cut at ``depth``; that cut is the only place
the game is finitised, so the verdicts are exact for the restricted game.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from treelike.automorphisms import shape
from treelike.cones import Cone
from treelike.orbits import orbit_classification
from treelike.seq_ends import End, xor
from treelike.tree_model import Direction, branch_vertex


def candidates(t: Sequence[End], depth: int) -> list[End]:
    """One end per orbit of the stabiliser of t outside t."""
    t = tuple(t)
    if not t:
        return [End()]
    if len(t) == 1:
        return [xor(t[0], End((0,)))]
    if len(t) == 2:
        return [Cone.at(branch_vertex(t[0], t[1]), Direction.DOWN).canonical_end()]
    reps = orbit_classification(t).representatives(depth)
    return [r for r in dict.fromkeys(reps) if r not in t]


@dataclass
class RestrictedGame:
    depth: int
    _cands: dict = field(default_factory=dict)
    _keys: dict = field(default_factory=dict)
    _memo: dict = field(default_factory=dict)

    def key(self, t: tuple):
        k = self._keys.get(t)
        if k is None:
            k = self._keys[t] = shape(t).contracted()
        return k

    def moves(self, t: tuple) -> list[tuple]:
        out = self._cands.get(t)
        if out is None:
            out = self._cands[t] = [t + (c,) for c in candidates(t, self.depth)]
        return out

    def child_keys(self, t: tuple) -> set:
        return {self.key(u) for u in self.moves(t)}

    def equiv(self, t1: tuple, t2: tuple, m: int) -> bool:
        if self.key(t1) != self.key(t2):
            return False
        if m == 0:
            return True
        memo_key = (t1, t2, m)
        if memo_key in self._memo:
            return self._memo[memo_key]
        if m == 1:
            result = self.child_keys(t1) == self.child_keys(t2)
        else:
            result = self._half(t1, t2, m) and self._half(t2, t1, m)
        self._memo[memo_key] = result
        return result

    def _half(self, t1: tuple, t2: tuple, m: int) -> bool:
        """Every spoiler move on t1 has a duplicator answer on t2."""
        answers = self.moves(t2)
        for u in self.moves(t1):
            k = self.key(u)
            if not any(self.key(w) == k and self.equiv(u, w, m - 1) for w in answers):
                return False
        return True


def ef_equiv_m(t1: Sequence[End], t2: Sequence[End], m: int, depth: int = 8) -> bool:
    """Whether duplicator wins the rank-m restricted game from (t1, t2)."""
    if len(t1) != len(t2):
        raise ValueError("tuples of different length")
    if m < 0:
        raise ValueError("rank must be non-negative")
    return RestrictedGame(depth).equiv(tuple(t1), tuple(t2), m)


# the base configuration for (*) instances: three ends around ({};0)
STAR_BASE = (End(), End((0,)), End((-1,)))


def star_pair(depth1: int, depth2: int, base: Sequence[End] = STAR_BASE, anchor_index: int = 0) -> tuple:
    """Tuples base + (b_i) with b_i in the TypeB cone at depth_i along S(v, a)."""
    from treelike.orbits import TypeB
    from treelike.tree_model import median

    base = tuple(base)
    v = median(*base[:3]) if len(base) == 3 else None
    if v is None:
        raise ValueError("star_pair expects a three-end base")
    fam = TypeB(v, base[anchor_index])
    b1 = fam.cone_at_depth(depth1).canonical_end()
    b2 = fam.cone_at_depth(depth2).canonical_end()
    return base + (b1,), base + (b2,)
