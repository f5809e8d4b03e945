"""Finite-support 0/1 sequences indexed by Z, with the C-relation and the
D-relation built from it.

An end is stored by its support, the sorted indices carrying a 1.
"""
from __future__ import annotations

import random
import re
from bisect import bisect_left
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Iterable, Union


@total_ordering
class _PlusInfinity:
    """The level +inf. Compares above every integer and equal only to itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("+inf")

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_PlusInfinity, ())


INF = _PlusInfinity()

Level = Union[int, _PlusInfinity]


@dataclass(frozen=True, slots=True)
class End:
    support: tuple[int, ...] = ()
    _bits: frozenset = field(default=frozenset(), init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        support = tuple(self.support)
        for i in support:
            if not isinstance(i, int) or isinstance(i, bool):
                raise TypeError(f"support entries must be integers, got {i!r}")
        if any(a >= b for a, b in zip(support, support[1:])):
            raise ValueError(f"support must be strictly increasing: {support}")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "_bits", frozenset(support))

    @classmethod
    def _trusted(cls, support: tuple[int, ...]) -> "End":
        """Skip validation; only for supports already known to be sorted ints."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "support", support)
        object.__setattr__(obj, "_bits", frozenset(support))
        return obj

    @classmethod
    def of(cls, indices: Iterable[int]) -> "End":
        return cls(tuple(sorted(set(indices))))

    @classmethod
    def parse(cls, text: str) -> "End":
        m = re.fullmatch(r"\s*\{\s*([-0-9,\s]*)\}\s*", text)
        if m is None:
            raise ValueError(f"not an End literal: {text!r}")
        body = m.group(1).strip()
        if not body:
            return cls()
        return cls(tuple(int(tok) for tok in body.split(",")))

    def __str__(self):
        return "{" + ",".join(map(str, self.support)) + "}"

    def bit(self, i: int) -> int:
        return 1 if i in self._bits else 0

    def below(self, n: int) -> tuple[int, ...]:
        """Support of the restriction to indices < n."""
        return self.support[: bisect_left(self.support, n)]


def xor(a: End, b: End) -> End:
    return End._trusted(tuple(sorted(a._bits ^ b._bits)))


def first_diff(a: End, b: End) -> Level:
    diff = a._bits ^ b._bits
    return min(diff) if diff else INF


def c_rel(x: End, y: End, z: End) -> bool:
    """C(x;y,z): some index i has x_i != y_i while y and z agree up to i."""
    return first_diff(x, y) < first_diff(y, z)


def d_from_c(x: End, y: End, z: End, w: End) -> bool:
    return (c_rel(x, z, w) and c_rel(y, z, w)) or (c_rel(z, x, y) and c_rel(w, x, y))


def random_end(rng: random.Random, window: int = 12, density: float | None = None) -> End:
    """Draw an end whose support lies in [-window, window].

    With ``density`` unset each draw picks its own density, so both sparse and
    crowded supports turn up.
    """
    p = rng.random() if density is None else density
    return End(tuple(i for i in range(-window, window + 1) if rng.random() < p))


def all_ends(lo: int, hi: int) -> list[End]:
    """Every end with support inside [lo, hi], in binary-counting order."""
    span = hi - lo + 1
    return [End(tuple(lo + j for j in range(span) if mask >> j & 1)) for mask in range(1 << span)]
