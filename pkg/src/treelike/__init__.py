"""Concrete D-relations on ends of the trivalent tree, plus the companion
structures used to check them: cone algebra, explicit automorphisms,
distance-transitive graphs and the classical reducts on Q and Z."""

from treelike.seq_ends import INF, End, c_rel, d_from_c, first_diff, xor
from treelike.tree_model import (
    Direction,
    TreeVertex,
    d_from_tree,
    e_a,
    line,
    median,
    neighbors,
    ray_step,
    tree_distance,
)

__all__ = [
    "INF",
    "End",
    "c_rel",
    "d_from_c",
    "first_diff",
    "xor",
    "Direction",
    "TreeVertex",
    "d_from_tree",
    "e_a",
    "line",
    "median",
    "neighbors",
    "ray_step",
    "tree_distance",
]

__version__ = "0.1.0"
