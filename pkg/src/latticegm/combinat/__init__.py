"""Subsets, posets, distributive lattices and graphs on a small ground set [m]."""

from . import masks
from .graph import (
    Graph,
    cliques,
    comparability_graph,
    maximal_cliques,
    minimal_graph,
    separates,
)
from .lattice import (
    DistributiveLattice,
    boolean_lattice,
    is_natural,
    join_irreducibles,
    lattice_close,
    order_ideals,
    underlying_poset,
)
from .masks import Mask
from .poset import Poset, ideal_closure

__all__ = [
    "DistributiveLattice",
    "Graph",
    "Mask",
    "Poset",
    "boolean_lattice",
    "cliques",
    "comparability_graph",
    "ideal_closure",
    "is_natural",
    "join_irreducibles",
    "lattice_close",
    "masks",
    "maximal_cliques",
    "minimal_graph",
    "order_ideals",
    "separates",
    "underlying_poset",
]
