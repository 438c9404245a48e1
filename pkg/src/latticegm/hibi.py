"""Hibi ideals of distributive lattices and lattice-restricted graphical models."""

from __future__ import annotations

from itertools import combinations

from .ci import Binomial
from .combinat import (
    DistributiveLattice,
    Graph,
    cliques,
    is_natural,
    masks,
    underlying_poset,
)
from .combinat.masks import Mask
from .errors import NotComparabilitySubgraph, NotNatural
from .factorization import check_cover_edges
from .toric import ParamMatrix, matrix_BG, same_row_space


def hibi_generators(L: DistributiveLattice) -> list[Binomial]:
    """``p_S p_T - p_{S&T} p_{S|T}`` for each incomparable pair; ``p_S p_T`` is the leading term."""
    out = []
    for S, T in combinations(L.elements, 2):
        if masks.is_subset(S, T) or masks.is_subset(T, S):
            continue
        out.append(Binomial((S, T), (S & T, S | T)))
    return out


def hibi_matrix(L: DistributiveLattice) -> ParamMatrix:
    """Rows ``t, b1..bm``; column ``S`` has ones at ``t`` and at ``b_i`` for i in S."""
    if not is_natural(L):
        raise NotNatural("the Hibi parametrization here needs a natural lattice")
    rows = ("t",) + tuple(f"b{i + 1}" for i in range(L.m))
    entries = [tuple(1 for _ in L.elements)]
    entries += [tuple(S >> i & 1 for S in L.elements) for i in range(L.m)]
    return ParamMatrix(L.m, rows, tuple(L.elements), tuple(entries), "hibi")


def lattice_model_matrix(L: DistributiveLattice, G: Graph) -> ParamMatrix:
    """Clique parametrization with columns restricted to ``L``."""
    if not is_natural(L):
        raise NotNatural("lattice is not natural")
    check_cover_edges(underlying_poset(L), G)
    return matrix_BG(G, cols=L.elements)


def check_hibi_equality(L: DistributiveLattice, G: Graph) -> bool:
    """Whether the lattice graphical model ideal equals the Hibi ideal (as kernels)."""
    return same_row_space(lattice_model_matrix(L, G), hibi_matrix(L))


def substitution_witness(L: DistributiveLattice, G: Graph) -> dict[str, list[Mask]]:
    """Group clique parameters into Hibi parameters.

    ``t`` collects the empty clique and ``b_i`` collects every clique whose
    maximum in the poset is ``i``.  Fails if some clique has no maximum, which
    happens exactly when ``G`` has an edge between incomparable elements.
    """
    P = underlying_poset(L)
    every, _ = cliques(G)
    out: dict[str, list[Mask]] = {"t": [0]}
    out.update({f"b{i + 1}": [] for i in range(L.m)})
    for C in every:
        if not C:
            continue
        top = P.maximum(C)
        if top is None:
            raise NotComparabilitySubgraph(C)
        out[f"b{top + 1}"].append(C)
    return out
