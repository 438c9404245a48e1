"""Constructive factorization of distributions with natural lattice support.

Given ``p`` supported on a natural lattice ``L = J(P)`` and a graph ``G``
containing the Hasse diagram of ``P``, :func:`factorize` either returns
positive clique parameters ``c_S`` with ``p_U = prod(c_S : S clique, S <= U)``
for every ``U`` in ``L``, or names a pairwise Markov binomial that fails.

The coordinates ``p_S`` for ``S`` an order-ideal closure of a clique are
solved one at a time: each closure's monomial contains the parameter of a
clique generating it, and that parameter has not been used by any earlier
closure.  The remaining coordinates are forced by quadrics
``p_S p_{S-ij} = p_{S-i} p_{S-j}`` for a non-edge ``{i, j}`` among the
maximal elements of ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .ci import Distribution
from .combinat import (
    DistributiveLattice,
    Graph,
    Poset,
    cliques,
    ideal_closure,
    is_natural,
    masks,
    underlying_poset,
)
from .combinat.masks import Mask
from .errors import (
    InputError,
    MissingCoverEdge,
    NotNatural,
    NotNaturalSupport,
    PairwiseViolation,
)
from .toric import matrix_AG


@dataclass(frozen=True)
class CliqueClosureSet:
    """Closures of cliques inside ``L``, in linear-extension order, with one generating clique each."""

    closures: tuple[Mask, ...]
    rep: dict[Mask, Mask]

    def __len__(self) -> int:
        return len(self.closures)

    def __contains__(self, S: Mask) -> bool:
        return S in self.rep


@dataclass(frozen=True)
class FactorizationCertificate:
    m: int
    support: tuple[Mask, ...]
    clique_params: dict[Mask, Fraction]
    dependent_trace: tuple[tuple[Mask, int, int], ...] = field(default=())

    def value(self, U: Mask) -> Fraction:
        """The parametrized coordinate at ``U`` (zero off the support)."""
        if U not in set(self.support):
            return Fraction(0)
        v = Fraction(1)
        for S, c in self.clique_params.items():
            if masks.is_subset(S, U):
                v *= c
        return v

    def distribution(self) -> Distribution:
        return Distribution(self.m, {U: self.value(U) for U in self.support})


def _lex_key(S: Mask) -> tuple[int, ...]:
    return tuple(masks.elements(S))


def check_cover_edges(P: Poset, G: Graph) -> None:
    for i, j in P.sorted_covers():
        if not G.has_edge(i, j):
            raise MissingCoverEdge(i, j)


def clique_closures(L: DistributiveLattice, G: Graph) -> CliqueClosureSet:
    if not is_natural(L):
        raise NotNatural("lattice is not natural")
    P = underlying_poset(L)
    check_cover_edges(P, G)
    every, _ = cliques(G)
    groups: dict[Mask, list[Mask]] = {}
    for C in every:
        groups.setdefault(ideal_closure(P, C), []).append(C)
    rep = {
        S: min(cs, key=lambda C: (-masks.popcount(C), _lex_key(C))) for S, cs in groups.items()
    }
    closures = tuple(masks.sorted_masks(groups))
    return CliqueClosureSet(closures, {S: rep[S] for S in closures})


def dimension_counts(L: DistributiveLattice, G: Graph) -> tuple[int, int]:
    """(number of independent coordinates, number of forced coordinates)."""
    n = len(clique_closures(L, G))
    return n, len(L) - n


def support_lattice(p: Distribution) -> DistributiveLattice:
    supp = p.support()
    if not supp:
        raise NotNaturalSupport("distribution has empty support")
    try:
        L = DistributiveLattice(p.m, supp)
    except InputError as exc:
        raise NotNaturalSupport(f"support is not a lattice: {exc}") from None
    if not is_natural(L):
        raise NotNaturalSupport("support is a distributive lattice but not a natural one")
    return L


def first_non_edge(G: Graph, M: Mask) -> tuple[int, int] | None:
    """Lexicographically smallest pair i < j in ``M`` that is not an edge."""
    els = masks.elements(M)
    for a, i in enumerate(els):
        for j in els[a + 1:]:
            if not G.has_edge(i, j):
                return i, j
    return None


def factorize(p: Distribution, G: Graph) -> FactorizationCertificate:
    if p.m != G.m:
        raise InputError("distribution and graph have different ground sets")
    L = support_lattice(p)
    closure_set = clique_closures(L, G)
    P = underlying_poset(L)
    every, _ = cliques(G)

    params: dict[Mask, Fraction] = {}
    for S in closure_set.closures:
        C = closure_set.rep[S]
        assert C not in params, "generating clique reused by an earlier closure"
        rest = Fraction(1)
        for T in every:
            if T != C and masks.is_subset(T, S):
                rest *= params.setdefault(T, Fraction(1))
        params[C] = p[S] / rest

    trace = []
    for S in L.elements:
        if S in closure_set:
            continue
        pair = first_non_edge(G, P.maximal_elements(S))
        if pair is None:
            raise AssertionError(f"maximal elements of {masks.fmt_mask(S)} form a clique")
        i, j = pair
        lhs = p[S] * p[S & ~(1 << i | 1 << j)]
        rhs = p[S & ~(1 << i)] * p[S & ~(1 << j)]
        if lhs != rhs:
            raise PairwiseViolation(S, i, j, lhs, rhs)
        trace.append((S, i, j))

    ordered = {T: params[T] for T in every}
    return FactorizationCertificate(p.m, tuple(L.elements), ordered, tuple(trace))


def verify_certificate(cert: FactorizationCertificate, p: Distribution, G: Graph) -> bool:
    """Recompute the restricted clique parametrization and compare on all of 2^[m]."""
    every, _ = cliques(G)
    if cert.m != p.m or set(cert.clique_params) != set(every):
        return False
    if any(c <= 0 for c in cert.clique_params.values()):
        return False
    return all(cert.value(U) == p[U] for U in range(1 << p.m))


def clique_hosts(G: Graph) -> dict[Mask, Mask]:
    """Each clique mapped to the first maximal clique (sorted order) containing it."""
    every, maximal = cliques(G)
    return {C: next(S for S in maximal if masks.is_subset(C, S)) for C in every}


def to_standard_params(cert: FactorizationCertificate, G: Graph) -> dict[tuple[Mask, Mask], Fraction]:
    """Clique potentials ``a^S_T`` (S maximal) with the same unrestricted image as ``c``."""
    host = clique_hosts(G)
    _, maximal = cliques(G)
    out = {}
    for S in maximal:
        for T in sorted(masks.subsets(S), key=masks.sort_key):
            v = Fraction(1)
            for C, c in cert.clique_params.items():
                if host[C] == S and masks.is_subset(C, T):
                    v *= c
            out[(S, T)] = v
    return out


def factor_parameters(cert: FactorizationCertificate, G: Graph) -> dict[tuple[Mask, Mask], Fraction]:
    """Standard potentials reproducing ``p`` on all of 2^[m], zeros included.

    Potentials on rows that no support column touches are set to zero; since
    the support is feasible for the standard matrix, exactly the coordinates
    off the support vanish.
    """
    a = to_standard_params(cert, G)
    M = matrix_AG(G)
    touched = 0
    for U in cert.support:
        touched |= M.support_bits(U)
    for r, lab in enumerate(M.rows):
        if not touched >> r & 1:
            a[lab] = Fraction(0)
    return a


def complete_from_closures(
    L: DistributiveLattice,
    G: Graph,
    independent: Mapping[Mask, Fraction],
    choose: Callable[[list[tuple[int, int]]], tuple[int, int]] | None = None,
) -> Distribution:
    """Extend values on the clique closures to all of ``L`` via pairwise quadrics.

    ``choose`` picks which non-edge among the maximal elements to use; the
    default takes the first.  Values off ``L`` are zero.
    """
    closure_set = clique_closures(L, G)
    if set(independent) != set(closure_set.closures):
        raise InputError("independent values must be given exactly on the clique closures")
    P = underlying_poset(L)
    vals: dict[Mask, Fraction] = {}
    for S in L.elements:
        if S in closure_set:
            vals[S] = Fraction(independent[S])
            continue
        els = masks.elements(P.maximal_elements(S))
        pairs = [(i, j) for a, i in enumerate(els) for j in els[a + 1:] if not G.has_edge(i, j)]
        i, j = pairs[0] if choose is None else choose(pairs)
        vals[S] = vals[S & ~(1 << i)] * vals[S & ~(1 << j)] / vals[S & ~(1 << i | 1 << j)]
    return Distribution(L.m, vals)
