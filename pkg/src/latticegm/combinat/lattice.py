"""Distributive sublattices of the Boolean lattice 2^[m] and Birkhoff's representation."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from ..errors import InputError, NotNatural
from . import masks
from .masks import Mask
from .poset import Poset


@dataclass(frozen=True)
class DistributiveLattice:
    """A union/intersection-closed family of subsets of [m].

    ``elements`` is kept sorted by (cardinality, value), which is a linear
    extension of inclusion.  Construction verifies closure unless
    ``check=False`` is passed by a caller that already guarantees it.
    """

    m: int
    elements: tuple[Mask, ...]
    members: frozenset[Mask] = field(repr=False, compare=False)

    def __init__(self, m: int, elements: Iterable[Mask], check: bool = True):
        masks.check_m(m)
        elems = masks.sorted_masks(elements)
        if not elems:
            raise InputError("a lattice needs at least one element")
        for S in elems:
            if not masks.in_ground(S, m):
                raise InputError(f"set {masks.fmt_mask(S)} is not a subset of [{m}]")
        members = frozenset(elems)
        if check:
            for a, S in enumerate(elems):
                for T in elems[a + 1:]:
                    if S | T not in members or S & T not in members:
                        raise InputError(
                            f"family is not a lattice: {masks.fmt_mask(S)} and "
                            f"{masks.fmt_mask(T)} lack their union or intersection"
                        )
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "elements", tuple(elems))
        object.__setattr__(self, "members", members)

    def __contains__(self, S: Mask) -> bool:
        return S in self.members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def bottom(self) -> Mask:
        return self.elements[0]

    @cached_property
    def top(self) -> Mask:
        out = 0
        for S in self.elements:
            out |= S
        return out

    def largest_below(self, S: Mask) -> Mask | None:
        """Largest element of the lattice contained in ``S`` (None if none is)."""
        out = None
        for T in self.elements:
            if masks.is_subset(T, S):
                out = T if out is None else out | T
        return out

    def lower_covers(self, S: Mask) -> list[Mask]:
        """Elements of the lattice covered by ``S``.

        Every lower cover misses some ``i`` in ``S``, so it is the largest
        element below ``S - {i}``; the covers are the maximal such candidates.
        """
        cands = set()
        for i in masks.elements(S):
            T = self.largest_below(S & ~(1 << i))
            if T is not None:
                cands.add(T)
        return masks.sorted_masks(
            T for T in cands if not any(T != U and masks.is_subset(T, U) for U in cands)
        )

    def cover_pairs(self) -> list[tuple[Mask, Mask]]:
        """All Hasse-diagram pairs ``(S, T)`` with S covering T."""
        return [(S, T) for S in self.elements for T in self.lower_covers(S)]


def boolean_lattice(m: int) -> DistributiveLattice:
    return DistributiveLattice(m, range(1 << m), check=False)


def order_ideals(P: Poset) -> DistributiveLattice:
    """J(P): all down-closed subsets of ``P``."""
    order = sorted(range(P.m), key=lambda i: masks.popcount(P.down[i]))
    ideals = [0]
    for i in order:
        below = P.down[i] & ~(1 << i)
        ideals += [I | 1 << i for I in ideals if masks.is_subset(below, I)]
    return DistributiveLattice(P.m, ideals, check=False)


def lattice_close(family: Iterable[Mask], m: int) -> DistributiveLattice:
    """Smallest union- and intersection-closed family containing ``family``."""
    closed = set(family)
    if not closed:
        raise InputError("lattice_close needs a nonempty family")
    frontier = list(closed)
    while frontier:
        new = []
        current = list(closed)
        for S in frontier:
            for T in current:
                for U in (S | T, S & T):
                    if U not in closed:
                        closed.add(U)
                        new.append(U)
        frontier = new
    return DistributiveLattice(m, closed, check=False)


def is_natural(L: DistributiveLattice) -> bool:
    """Rank equals cardinality and both the empty and the full set are present.

    In a distributive lattice all maximal chains between two elements have the
    same length, so it suffices that every nonempty element has a lower cover
    of size one.
    """
    if 0 not in L or masks.full_mask(L.m) not in L:
        return False
    return all(
        any(S & ~(1 << i) in L for i in masks.elements(S)) for S in L.elements if S
    )


def _require_natural(L: DistributiveLattice) -> None:
    if not is_natural(L):
        raise NotNatural("lattice is not natural (rank differs from cardinality)")


def join_irreducibles(L: DistributiveLattice) -> list[Mask]:
    """Elements covering exactly one other element, in linear-extension order."""
    if is_natural(L):
        return [
            S for S in L.elements
            if sum(1 for i in masks.elements(S) if S & ~(1 << i) in L) == 1
        ]
    return [S for S in L.elements if len(L.lower_covers(S)) == 1]


def underlying_poset(L: DistributiveLattice) -> Poset:
    """The poset P on [m] with J(P) = L, for natural L.

    The join irreducible attached to element ``i`` is the smallest member of L
    containing ``i``; then ``j <= i`` iff ``j`` lies in it.
    """
    _require_natural(L)
    down = []
    for i in range(L.m):
        J = masks.full_mask(L.m)
        for S in L.elements:
            if S >> i & 1:
                J &= S
        down.append(J)
    return Poset.from_down_sets(L.m, down)
