"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class LatticeGMError(Exception):
    """Base class for every error raised by this package."""


class InputError(LatticeGMError, ValueError):
    """Malformed or inconsistent input (bad masks, cyclic covers, unknown keys)."""


class NotNatural(LatticeGMError):
    """A lattice lacks the empty set, the full set, or has a cover step of size != 1."""


class NotNaturalSupport(NotNatural):
    """The support of a distribution is not a natural distributive lattice."""


class InvalidTriple(LatticeGMError, ValueError):
    """A separation/CI triple (A, B, C) is not pairwise disjoint or has an empty side."""


class Unsaturated(LatticeGMError, ValueError):
    """A CI statement does not cover the whole ground set."""


class EmptyColumn(LatticeGMError, ValueError):
    """A parameter matrix has a column with no nonzero entry."""


class NotFeasible(LatticeGMError):
    """A column set is not feasible for the given matrix."""


class BadCertificate(LatticeGMError, ValueError):
    """A linear functional does not certify the claimed face."""


class NonIntegerExponent(LatticeGMError, ValueError):
    """A deformation exponent c.a_j is not a nonnegative integer."""


class ColumnMismatch(LatticeGMError, ValueError):
    """Two matrices are indexed by different column label sets."""


class MissingCoverEdge(LatticeGMError):
    """A cover pair of the underlying poset is not an edge of the graph."""

    def __init__(self, upper: int, lower: int):
        self.upper = upper
        self.lower = lower
        super().__init__(
            f"cover relation {upper + 1} > {lower + 1} is not an edge of the graph"
        )


class PairwiseViolation(LatticeGMError):
    """A pairwise Markov binomial fails at a dependent lattice element."""

    def __init__(self, S: int, i: int, j: int, lhs=None, rhs=None):
        self.S = S
        self.i = i
        self.j = j
        self.lhs = lhs
        self.rhs = rhs
        from .combinat.masks import fmt_mask

        super().__init__(
            f"pairwise binomial for {i + 1} _||_ {j + 1} fails at S={fmt_mask(S)}: "
            f"p_S p_(S-ij) = {lhs} but p_(S-i) p_(S-j) = {rhs}"
        )


class NotComparabilitySubgraph(LatticeGMError):
    """A clique of the graph has no maximum element in the poset."""

    def __init__(self, clique: int):
        self.clique = clique
        from .combinat.masks import fmt_mask

        super().__init__(f"clique {fmt_mask(clique)} has no maximum element in the poset")
