"""Conditional independence statements, their binomials, and exact evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Union

from .combinat import Graph, masks
from .combinat.masks import Mask
from .errors import InputError, InvalidTriple, Unsaturated
from .report import Report

Rational = Union[Fraction, int]


@dataclass(frozen=True, order=True)
class CIStatement:
    """``A _||_ B | C`` over disjoint masks; identified with ``B _||_ A | C``."""

    A: Mask
    B: Mask
    C: Mask

    def __post_init__(self):
        if not self.A or not self.B or self.A & self.B or self.A & self.C or self.B & self.C:
            raise InvalidTriple(f"invalid CI statement {self}")

    def saturated(self, m: int) -> bool:
        return self.A | self.B | self.C == masks.full_mask(m)

    def normalized(self) -> "CIStatement":
        """Orientation with min(A) < min(B)."""
        if (self.A & -self.A) > (self.B & -self.B):
            return CIStatement(self.B, self.A, self.C)
        return self

    def __str__(self) -> str:
        def short(S):
            return "".join(str(i + 1) for i in masks.elements(S)) if S else "{}"

        return f"{short(self.A)} _||_ {short(self.B)} | {short(self.C)}"


def _monomial_key(mono: tuple[Mask, ...]) -> tuple:
    return tuple(masks.sort_key(S) for S in mono)


@dataclass(frozen=True)
class Binomial:
    """``prod(p_S for S in plus) - prod(p_S for S in minus)``; both sides sorted multisets."""

    plus: tuple[Mask, ...]
    minus: tuple[Mask, ...]

    def __post_init__(self):
        plus = tuple(sorted(self.plus, key=masks.sort_key))
        minus = tuple(sorted(self.minus, key=masks.sort_key))
        if len(plus) != len(minus):
            raise InputError("binomial terms must have equal degree")
        if plus == minus:
            raise InputError("binomial is identically zero")
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    @property
    def degree(self) -> int:
        return len(self.plus)

    def canonical(self) -> "Binomial":
        """Sign-normalized form: the larger monomial (by sorted (size, value) keys) first."""
        if _monomial_key(self.plus) >= _monomial_key(self.minus):
            return self
        return Binomial(self.minus, self.plus)

    def variables(self) -> set[Mask]:
        return set(self.plus) | set(self.minus)

    def evaluate(self, p: "Distribution") -> Fraction:
        return eval_binomial(self, p)

    def __str__(self) -> str:
        def mono(t):
            return "".join(f"p{masks.fmt_mask(S)}" for S in t)

        return f"{mono(self.plus)} - {mono(self.minus)}"


@dataclass(frozen=True)
class Distribution:
    """Exact nonnegative values on 2^[m]; missing keys are zero.

    Values need not sum to one; every check in this package is scale-invariant.
    """

    m: int
    values: Mapping[Mask, Fraction]

    def __init__(self, m: int, values: Mapping[Mask, Rational]):
        masks.check_m(m)
        vals = {}
        for S, v in values.items():
            if not masks.in_ground(S, m):
                raise InputError(f"set {masks.fmt_mask(S)} is not a subset of [{m}]")
            v = Fraction(v)
            if v < 0:
                raise InputError(f"negative probability at {masks.fmt_mask(S)}")
            vals[S] = v
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "values", dict(sorted(vals.items(), key=lambda kv: masks.sort_key(kv[0]))))

    def __getitem__(self, S: Mask) -> Fraction:
        return self.values.get(S, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Distribution) or other.m != self.m:
            return NotImplemented
        return self.support() == other.support() and all(
            self[S] == other[S] for S in self.support()
        )

    def __hash__(self) -> int:
        return hash((self.m, tuple((S, self[S]) for S in self.support())))

    def support(self) -> list[Mask]:
        return masks.sorted_masks(S for S, v in self.values.items() if v > 0)

    def total(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))

    @property
    def normalized(self) -> bool:
        return self.total() == 1

    def normalize(self) -> "Distribution":
        Z = self.total()
        if Z == 0:
            raise InputError("cannot normalize the zero vector")
        return Distribution(self.m, {S: v / Z for S, v in self.values.items()})


def pairwise_statements(G: Graph) -> list[CIStatement]:
    """``i _||_ j | rest`` for every non-edge ``{i, j}``."""
    full = masks.full_mask(G.m)
    return [
        CIStatement(1 << i, 1 << j, full & ~(1 << i | 1 << j)) for i, j in G.non_edges()
    ]


def _components(G: Graph, vertices: Mask) -> list[Mask]:
    comps = []
    left = vertices
    while left:
        start = left & -left
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for u in masks.elements(frontier):
                nxt |= G.adj[u]
            nxt &= vertices & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        left &= ~comp
    return comps


def saturated_global_statements(G: Graph) -> list[CIStatement]:
    """All ``A _||_ B | C`` with A, B, C partitioning [m] and C separating A from B.

    With A u B u C = [m], C separates A from B exactly when A and B are unions
    of connected components of G - C, so it suffices to split components.
    """
    full = masks.full_mask(G.m)
    out = set()
    for C in range(full + 1):
        comps = _components(G, full & ~C)
        k = len(comps)
        for choice in range(1, (1 << k) - 1):
            A = 0
            for t in range(k):
                if choice >> t & 1:
                    A |= comps[t]
            B = full & ~C & ~A
            out.add(CIStatement(A, B, C).normalized())
    return sorted(out, key=lambda s: (masks.sort_key(s.C), masks.sort_key(s.A), masks.sort_key(s.B)))


def ci_binomials(stmt: CIStatement, m: int) -> list[Binomial]:
    """Quadrics ``p_{A1 B1 C1} p_{A2 B2 C1} - p_{A1 B2 C1} p_{A2 B1 C1}`` of a saturated statement."""
    if not stmt.saturated(m):
        raise Unsaturated(f"{stmt} does not cover [{m}]")
    A_subs = sorted(masks.subsets(stmt.A), key=masks.sort_key)
    B_subs = sorted(masks.subsets(stmt.B), key=masks.sort_key)
    out: list[Binomial] = []
    seen = set()
    for C1 in sorted(masks.subsets(stmt.C), key=masks.sort_key):
        for A1, A2 in combinations(A_subs, 2):
            for B1, B2 in combinations(B_subs, 2):
                plus = (A1 | B1 | C1, A2 | B2 | C1)
                minus = (A1 | B2 | C1, A2 | B1 | C1)
                if sorted(plus) == sorted(minus):
                    continue
                b = Binomial(plus, minus).canonical()
                if b not in seen:
                    seen.add(b)
                    out.append(b)
    return out


def pairwise_binomials(G: Graph) -> list[Binomial]:
    """One quadric ``p_C p_{C+ij} - p_{C+i} p_{C+j}`` per non-edge ``{i, j}`` and ``C``."""
    out = []
    for stmt in pairwise_statements(G):
        out.extend(ci_binomials(stmt, G.m))
    return out


def global_binomials(G: Graph) -> list[Binomial]:
    """Deduplicated binomials of all saturated global Markov statements."""
    out, seen = [], set()
    for stmt in saturated_global_statements(G):
        for b in ci_binomials(stmt, G.m):
            if b not in seen:
                seen.add(b)
                out.append(b)
    return out


def eval_binomial(b: Binomial, p: Distribution | Mapping[Mask, Rational]) -> Fraction:
    get = p.__getitem__ if isinstance(p, Distribution) else (lambda S: Fraction(p.get(S, 0)))
    lhs = Fraction(1)
    for S in b.plus:
        lhs *= get(S)
    rhs = Fraction(1)
    for S in b.minus:
        rhs *= get(S)
    return lhs - rhs


def satisfies_all(bs: Iterable[Binomial], p: Distribution) -> Report:
    """Report every binomial that does not vanish at ``p``."""
    report = Report("binomial check")
    for b in bs:
        v = eval_binomial(b, p)
        if v != 0:
            report.fail("nonzero binomial", f"{b} = {v}", binomial=b, value=v)
    return report
