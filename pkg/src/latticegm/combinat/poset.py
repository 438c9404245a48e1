"""Finite posets on [m], stored by their cover relations (Hasse diagram)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ..errors import InputError
from . import masks
from .masks import Mask


def _transitive_closure_down(m: int, lower_covers: list[Mask]) -> list[Mask] | None:
    """down[i] = {j : j <= i}; None if the cover graph has a cycle."""
    down: list[Mask | None] = [None] * m
    state = [0] * m  # 0 new, 1 on stack, 2 done

    def visit(i: int) -> bool:
        if state[i] == 2:
            return True
        if state[i] == 1:
            return False
        state[i] = 1
        acc = 1 << i
        for j in masks.elements(lower_covers[i]):
            if not visit(j):
                return False
            acc |= down[j]
        down[i] = acc
        state[i] = 2
        return True

    for i in range(m):
        if not visit(i):
            return None
    return down  # type: ignore[return-value]


@dataclass(frozen=True)
class Poset:
    """A partial order on the 0-based ground set ``range(m)``.

    ``covers`` holds pairs ``(i, j)`` meaning *i covers j*.  ``down[i]`` is the
    principal order ideal of ``i`` as a mask (``i`` included).
    """

    m: int
    covers: frozenset[tuple[int, int]]
    down: tuple[Mask, ...] = field(repr=False, compare=False)

    @classmethod
    def from_covers(cls, m: int, pairs: Iterable[tuple[int, int]]) -> "Poset":
        """Build from 0-based cover pairs ``(upper, lower)``.

        Rejects loops, out-of-range elements, duplicates, cycles and pairs that
        are implied transitively by the others.
        """
        masks.check_m(m)
        pairs = [tuple(p) for p in pairs]
        seen: set[tuple[int, int]] = set()
        lower_covers = [0] * m
        for p in pairs:
            if len(p) != 2:
                raise InputError(f"cover {p!r} must be a pair")
            i, j = p
            if not (0 <= i < m and 0 <= j < m):
                raise InputError(f"cover ({i + 1},{j + 1}) has an element outside [1, {m}]")
            if i == j:
                raise InputError(f"cover ({i + 1},{j + 1}) is a loop")
            if (i, j) in seen:
                raise InputError(f"duplicate cover ({i + 1},{j + 1})")
            seen.add((i, j))
            lower_covers[i] |= 1 << j
        down = _transitive_closure_down(m, lower_covers)
        if down is None:
            raise InputError("cover relations contain a cycle")
        for i, j in seen:
            # i covers j only if no other lower cover k of i has j below it
            others = lower_covers[i] & ~(1 << j)
            for k in masks.elements(others):
                if down[k] >> j & 1:
                    raise InputError(
                        f"({i + 1},{j + 1}) is not a cover: {i + 1} > {k + 1} > {j + 1}"
                    )
        return cls(m, frozenset(seen), tuple(down))

    @classmethod
    def from_labels(cls, m: int, pairs: Iterable[tuple[int, int]]) -> "Poset":
        """Like :meth:`from_covers` but with 1-based labels, as printed."""
        return cls.from_covers(m, [(i - 1, j - 1) for i, j in pairs])

    @classmethod
    def from_down_sets(cls, m: int, down: Iterable[Mask]) -> "Poset":
        """Build from principal ideals ``down[i]`` of a partial order (transitive reduction)."""
        down = list(down)
        covers = set()
        for i in range(m):
            strict = down[i] & ~(1 << i)
            for j in masks.elements(strict):
                # j is covered by i iff no k strictly between
                between = [k for k in masks.elements(strict) if k != j and down[k] >> j & 1]
                if not between:
                    covers.add((i, j))
        return cls.from_covers(m, sorted(covers))

    @classmethod
    def antichain(cls, m: int) -> "Poset":
        return cls.from_covers(m, [])

    @classmethod
    def chain(cls, m: int) -> "Poset":
        """The chain m > ... > 2 > 1."""
        return cls.from_covers(m, [(i + 1, i) for i in range(m - 1)])

    def leq(self, i: int, j: int) -> bool:
        """True iff ``i <= j``."""
        return bool(self.down[j] >> i & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    def comparable(self, i: int, j: int) -> bool:
        return self.leq(i, j) or self.leq(j, i)

    def up(self, i: int) -> Mask:
        return masks.from_elements(j for j in range(self.m) if self.down[j] >> i & 1)

    def is_ideal(self, S: Mask) -> bool:
        return all(masks.is_subset(self.down[i], S) for i in masks.elements(S))

    def maximal_elements(self, S: Mask) -> Mask:
        """Elements of ``S`` with nothing of ``S`` strictly above them."""
        out = 0
        for i in masks.elements(S):
            if not any(self.lt(i, j) for j in masks.elements(S)):
                out |= 1 << i
        return out

    def maximum(self, S: Mask) -> int | None:
        """The element of ``S`` above all others, if there is one."""
        for i in masks.elements(S):
            if masks.is_subset(S, self.down[i]):
                return i
        return None

    def sorted_covers(self) -> list[tuple[int, int]]:
        return sorted(self.covers)


def ideal_closure(P: Poset, S: Mask) -> Mask:
    """The order ideal of ``P`` generated by ``S``."""
    out = 0
    for i in masks.elements(S):
        out |= P.down[i]
    return out
