"""Subsets of the ground set [m] stored as plain ``int`` bitmasks.

Element ``i`` (0-based) is present iff bit ``i`` is set.  The 1-based
labels used in printed output (``{1,3}``) only appear in :func:`fmt_mask`
and :func:`parse_mask`.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from ..errors import InputError

MAX_M = 16

Mask = int


def check_m(m: int) -> int:
    if not isinstance(m, int) or isinstance(m, bool) or not 0 <= m <= MAX_M:
        raise InputError(f"ground-set size m must be an integer in [0, {MAX_M}], got {m!r}")
    return m


def full_mask(m: int) -> Mask:
    return (1 << m) - 1


def bit(i: int) -> Mask:
    return 1 << i


def from_elements(elements: Iterable[int]) -> Mask:
    out = 0
    for i in elements:
        out |= 1 << i
    return out


def elements(S: Mask) -> list[int]:
    """0-based elements of ``S`` in increasing order."""
    out = []
    i = 0
    while S:
        if S & 1:
            out.append(i)
        S >>= 1
        i += 1
    return out


def popcount(S: Mask) -> int:
    return bin(S).count("1")


def is_subset(S: Mask, T: Mask) -> bool:
    return S & ~T == 0


def in_ground(S: Mask, m: int) -> bool:
    return 0 <= S <= full_mask(m)


def sort_key(S: Mask) -> tuple[int, int]:
    """Linear extension of inclusion: by cardinality, then numeric value."""
    return (popcount(S), S)


def sorted_masks(masks: Iterable[Mask]) -> list[Mask]:
    return sorted(set(masks), key=sort_key)


def subsets(S: Mask) -> Iterator[Mask]:
    """All subsets of ``S`` (including 0 and ``S``), in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == S:
            return
        sub = (sub - S) & S


def all_masks(m: int) -> list[Mask]:
    """All of 2^[m] in the fixed column order."""
    return sorted(range(1 << m), key=sort_key)


def fmt_mask(S: Mask) -> str:
    """Human-readable 1-based set, e.g. ``{1,3}``; the empty set prints as ``{}``."""
    return "{" + ",".join(str(i + 1) for i in elements(S)) + "}"


def mask_label(S: Mask) -> str:
    """Comma-separated 1-based label used in instance files (``""`` for the empty set)."""
    return ",".join(str(i + 1) for i in elements(S))


def parse_mask(text: str, m: int) -> Mask:
    """Parse ``"1,3"`` (1-based, ascending, ``""`` = empty set) into a mask."""
    if not isinstance(text, str):
        raise InputError(f"subset must be a string like '1,3', got {text!r}")
    text = text.strip()
    if text == "":
        return 0
    try:
        items = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise InputError(f"subset {text!r} is not a comma-separated list of integers") from None
    if items != sorted(set(items)):
        raise InputError(f"subset {text!r} must list distinct elements in ascending order")
    for i in items:
        if not 1 <= i <= m:
            raise InputError(f"subset {text!r} has element {i} outside [1, {m}]")
    return from_elements(i - 1 for i in items)


def from_digits(text: str) -> Mask:
    """Shorthand ``"134"`` -> {1,3,4}; only meaningful for m <= 9."""
    return from_elements(int(ch) - 1 for ch in text)
