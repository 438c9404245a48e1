"""Monomial parametrizations of graphical models and their supports.

A :class:`ParamMatrix` is a 0/1 matrix whose rows are parameters and whose
columns are subsets ``U`` of [m]; the point it parametrizes has coordinate
``p_U = prod_i theta_i ** a[i][U]``.  Feasibility of a column set is a
combinatorial test on supports; being facial is decided by an exact linear
program.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import linalg
from .ci import Binomial, Distribution
from .combinat import Graph, cliques, masks
from .combinat.masks import Mask
from .errors import (
    BadCertificate,
    ColumnMismatch,
    EmptyColumn,
    InputError,
    NonIntegerExponent,
    NotFeasible,
)
from .fm import solve_inequalities

RowLabel = Hashable


def fmt_row(label: RowLabel) -> str:
    if isinstance(label, tuple):
        S, T = label
        return f"({_short(S)},{_short(T)})"
    if isinstance(label, int):
        return _short(label)
    return str(label)


def _short(S: Mask) -> str:
    return "".join(str(i + 1) for i in masks.elements(S)) if S else "{}"


@dataclass(frozen=True)
class ParamMatrix:
    """Labeled 0/1 matrix; ``entries[r][c]`` pairs ``rows[r]`` with ``cols[c]``."""

    m: int
    rows: tuple[RowLabel, ...]
    cols: tuple[Mask, ...]
    entries: tuple[tuple[int, ...], ...]
    kind: str = ""

    def __post_init__(self):
        if len(self.entries) != len(self.rows):
            raise InputError("entry rows do not match row labels")
        if any(len(r) != len(self.cols) for r in self.entries):
            raise InputError("entry columns do not match column labels")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def col_index(self, U: Mask) -> int:
        try:
            return self._col_pos[U]
        except KeyError:
            raise InputError(f"{masks.fmt_mask(U)} is not a column of this matrix") from None

    @property
    def _col_pos(self) -> dict[Mask, int]:
        pos = self.__dict__.get("_pos_cache")
        if pos is None:
            pos = {U: c for c, U in enumerate(self.cols)}
            object.__setattr__(self, "_pos_cache", pos)
        return pos

    def row_index(self, label: RowLabel) -> int:
        return self.rows.index(label)

    def entry(self, row: RowLabel, U: Mask) -> int:
        return self.entries[self.row_index(row)][self.col_index(U)]

    def column(self, U: Mask) -> list[int]:
        c = self.col_index(U)
        return [r[c] for r in self.entries]

    def support_bits(self, U: Mask) -> int:
        """Rows where column ``U`` is nonzero, as a bitmask over row positions."""
        c = self.col_index(U)
        out = 0
        for r, row in enumerate(self.entries):
            if row[c]:
                out |= 1 << r
        return out

    def restrict(self, cols: Iterable[Mask]) -> "ParamMatrix":
        keep = masks.sorted_masks(cols)
        idx = [self.col_index(U) for U in keep]
        return ParamMatrix(
            self.m, self.rows, tuple(keep),
            tuple(tuple(row[c] for c in idx) for row in self.entries), self.kind,
        )

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.shape)

    def to_text(self) -> str:
        """Plain-text integer grid with a header row of column labels."""
        labels = [fmt_row(r) for r in self.rows]
        width = max([len(x) for x in labels] + [1])
        heads = [_short(U) for U in self.cols]
        cw = [max(len(h), 1) for h in heads]
        lines = [" " * width + " " + " ".join(h.rjust(w) for h, w in zip(heads, cw))]
        for lab, row in zip(labels, self.entries):
            lines.append(lab.ljust(width) + " " + " ".join(str(v).rjust(w) for v, w in zip(row, cw)))
        return "\n".join(lines)


def matrix_AG(G: Graph, cols: Iterable[Mask] | None = None) -> ParamMatrix:
    """Standard parametrization: rows ``(S, T)`` for maximal cliques S and T subset S."""
    _, maximal = cliques(G)
    columns = masks.all_masks(G.m) if cols is None else masks.sorted_masks(cols)
    rows, entries = [], []
    for S in maximal:
        for T in sorted(masks.subsets(S), key=masks.sort_key):
            rows.append((S, T))
            entries.append(tuple(int(U & S == T) for U in columns))
    return ParamMatrix(G.m, tuple(rows), tuple(columns), tuple(entries), "AG")


def matrix_BG(G: Graph, cols: Iterable[Mask] | None = None) -> ParamMatrix:
    """Clique parametrization: one row per clique S, entry 1 iff S is a subset of U."""
    every, _ = cliques(G)
    columns = masks.all_masks(G.m) if cols is None else masks.sorted_masks(cols)
    entries = [tuple(int(masks.is_subset(S, U)) for U in columns) for S in every]
    return ParamMatrix(G.m, tuple(every), tuple(columns), tuple(entries), "BG")


def apply_param(M: ParamMatrix, theta: Sequence) -> Distribution:
    """``p_U = prod_i theta_i ** a_iU`` with 0**0 = 1."""
    if len(theta) != len(M.rows):
        raise InputError(f"need {len(M.rows)} parameters, got {len(theta)}")
    theta = [Fraction(t) for t in theta]
    values = {}
    for c, U in enumerate(M.cols):
        v = Fraction(1)
        for r, row in enumerate(M.entries):
            if row[c]:
                v *= theta[r] ** row[c]
        values[U] = v
    return Distribution(M.m, values)


# -- feasibility ---------------------------------------------------------------


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    H: tuple[RowLabel, ...] = ()
    violating: Mask | None = None

    def __bool__(self) -> bool:
        return self.feasible


def _check_columns(M: ParamMatrix, F: Iterable[Mask]) -> list[Mask]:
    for U in M.cols:
        if not M.support_bits(U):
            raise EmptyColumn(f"column {masks.fmt_mask(U)} has no nonzero entry")
    F = masks.sorted_masks(F)
    for U in F:
        M.col_index(U)
    return F


def is_feasible(M: ParamMatrix, F: Iterable[Mask]) -> Feasibility:
    """No column outside ``F`` has its support inside the union of the supports of ``F``.

    On success ``H`` lists the rows missed by every column of ``F``; otherwise
    ``violating`` names the first offending column.
    """
    F = _check_columns(M, F)
    inside = set(F)
    union = 0
    for U in F:
        union |= M.support_bits(U)
    for U in M.cols:
        if U not in inside and M.support_bits(U) & ~union == 0:
            return Feasibility(False, violating=U)
    H = tuple(M.rows[r] for r in range(len(M.rows)) if not union >> r & 1)
    return Feasibility(True, H=H)


def zero_set(M: ParamMatrix, H: Iterable[RowLabel]) -> list[Mask]:
    """Columns vanishing on every row of ``H``."""
    hb = 0
    for lab in H:
        hb |= 1 << M.row_index(lab)
    return [U for U in M.cols if M.support_bits(U) & hb == 0]


def is_feasible_by_rows(M: ParamMatrix, F: Iterable[Mask]) -> bool:
    """Row-set characterization: ``F`` is the zero set of the rows it never touches."""
    F = _check_columns(M, F)
    union = 0
    for U in F:
        union |= M.support_bits(U)
    H = [M.rows[r] for r in range(len(M.rows)) if not union >> r & 1]
    return zero_set(M, H) == F


# -- facial sets -----------------------------------------------------------------


@dataclass(frozen=True)
class Faciality:
    """Outcome of :func:`is_facial`.

    When facial, ``functional`` is an integer vector ``c`` (one entry per row)
    with ``c.a_U = 0`` on ``F`` and ``c.a_U >= 1`` elsewhere.  Otherwise
    ``outside`` holds nonnegative weights on columns outside ``F`` and
    ``inside`` weights on columns of ``F`` such that
    ``sum(outside[U] a_U) + sum(inside[U] a_U) = 0`` with ``outside`` nonzero,
    so no supporting functional can exist.
    """

    facial: bool
    functional: tuple[int, ...] | None = None
    outside: dict[Mask, Fraction] | None = None
    inside: dict[Mask, Fraction] | None = None
    method: str = ""

    def __bool__(self) -> bool:
        return self.facial


def check_functional(M: ParamMatrix, F: Iterable[Mask], c: Sequence) -> bool:
    F = set(F)
    for U in M.cols:
        v = sum((Fraction(x) * a for x, a in zip(c, M.column(U))), Fraction(0))
        if (U in F and v != 0) or (U not in F and v < 1):
            return False
    return True


def is_facial(M: ParamMatrix, F: Iterable[Mask], method: str = "auto") -> Faciality:
    """Decide whether ``F`` is cut out by a face of the cone over the columns.

    ``method="auto"`` first tries the indicator of the untouched rows (valid
    whenever ``F`` is feasible) and falls back to the exact LP;
    ``method="lp"`` always solves the LP.
    """
    F = masks.sorted_masks(F)
    for U in F:
        M.col_index(U)
    if method not in ("auto", "lp"):
        raise InputError(f"unknown method {method!r}")
    if method == "auto":
        union = 0
        for U in F:
            union |= M.support_bits(U)
        c = [0 if union >> r & 1 else 1 for r in range(len(M.rows))]
        if check_functional(M, F, c):
            return Faciality(True, functional=tuple(c), method="rows")
    return _facial_lp(M, F)


def _facial_lp(M: ParamMatrix, F: list[Mask]) -> Faciality:
    # Parametrize functionals modulo the left kernel: c lives on a row basis I,
    # then the equalities on F are solved exactly, leaving G z >= 1 for FM.
    inside = set(F)
    outside = [U for U in M.cols if U not in inside]
    I = linalg.independent_rows(M.entries)
    R = [M.entries[i] for i in I]
    r = len(I)
    eq = [[R[i][M.col_index(U)] for i in range(r)] for U in F]
    # scaling basis vectors by positive factors keeps the system equivalent and integral
    N = [linalg.primitive(n) for n in linalg.nullspace(eq, r)] if eq else [
        [int(a == b) for a in range(r)] for b in range(r)
    ]
    G_rows = []
    for U in outside:
        c = M.col_index(U)
        nz = [i for i in range(r) if R[i][c]]
        G_rows.append([sum(n[i] * R[i][c] for i in nz) for n in N])
    res = solve_inequalities(G_rows, [1] * len(G_rows), n=len(N))
    if res.feasible:
        y = [sum((z * n[i] for z, n in zip(res.solution, N)), Fraction(0)) for i in range(r)]
        c = [Fraction(0)] * len(M.rows)
        for i, row in enumerate(I):
            c[row] = y[i]
        c = linalg.primitive(c) if any(c) else [0] * len(M.rows)
        if not check_functional(M, F, c):
            raise ArithmeticError("LP functional failed verification")
        return Faciality(True, functional=tuple(c), method="lp")
    lam = {outside[k]: w for k, w in res.farkas.items()}
    target = [-sum((w * M.column(U)[i] for U, w in lam.items()), Fraction(0)) for i in range(len(M.rows))]
    if F:
        A_F = [[M.column(U)[i] for U in F] for i in range(len(M.rows))]
        mu = linalg.solve(A_F, target)
    else:
        mu = [] if all(t == 0 for t in target) else None
    if mu is None:
        raise ArithmeticError("Farkas combination is not in the span of the face columns")
    inside_w = {U: w for U, w in zip(F, mu) if w != 0}
    return Faciality(False, outside=lam, inside=inside_w, method="lp")


def check_infeasibility(M: ParamMatrix, F: Iterable[Mask], fac: Faciality) -> bool:
    """Verify the certificate of a negative :func:`is_facial` answer."""
    F = set(F)
    if not fac.outside or any(w < 0 or U in F for U, w in fac.outside.items()):
        return False
    if any(U not in F for U in (fac.inside or {})):
        return False
    total = [Fraction(0)] * len(M.rows)
    for U, w in list(fac.outside.items()) + list((fac.inside or {}).items()):
        for i, a in enumerate(M.column(U)):
            total[i] += w * a
    return all(t == 0 for t in total)


# -- points with prescribed support ------------------------------------------------


def random_rational(rng: np.random.Generator, bound: int = 100) -> Fraction:
    return Fraction(int(rng.integers(1, bound + 1)), int(rng.integers(1, bound + 1)))


def realize_support(M: ParamMatrix, F: Iterable[Mask], seed=0) -> Distribution:
    """A point of the parametrization whose support is exactly ``F``."""
    F = masks.sorted_masks(F)
    feas = is_feasible(M, F)
    if not feas:
        raise NotFeasible(
            f"support is not feasible: column {masks.fmt_mask(feas.violating)} is covered"
        )
    rng = np.random.default_rng(seed)
    zero = set(feas.H)
    theta = [Fraction(0) if lab in zero else random_rational(rng) for lab in M.rows]
    p = apply_param(M, theta)
    if p.support() != F:
        raise ArithmeticError("realized support differs from the requested one")
    return p


def facial_limit_witness(
    M: ParamMatrix, F: Iterable[Mask], c: Sequence, theta: Sequence, eps
) -> Distribution:
    """The deformed point ``p_U(eps) = eps ** (c.a_U) * prod_i theta_i ** a_iU``.

    Coordinates in ``F`` do not depend on ``eps``; the others tend to zero.
    """
    F = set(F)
    eps = Fraction(eps)
    if eps <= 0:
        raise InputError("eps must be positive")
    if any(Fraction(t) <= 0 for t in theta):
        raise InputError("theta must be strictly positive")
    if len(c) != len(M.rows):
        raise InputError(f"functional needs {len(M.rows)} coefficients")
    base = apply_param(M, theta)
    exps = {}
    for U in M.cols:
        e = sum((Fraction(x) * a for x, a in zip(c, M.column(U))), Fraction(0))
        if (U in F and e != 0) or (U not in F and e <= 0):
            raise BadCertificate(f"c.a = {e} at column {masks.fmt_mask(U)}")
        if e.denominator != 1:
            raise NonIntegerExponent(f"c.a = {e} at column {masks.fmt_mask(U)}")
        exps[U] = int(e)
    return Distribution(M.m, {U: eps ** exps[U] * base[U] for U in M.cols})


# -- toric ideal membership and row spaces -------------------------------------


def in_toric_kernel(M: ParamMatrix, b: Binomial) -> bool:
    """``p^u - p^v`` lies in the toric ideal iff ``M u = M v``."""
    diff = [0] * len(M.rows)
    for S in b.plus:
        for i, a in enumerate(M.column(S)):
            diff[i] += a
    for S in b.minus:
        for i, a in enumerate(M.column(S)):
            diff[i] -= a
    return not any(diff)


def rank(M: ParamMatrix) -> int:
    return linalg.bareiss_rank(M.entries)


def same_row_space(M1: ParamMatrix, M2: ParamMatrix) -> bool:
    """Equal rational row spaces, hence equal kernels and toric ideals."""
    if set(M1.cols) != set(M2.cols):
        raise ColumnMismatch("matrices have different column labels")
    order = [M2.col_index(U) for U in M1.cols]
    rows2 = [tuple(row[c] for c in order) for row in M2.entries]
    r1 = linalg.bareiss_rank(M1.entries)
    r2 = linalg.bareiss_rank(rows2)
    return r1 == r2 == linalg.bareiss_rank(list(M1.entries) + rows2)
