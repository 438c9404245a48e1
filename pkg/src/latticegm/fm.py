"""Exact Fourier-Motzkin elimination for systems ``G z >= h`` over Q.

Returns either a solution or a Farkas certificate: multipliers ``lam >= 0``
with ``lam^T G = 0`` and ``lam^T h > 0``.  Redundant combinations are pruned
with Chernikov's rule (a row built from more than ``s + 1`` originals after
``s`` eliminations is implied by the others) and by dropping parallel rows
dominated by one with a smaller history.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Sequence


@dataclass
class _Row:
    coef: list[Fraction]
    rhs: Fraction
    hist: dict[int, Fraction]  # original row index -> multiplier


@dataclass(frozen=True)
class FMResult:
    feasible: bool
    solution: list[Fraction] | None = None
    farkas: dict[int, Fraction] | None = None


class FMError(RuntimeError):
    """Internal consistency failure; the result did not verify."""


def _normalize(row: _Row) -> _Row:
    lead = next((abs(c) for c in row.coef if c != 0), None)
    if lead is None or lead == 1:
        return row
    inv = 1 / lead
    return _Row([c * inv for c in row.coef], row.rhs * inv, {k: w * inv for k, w in row.hist.items()})


def _dedupe(rows: list[_Row]) -> list[_Row]:
    # A parallel row may be dropped only if another has a bound at least as
    # strong and a history contained in its own; dropping on the bound alone
    # would break Chernikov's redundancy argument.
    groups: dict[tuple, list[_Row]] = {}
    for r in rows:
        groups.setdefault(tuple(r.coef), []).append(r)
    out = []
    for group in groups.values():
        group.sort(key=lambda r: (len(r.hist), -r.rhs))
        kept: list[_Row] = []
        for r in group:
            keys = r.hist.keys()
            if not any(k.rhs >= r.rhs and k.hist.keys() <= keys for k in kept):
                kept.append(r)
        out.extend(kept)
    return out


def solve_inequalities(G: Sequence[Sequence], h: Sequence, n: int | None = None) -> FMResult:
    """Decide ``G z >= h`` in ``n`` unknowns (default: the row length)."""
    if n is None:
        n = len(G[0]) if G else 0
    rows = [
        _normalize(_Row([Fraction(x) for x in g], Fraction(b), {t: Fraction(1)}))
        for t, (g, b) in enumerate(zip(G, h))
    ]
    rows = _dedupe(rows)
    live = list(range(n))
    stages: list[tuple[int, list[_Row]]] = []
    eliminated = 0

    while True:
        for r in rows:
            if all(c == 0 for c in r.coef) and r.rhs > 0:
                return _finish_infeasible(G, h, r.hist)
        rows = [r for r in rows if any(c != 0 for c in r.coef)]
        if not live:
            break

        def cost(v):
            pos = sum(1 for r in rows if r.coef[v] > 0)
            neg = sum(1 for r in rows if r.coef[v] < 0)
            return pos * neg - pos - neg

        v = min(live, key=cost)
        live.remove(v)
        pos = [r for r in rows if r.coef[v] > 0]
        neg = [r for r in rows if r.coef[v] < 0]
        stages.append((v, pos + neg))
        eliminated += 1
        new = [r for r in rows if r.coef[v] == 0]
        for p in pos:
            for q in neg:
                hist_keys = p.hist.keys() | q.hist.keys()
                if len(hist_keys) > eliminated + 1:
                    continue
                a, b = -q.coef[v], p.coef[v]
                coef = [a * x + b * y for x, y in zip(p.coef, q.coef)]
                coef[v] = Fraction(0)
                hist = {k: a * p.hist.get(k, 0) + b * q.hist.get(k, 0) for k in hist_keys}
                new.append(_normalize(_Row(coef, a * p.rhs + b * q.rhs, hist)))
        rows = _dedupe(new)

    z = [Fraction(0)] * n
    for v, stage_rows in reversed(stages):
        lo, hi = None, None
        for r in stage_rows:
            rest = sum((c * z[k] for k, c in enumerate(r.coef) if k != v), Fraction(0))
            bound = (r.rhs - rest) / r.coef[v]
            if r.coef[v] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        z[v] = _pick(lo, hi)
    for g, b in zip(G, h):
        if sum((Fraction(x) * y for x, y in zip(g, z)), Fraction(0)) < Fraction(b):
            raise FMError("back-substituted point violates the system")
    return FMResult(True, solution=z)


def _pick(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(min(0, floor(hi)))
    if hi is None:
        return Fraction(max(0, ceil(lo)))
    if lo > hi:
        raise FMError("empty interval during back-substitution")
    for cand in (Fraction(0), Fraction(ceil(lo))):
        if lo <= cand <= hi:
            return cand
    return lo


def _finish_infeasible(G, h, hist: dict[int, Fraction]) -> FMResult:
    lam = {k: w for k, w in hist.items() if w != 0}
    n = len(G[0]) if G else 0
    for j in range(n):
        if sum((w * Fraction(G[k][j]) for k, w in lam.items()), Fraction(0)) != 0:
            raise FMError("Farkas multipliers do not cancel the variables")
    if any(w < 0 for w in lam.values()) or sum((w * Fraction(h[k]) for k, w in lam.items()), Fraction(0)) <= 0:
        raise FMError("Farkas multipliers are not a valid certificate")
    den = math.lcm(*(w.denominator for w in lam.values())) if lam else 1
    return FMResult(False, farkas={k: w * den for k, w in sorted(lam.items())})
