"""Seeded instance generators and end-to-end verifiers for the structural results.

Each verifier returns a :class:`~latticegm.report.Report`; an empty report
means every check held exactly.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .ci import (
    Binomial,
    Distribution,
    eval_binomial,
    global_binomials,
    pairwise_binomials,
    satisfies_all,
)
from .combinat import (
    DistributiveLattice,
    Graph,
    Poset,
    is_natural,
    lattice_close,
    masks,
    minimal_graph,
    order_ideals,
)
from .combinat.masks import Mask, from_digits
from .errors import LatticeGMError
from .factorization import (
    clique_closures,
    complete_from_closures,
    dimension_counts,
    factor_parameters,
    factorize,
    verify_certificate,
)
from .report import Report
from .toric import (
    apply_param,
    in_toric_kernel,
    is_facial,
    is_feasible,
    is_feasible_by_rows,
    matrix_AG,
    random_rational,
)


def make_rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_poset(m: int, seed) -> Poset:
    """Random order: each pair ``i < j`` of a random permutation is related with probability ``q``.

    ``q`` itself is drawn per seed so that chains, antichains and everything
    between occur.
    """
    if not 1 <= m <= masks.MAX_M:
        raise ValueError(f"m must be in [1, {masks.MAX_M}]")
    rng = make_rng(seed)
    perm = [int(x) for x in rng.permutation(m)]
    q = float(rng.uniform(0.0, 0.7))
    down = [1 << i for i in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            if rng.random() < q:
                lo, hi = perm[a], perm[b]
                down[hi] |= down[lo]
    # transitive closure in permutation order
    for b in range(m):
        hi = perm[b]
        acc = down[hi]
        for lo in masks.elements(down[hi]):
            acc |= down[lo]
        down[hi] = acc
    return Poset.from_down_sets(m, down)


def random_supergraph(G0: Graph, m: int, seed, density: float | None = None) -> Graph:
    """``G0`` plus a seeded random subset of the missing pairs."""
    rng = make_rng(seed)
    p_add = float(rng.uniform(0.0, 1.0)) if density is None else density
    extra = [e for e in combinations(range(m), 2) if e not in G0.edges and rng.random() < p_add]
    return G0.with_edges(extra)


def random_lattice_distribution(L: DistributiveLattice, rng) -> Distribution:
    return Distribution(L.m, {S: random_rational(rng) for S in L.elements})


def verify_hc_roundtrip(P: Poset, G: Graph, seed) -> Report:
    """Build ``p`` on ``J(P)`` from free values on clique closures and check every consequence."""
    report = Report("hc-roundtrip")
    rng = make_rng(seed)
    L = order_ideals(P)
    closures = clique_closures(L, G)
    free = {S: random_rational(rng) for S in closures.closures}

    def pick(pairs):
        return pairs[int(rng.integers(len(pairs)))]

    p = complete_from_closures(L, G, free, choose=pick)
    n_ind, n_dep = dimension_counts(L, G)
    if n_ind != len(free) or n_ind + n_dep != len(L):
        report.fail("dimension", f"counts ({n_ind},{n_dep}) vs {len(free)} free of {len(L)}")
    if p.support() != list(L.elements):
        report.fail("support", "constructed point does not have support J(P)")

    pw = pairwise_binomials(G)
    gl = global_binomials(G)
    for name, bs in (("pairwise", pw), ("global", gl)):
        for f in satisfies_all(bs, p):
            report.fail(name, f.message)

    try:
        cert = factorize(p, G)
    except LatticeGMError as exc:
        report.fail("factorize", str(exc))
        return report
    if not verify_certificate(cert, p, G):
        report.fail("certificate", "clique parameters do not reproduce p")
    a = factor_parameters(cert, G)
    AG = matrix_AG(G)
    q = apply_param(AG, [a[lab] for lab in AG.rows])
    if q != p:
        report.fail("standard-factorization", "clique potentials with zeros do not reproduce p")
    for b in pw + gl:
        if in_toric_kernel(AG, b) and eval_binomial(b, p) != 0:
            report.fail("toric", f"toric generator {b} does not vanish")
    return report


def cover_forcing_sets(P: Poset, i: int, j: int) -> tuple[Mask, Mask, Mask, Mask]:
    """``(C, C+j, C+ij, C+i)`` with ``C = {l <= i} - {i, j}`` for a cover ``i > j``."""
    C = P.down[i] & ~(1 << i | 1 << j)
    return C, C | 1 << j, C | 1 << i | 1 << j, C | 1 << i


def verify_cover_forcing(P: Poset, seed) -> Report:
    """For each cover ``i > j`` the quadric of ``i _||_ j | rest`` cannot vanish on ``J(P)``."""
    report = Report("cover-forcing")
    rng = make_rng(seed)
    L = order_ideals(P)
    p = random_lattice_distribution(L, rng)
    for i, j in P.sorted_covers():
        C, Cj, Cij, Ci = cover_forcing_sets(P, i, j)
        tag = f"{i + 1}>{j + 1}"
        for S in (C, Cj, Cij):
            if S not in L:
                report.fail(tag, f"{masks.fmt_mask(S)} should be an order ideal")
        if Ci in L:
            report.fail(tag, f"{masks.fmt_mask(Ci)} should not be an order ideal")
        b = Binomial((C, Cij), (Ci, Cj))
        if eval_binomial(b, p) == 0:
            report.fail(tag, f"{b} vanishes on a lattice-supported point")
        G = Graph.from_edges(
            P.m, [e for e in combinations(range(P.m), 2) if e != (min(i, j), max(i, j))]
        )
        if satisfies_all(pairwise_binomials(G), p).ok:
            report.fail(tag, "pairwise statements of the graph without the cover edge all hold")
    return report


UNNATURAL_LATTICE = ("", "12", "3", "4", "34", "123", "124", "1234")
FIRST_QUARTIC = Binomial(
    tuple(from_digits(s) for s in ("", "34", "124", "123")),
    tuple(from_digits(s) for s in ("4", "3", "12", "1234")),
)


def unnatural_witness(p_empty=Fraction(1, 2), p_rest=Fraction(1, 14)) -> Distribution:
    vals = {from_digits(s): Fraction(p_rest) for s in UNNATURAL_LATTICE}
    vals[0] = Fraction(p_empty)
    return Distribution(4, vals)


def verify_unnatural_counterexample(p_empty=Fraction(1, 2), p_rest=Fraction(1, 14)) -> Report:
    """A point on an unnatural lattice satisfying all Markov quadrics of the 4-cycle but not the toric ideal."""
    report = Report("unnatural-counterexample")
    G = Graph.cycle(4)
    sets = [from_digits(s) for s in UNNATURAL_LATTICE]
    L = lattice_close(sets, 4)
    if sorted(L.elements) != sorted(sets):
        report.fail("closed", "support is not union/intersection closed")
    if is_natural(L):
        report.fail("unnatural", "support lattice is unexpectedly natural")
    p = unnatural_witness(p_empty, p_rest)
    for f in satisfies_all(pairwise_binomials(G), p):
        report.fail("quadrics", f.message)
    for f in satisfies_all(global_binomials(G), p):
        report.fail("global", f.message)
    value = eval_binomial(FIRST_QUARTIC, p)
    report.note(f"first quartic evaluates to {value}")
    if value == 0:
        report.fail("quartic", "the first quartic vanishes; the witness no longer separates")
    if not in_toric_kernel(matrix_AG(G), FIRST_QUARTIC):
        report.fail("toric", "the first quartic is not in the toric ideal")
    return report


@dataclass(frozen=True)
class SweepTrial:
    seed: int
    m: int
    poset: Poset
    graph: Graph
    report: Report
    facial_ok: bool
    feasible_agree: bool


def run_trial(seed: int, m_range=(2, 6)) -> SweepTrial:
    ss = np.random.SeedSequence(seed)
    s_m, s_poset, s_graph, s_hc, s_cover, s_feas = ss.spawn(6)
    m = int(make_rng(s_m).integers(m_range[0], m_range[1] + 1))
    P = random_poset(m, s_poset)
    L = order_ideals(P)
    G = random_supergraph(minimal_graph(L), m, s_graph)
    report = Report(f"trial {seed} (m={m})")
    report.extend(verify_hc_roundtrip(P, G, s_hc), "hc/")
    report.extend(verify_cover_forcing(P, s_cover), "cover/")

    AG = matrix_AG(G)
    feas = is_feasible(AG, L.elements)
    # the LP is used here so the check does not reduce to the feasibility witness
    facial_ok = bool(feas) and bool(is_facial(AG, L.elements, method="lp"))
    if not facial_ok:
        report.fail("facial", "lattice support is not feasible-and-facial for A_G")
    rng = make_rng(s_feas)
    agree = True
    for _ in range(4):
        F = [U for U in AG.cols if rng.random() < 0.5]
        if bool(is_feasible(AG, F)) != is_feasible_by_rows(AG, F):
            agree = False
            report.fail("feasible-agree", f"characterizations disagree on {[masks.fmt_mask(U) for U in F]}")
        elif is_feasible(AG, F) and not is_facial(AG, F, method="lp"):
            facial_ok = False
            report.fail("facial", "random feasible set not facial")
    return SweepTrial(seed, m, P, G, report, facial_ok, agree)


def sweep(n_trials: int = 200, seed: int = 0, m_range=(2, 6), workers: int = 1) -> Report:
    """Run seeded trials; findings are merged in seed order so output is deterministic."""
    seeds = [seed * 100_003 + k for k in range(n_trials)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            trials = list(pool.map(lambda s: run_trial(s, m_range), seeds))
    else:
        trials = [run_trial(s, m_range) for s in seeds]
    report = Report(f"sweep of {n_trials} trials")
    for t in trials:
        report.extend(t.report, f"seed {t.seed}: ")
    counts = {m: sum(1 for t in trials if t.m == m) for m in range(m_range[0], m_range[1] + 1)}
    report.note("trials per m: " + ", ".join(f"{m}:{c}" for m, c in counts.items()))
    return report
