"""Command-line interface.

Exit codes: 0 for success or a true verdict, 1 for a false verdict (the
certificate is still printed), 2 for unusable input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from . import io
from .ci import (
    ci_binomials,
    global_binomials,
    pairwise_binomials,
    pairwise_statements,
    satisfies_all,
    saturated_global_statements,
)
from .combinat import (
    cliques,
    comparability_graph,
    is_natural,
    lattice_close,
    masks,
    minimal_graph,
    order_ideals,
)
from .combinat.masks import fmt_mask, mask_label
from .errors import InputError, LatticeGMError, MissingCoverEdge, NotFeasible, PairwiseViolation
from .factorization import factorize, verify_certificate
from .hibi import check_hibi_equality, hibi_generators, hibi_matrix
from .oracle import sweep, verify_unnatural_counterexample
from .toric import (
    check_infeasibility,
    fmt_row,
    is_facial,
    is_feasible,
    matrix_AG,
    matrix_BG,
    realize_support,
)


class Output:
    """Collects a text rendering and a JSON payload; prints one of them."""

    def __init__(self, as_json: bool, kind: str):
        self.as_json = as_json
        self.kind = kind
        self.lines: list[str] = []
        self.data: dict = {}

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def emit(self) -> None:
        if self.as_json:
            print(io.dumps(self.data, self.kind))
        else:
            print("\n".join(self.lines))


def _sets(seq) -> list[str]:
    return [mask_label(S) for S in seq]


# -- lattice ---------------------------------------------------------------------


def cmd_lattice_from_poset(args, out: Output) -> int:
    L = order_ideals(io.poset_from_dict(io.load_json(args.poset)))
    out.data = io.lattice_to_dict(L)
    out.lines = [fmt_mask(S) for S in L.elements]
    return 0


def cmd_lattice_check_natural(args, out: Output) -> int:
    L = io.lattice_from_dict(io.load_json(args.lattice))
    natural = is_natural(L)
    out.data = {"natural": natural, "size": len(L)}
    out.line(f"natural: {'yes' if natural else 'no'}")
    if not natural:
        bad = [
            (S, T) for S, T in L.cover_pairs() if masks.popcount(S) - masks.popcount(T) != 1
        ]
        for key, val in (("contains_empty", 0 in L), ("contains_full", masks.full_mask(L.m) in L)):
            out.data[key] = val
            if not val:
                out.line(f"missing {'empty set' if key == 'contains_empty' else 'full set'}")
        out.data["long_covers"] = [[mask_label(S), mask_label(T)] for S, T in bad]
        for S, T in bad:
            out.line(f"cover {fmt_mask(S)} > {fmt_mask(T)} adds {masks.popcount(S ^ T)} elements")
    return 0 if natural else 1


def cmd_lattice_minimal_graph(args, out: Output) -> int:
    G = minimal_graph(io.lattice_from_dict(io.load_json(args.lattice)))
    out.data = io.graph_to_dict(G)
    out.lines = [f"{i + 1} - {j + 1}" for i, j in G.sorted_edges()] or ["(no edges)"]
    return 0


def cmd_lattice_closure(args, out: Output) -> int:
    m, sets = io.family_from_dict(io.load_json(args.family))
    if not sets:
        raise InputError("lattice: field 'sets' must be nonempty")
    L = lattice_close(sets, m)
    out.data = io.lattice_to_dict(L)
    out.lines = [fmt_mask(S) for S in L.elements]
    return 0


# -- graph -------------------------------------------------------------------------


def cmd_graph_cliques(args, out: Output) -> int:
    every, maximal = cliques(io.graph_from_dict(io.load_json(args.graph)))
    out.data = {"all": _sets(every), "maximal": _sets(maximal)}
    out.line("all: " + " ".join(fmt_mask(S) for S in every))
    out.line("maximal: " + " ".join(fmt_mask(S) for S in maximal))
    return 0


def cmd_graph_comparability(args, out: Output) -> int:
    G = comparability_graph(io.poset_from_dict(io.load_json(args.poset)))
    out.data = io.graph_to_dict(G)
    out.lines = [f"{i + 1} - {j + 1}" for i, j in G.sorted_edges()] or ["(no edges)"]
    return 0


# -- ci ----------------------------------------------------------------------------


def _emit_statements(stmts, m: int, out: Output) -> int:
    out.data = {
        "statements": [
            {**io.statement_to_dict(s), "binomials": [io.binomial_to_dict(b) for b in ci_binomials(s, m)]}
            for s in stmts
        ]
    }
    for s in stmts:
        out.line(str(s))
        for b in ci_binomials(s, m):
            out.line(f"  {b}")
    if not stmts:
        out.line("(no statements)")
    return 0


def cmd_ci_pairwise(args, out: Output) -> int:
    G = io.graph_from_dict(io.load_json(args.graph))
    return _emit_statements(pairwise_statements(G), G.m, out)


def cmd_ci_global(args, out: Output) -> int:
    G = io.graph_from_dict(io.load_json(args.graph))
    return _emit_statements(saturated_global_statements(G), G.m, out)


def cmd_ci_check(args, out: Output) -> int:
    p = io.distribution_from_dict(io.load_json(args.dist))
    G = io.graph_from_dict(io.load_json(args.graph))
    if p.m != G.m:
        raise InputError("distribution and graph have different m")
    bs = global_binomials(G) if args.use_global else pairwise_binomials(G)
    report = satisfies_all(bs, p)
    out.data = {
        "holds": report.ok,
        "checked": len(bs),
        "violations": [
            {**io.binomial_to_dict(f.data["binomial"]), "value": io.fmt_rational(f.data["value"])}
            for f in report
        ],
    }
    out.line(f"checked {len(bs)} binomials: {'all vanish' if report.ok else f'{len(report)} nonzero'}")
    for f in report:
        out.line(f"  {f.message}")
    return 0 if report.ok else 1


# -- param -------------------------------------------------------------------------


def _matrix(args):
    doc = io.load_json(args.model)
    if args.matrix == "hibi":
        return hibi_matrix(io.lattice_from_dict(doc))
    G = io.graph_from_dict(doc)
    return matrix_AG(G) if args.matrix == "AG" else matrix_BG(G)


def _support(args, M) -> list:
    m, sets = io.family_from_dict(io.load_json(args.support))
    if m != M.m:
        raise InputError("support and model have different m")
    for S in sets:
        if S not in set(M.cols):
            raise InputError(f"support set {fmt_mask(S)} is not a column of the matrix")
    return sets


def cmd_param_matrix(args, out: Output) -> int:
    M = _matrix(args)
    out.data = {
        "rows": [fmt_row(r) for r in M.rows],
        "cols": _sets(M.cols),
        "entries": [list(r) for r in M.entries],
    }
    out.line(M.to_text())
    return 0


def cmd_param_feasible(args, out: Output) -> int:
    M = _matrix(args)
    res = is_feasible(M, _support(args, M))
    out.data = {"feasible": res.feasible}
    if res.feasible:
        out.data["H"] = [fmt_row(h) for h in res.H]
        out.line("feasible: yes")
        out.line("H = {" + ", ".join(fmt_row(h) for h in res.H) + "}")
    else:
        out.data["violating_column"] = mask_label(res.violating)
        out.line("feasible: no")
        out.line(f"column {fmt_mask(res.violating)} has its support inside the union of the support columns")
    return 0 if res.feasible else 1


def cmd_param_facial(args, out: Output) -> int:
    M = _matrix(args)
    F = _support(args, M)
    res = is_facial(M, F, method=args.method)
    out.data = {"facial": res.facial, "method": res.method}
    if res.facial:
        out.data["functional"] = {fmt_row(r): c for r, c in zip(M.rows, res.functional)}
        out.line("facial: yes")
        out.line("functional c: " + ", ".join(f"{fmt_row(r)}={c}" for r, c in zip(M.rows, res.functional) if c))
    else:
        if not check_infeasibility(M, F, res):
            raise ArithmeticError("non-facial certificate failed verification")
        out.data["outside"] = {mask_label(U): io.fmt_rational(w) for U, w in res.outside.items()}
        out.data["inside"] = {mask_label(U): io.fmt_rational(w) for U, w in res.inside.items()}
        out.line("facial: no")
        out.line(
            "certificate: "
            + " + ".join(f"{w}*a{fmt_mask(U)}" for U, w in list(res.outside.items()) + list(res.inside.items()))
            + " = 0"
        )
    return 0 if res.facial else 1


def cmd_param_realize(args, out: Output) -> int:
    M = _matrix(args)
    try:
        p = realize_support(M, _support(args, M), seed=args.seed)
    except NotFeasible as exc:
        out.data = {"realized": False, "reason": str(exc)}
        out.line(f"cannot realize: {exc}")
        return 1
    out.data = io.distribution_to_dict(p)
    out.lines = [f"p{fmt_mask(S)} = {p[S]}" for S in p.support()]
    return 0


# -- factorize / verify ----------------------------------------------------------------


def cmd_factorize(args, out: Output) -> int:
    p = io.distribution_from_dict(io.load_json(args.dist))
    G = io.graph_from_dict(io.load_json(args.graph))
    if p.m != G.m:
        raise InputError("distribution and graph have different m")
    try:
        cert = factorize(p, G)
    except PairwiseViolation as exc:
        out.data = {
            "factors": False,
            "violation": {
                "set": mask_label(exc.S), "i": exc.i + 1, "j": exc.j + 1,
                "lhs": io.fmt_rational(exc.lhs), "rhs": io.fmt_rational(exc.rhs),
            },
        }
        out.line(f"does not factor: {exc}")
        return 1
    except MissingCoverEdge as exc:
        out.data = {"factors": False, "missing_cover_edge": [exc.upper + 1, exc.lower + 1]}
        out.line(f"does not factor: {exc}")
        return 1
    out.data = {"factors": True, "certificate": io.certificate_to_dict(cert)}
    out.line(f"factors: yes ({len(cert.clique_params)} clique parameters)")
    for S, c in cert.clique_params.items():
        out.line(f"  c{fmt_mask(S)} = {c}")
    out.line(f"dependent coordinates ({len(cert.dependent_trace)}):")
    for S, i, j in cert.dependent_trace:
        out.line(f"  p{fmt_mask(S)} via {i + 1} _||_ {j + 1}")
    return 0


def cmd_verify(args, out: Output) -> int:
    doc = io.load_json(args.cert)
    if isinstance(doc, dict) and "certificate" in doc:
        doc = doc["certificate"]
    cert = io.certificate_from_dict(doc)
    p = io.distribution_from_dict(io.load_json(args.dist))
    G = io.graph_from_dict(io.load_json(args.graph))
    ok = verify_certificate(cert, p, G)
    out.data = {"valid": ok}
    out.line(f"certificate valid: {'yes' if ok else 'no'}")
    return 0 if ok else 1


# -- hibi ----------------------------------------------------------------------------


def cmd_hibi_gens(args, out: Output) -> int:
    gens = hibi_generators(io.lattice_from_dict(io.load_json(args.lattice)))
    out.data = {"generators": [io.binomial_to_dict(b) for b in gens]}
    out.lines = [str(b) for b in gens] or ["(no generators)"]
    return 0


def cmd_hibi_check_equality(args, out: Output) -> int:
    L = io.lattice_from_dict(io.load_json(args.lattice))
    G = io.graph_from_dict(io.load_json(args.graph))
    eq = check_hibi_equality(L, G)
    out.data = {"equal": eq}
    out.line(f"lattice model ideal equals Hibi ideal: {'yes' if eq else 'no'}")
    return 0 if eq else 1


# -- oracle --------------------------------------------------------------------------


def cmd_oracle_sweep(args, out: Output) -> int:
    report = sweep(args.trials, seed=args.seed, m_range=(args.min_m, args.max_m), workers=args.workers)
    out.data = report.to_dict()
    out.line(report.to_text())
    return 0 if report.ok else 1


def cmd_oracle_counterexample(args, out: Output) -> int:
    report = verify_unnatural_counterexample(
        io.parse_rational(args.p_empty), io.parse_rational(args.p_rest)
    )
    out.data = report.to_dict()
    out.line(report.to_text())
    return 0 if report.ok else 1


# -- parser --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latticegm", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def add(sub, name: str, fn: Callable, *positional: str, help: str = ""):
        p = sub.add_parser(name, help=help)
        for arg in positional:
            p.add_argument(arg)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
        p.set_defaults(fn=fn, kind=name)
        return p

    lat = top.add_parser("lattice", help="distributive lattices of sets").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    add(lat, "from-poset", cmd_lattice_from_poset, "poset", help="order ideals of a poset")
    add(lat, "check-natural", cmd_lattice_check_natural, "lattice", help="is the lattice natural?")
    add(lat, "minimal-graph", cmd_lattice_minimal_graph, "lattice", help="Hasse diagram of the underlying poset")
    add(lat, "closure", cmd_lattice_closure, "family", help="union/intersection closure")

    gr = top.add_parser("graph", help="graph utilities").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    add(gr, "cliques", cmd_graph_cliques, "graph")
    add(gr, "comparability", cmd_graph_comparability, "poset")

    ci = top.add_parser("ci", help="conditional independence binomials").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    add(ci, "pairwise", cmd_ci_pairwise, "graph")
    add(ci, "global", cmd_ci_global, "graph")
    chk = add(ci, "check", cmd_ci_check, "dist", "graph", help="do the Markov binomials vanish at p?")
    chk.add_argument("--global", dest="use_global", action="store_true", help="use all saturated global statements")

    par = top.add_parser("param", help="parametrization matrices and supports").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, fn, needs_support in (
        ("matrix", cmd_param_matrix, False),
        ("feasible", cmd_param_feasible, True),
        ("facial", cmd_param_facial, True),
        ("realize", cmd_param_realize, True),
    ):
        p = add(par, name, fn, "model")
        p.add_argument("--matrix", choices=("AG", "BG", "hibi"), default="AG")
        if needs_support:
            p.add_argument("--support", required=True)
        if name == "facial":
            p.add_argument("--method", choices=("auto", "lp"), default="auto")
        if name == "realize":
            p.add_argument("--seed", type=int, default=0)

    add(top, "factorize", cmd_factorize, "dist", "graph", help="construct a clique factorization")
    add(top, "verify", cmd_verify, "cert", "dist", "graph", help="check a factorization certificate")

    hb = top.add_parser("hibi", help="Hibi ideals of natural lattices").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    add(hb, "gens", cmd_hibi_gens, "lattice")
    add(hb, "check-equality", cmd_hibi_check_equality, "lattice", "graph")

    orc = top.add_parser("oracle", help="randomized verification").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sw = add(orc, "sweep", cmd_oracle_sweep)
    sw.add_argument("--trials", type=int, default=200)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--min-m", type=int, default=2)
    sw.add_argument("--max-m", type=int, default=6)
    sw.add_argument("--workers", type=int, default=1)
    ce = add(orc, "counterexample", cmd_oracle_counterexample)
    ce.add_argument("--p-empty", default="1/2")
    ce.add_argument("--p-rest", default="1/14")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args.json, args.kind)
    try:
        code = args.fn(args, out)
    except (InputError, LatticeGMError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
