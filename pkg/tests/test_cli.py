import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given

from strategies import graphs, posets
from latticegm import io
from latticegm.cli import main
from latticegm.combinat import order_ideals
from latticegm.combinat.masks import from_digits as D
from latticegm.factorization import factorize

FENCE = {"m": 4, "covers": [[2, 1], [2, 3], [4, 3]]}
CYCLE = {"m": 4, "edges": [[1, 2], [2, 3], [3, 4], [1, 4]]}
PATH = {"m": 4, "edges": [[1, 2], [2, 3], [3, 4]]}
S_SUPPORT = {"m": 4, "sets": ["", "1", "3", "1,3", "3,4", "1,2,3", "1,3,4", "1,2,3,4"]}
T_SUPPORT = {"m": 4, "sets": ["", "4", "3", "2,3", "1,4", "1,2,4", "1,2,3", "1,2,3,4"]}
UNNATURAL = {"m": 4, "sets": ["", "1,2", "3", "4", "3,4", "1,2,3", "1,2,4", "1,2,3,4"]}
MASTER = {
    "m": 4,
    "probs": {
        "": "1/4", "1": "1/8", "3": "1/8", "3,4": "1/16", "1,2,3": "1/16",
        "1,3,4": "1/16", "1,3": "1/16", "1,2,3,4": "1/16",
    },
}


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--json", *argv)
    return code, json.loads(out)


# -- lattice / graph -------------------------------------------------------------------


def test_from_poset(capsys, files):
    code, out, _ = run(capsys, "lattice", "from-poset", files("fence", FENCE))
    assert code == 0
    assert out.splitlines() == ["{}", "{1}", "{3}", "{1,3}", "{3,4}", "{1,2,3}", "{1,3,4}", "{1,2,3,4}"]
    code, doc = run_json(capsys, "lattice", "from-poset", files("fence", FENCE))
    assert doc["schema"] == io.SCHEMA and doc["kind"] == "from-poset"
    assert sorted(doc["sets"]) == sorted(S_SUPPORT["sets"])


def test_json_flag_after_subcommand(capsys, files):
    code, out, _ = run(capsys, "lattice", "from-poset", files("fence", FENCE), "--json")
    assert code == 0 and json.loads(out)["m"] == 4


def test_check_natural(capsys, files):
    assert run(capsys, "lattice", "check-natural", files("s", S_SUPPORT))[0] == 0
    code, out, _ = run(capsys, "lattice", "check-natural", files("u", UNNATURAL))
    assert code == 1 and "natural: no" in out and "{1,2} > {}" in out
    code, doc = run_json(capsys, "lattice", "check-natural", files("u", UNNATURAL))
    assert doc["natural"] is False and ["1,2", ""] in doc["long_covers"]


def test_minimal_graph_and_closure(capsys, files):
    code, out, _ = run(capsys, "lattice", "minimal-graph", files("s", S_SUPPORT))
    assert code == 0 and out.splitlines() == ["1 - 2", "2 - 3", "3 - 4"]
    code, doc = run_json(capsys, "lattice", "closure", files("f", {"m": 2, "sets": ["1", "2"]}))
    assert doc["sets"] == ["", "1", "2", "1,2"]


def test_graph_commands(capsys, files):
    code, doc = run_json(capsys, "graph", "cliques", files("c", CYCLE))
    assert code == 0 and sorted(doc["maximal"]) == ["1,2", "1,4", "2,3", "3,4"]
    assert len(doc["all"]) == 9
    code, doc = run_json(capsys, "graph", "comparability", files("fence", FENCE))
    assert doc["edges"] == [[1, 2], [2, 3], [3, 4]]


# -- ci ---------------------------------------------------------------------------------


def test_ci_commands(capsys, files):
    code, out, _ = run(capsys, "ci", "pairwise", files("c", CYCLE))
    assert code == 0 and "1 _||_ 3 | 24" in out and "2 _||_ 4 | 13" in out
    code, doc = run_json(capsys, "ci", "global", files("c", CYCLE))
    assert len(doc["statements"]) == 2
    assert sum(len(s["binomials"]) for s in doc["statements"]) == 8


def test_ci_check(capsys, files):
    code, out, _ = run(capsys, "ci", "check", files("d", MASTER), files("c", CYCLE))
    assert code == 0 and "all vanish" in out
    bad = {"m": 4, "probs": dict(MASTER["probs"], **{"1,2,3,4": "1/8"})}
    code, doc = run_json(capsys, "ci", "check", files("bad", bad), files("c", CYCLE), "--global")
    assert code == 1 and doc["violations"]


# -- param ------------------------------------------------------------------------------


def test_param_matrix(capsys, files):
    code, doc = run_json(capsys, "param", "matrix", files("c", CYCLE), "--matrix", "BG")
    assert code == 0 and len(doc["rows"]) == 9 and len(doc["cols"]) == 16
    code, doc = run_json(capsys, "param", "matrix", files("s", S_SUPPORT), "--matrix", "hibi")
    assert doc["rows"] == ["t", "b1", "b2", "b3", "b4"]


def test_param_feasible(capsys, files):
    code, out, _ = run(capsys, "param", "feasible", "--matrix", "AG", files("c", CYCLE), "--support", files("s", S_SUPPORT))
    assert code == 0
    assert "H = {(12,2), (23,2), (34,4)}" in out
    code, doc = run_json(capsys, "param", "feasible", files("c", CYCLE), "--support", files("t", T_SUPPORT))
    assert code == 1 and not doc["feasible"] and doc["violating_column"] not in T_SUPPORT["sets"]
    code, _ = run_json(capsys, "param", "feasible", "--matrix", "BG", files("c", CYCLE), "--support", files("s", S_SUPPORT))
    assert code == 1


def test_param_facial(capsys, files):
    code, doc = run_json(capsys, "param", "facial", files("c", CYCLE), "--support", files("t", T_SUPPORT))
    assert code == 0 and doc["facial"] and doc["method"] == "lp"
    code, doc = run_json(capsys, "param", "facial", files("c", CYCLE), "--support", files("s", S_SUPPORT), "--method", "lp")
    assert code == 0 and doc["facial"]
    nonfacial = {"m": 2, "sets": ["", "1,2"]}
    code, out, _ = run(capsys, "param", "facial", "--matrix", "BG", files("e", {"m": 2, "edges": []}), "--support", files("n", nonfacial))
    assert code == 1 and "certificate:" in out


def test_param_realize(capsys, files):
    args = ("param", "realize", files("c", CYCLE), "--support", files("s", S_SUPPORT), "--seed", "4")
    code, doc = run_json(capsys, *args)
    assert code == 0 and sorted(doc["probs"]) == sorted(S_SUPPORT["sets"])
    assert run_json(capsys, *args)[1] == doc
    code, doc = run_json(capsys, "param", "realize", files("c", CYCLE), "--support", files("t", T_SUPPORT))
    assert code == 1 and doc["realized"] is False


# -- factorize / verify ----------------------------------------------------------------------


def test_factorize_and_verify(capsys, files, tmp_path):
    code, out, _ = run(capsys, "factorize", files("d", MASTER), files("c", CYCLE))
    assert code == 0
    assert "9 clique parameters" in out and "dependent coordinates (2)" in out
    code, doc = run_json(capsys, "factorize", files("d", MASTER), files("c", CYCLE))
    cert = doc["certificate"]
    assert len(cert["clique_params"]) == 9 and len(cert["dependent_trace"]) == 2
    assert cert["dependent_trace"] == [{"set": "1,3", "i": 1, "j": 3}, {"set": "1,2,3,4", "i": 2, "j": 4}]
    cert_path = files("cert", doc)
    assert run(capsys, "verify", cert_path, files("d", MASTER), files("c", CYCLE))[0] == 0
    tampered = dict(cert, clique_params=dict(cert["clique_params"], **{"1": "7"}))
    assert run(capsys, "verify", files("bad", tampered), files("d", MASTER), files("c", CYCLE))[0] == 1


def test_factorize_violation(capsys, files):
    bad = {"m": 4, "probs": dict(MASTER["probs"], **{"1,2,3,4": "1/8"})}
    code, doc = run_json(capsys, "factorize", files("bad", bad), files("c", CYCLE))
    assert code == 1
    assert doc["violation"]["set"] == "1,2,3,4"
    assert (doc["violation"]["i"], doc["violation"]["j"]) == (2, 4)
    code, doc = run_json(capsys, "factorize", files("d", MASTER), files("p", {"m": 4, "edges": [[1, 2], [2, 3]]}))
    assert code == 1 and doc["missing_cover_edge"] == [4, 3]


def test_factorize_unnatural_support_is_input_error(capsys, files):
    probs = {s: "1/14" for s in UNNATURAL["sets"]}
    probs[""] = "1/2"
    code, _, err = run(capsys, "factorize", files("u", {"m": 4, "probs": probs}), files("c", CYCLE))
    assert code == 2 and "natural" in err


# -- hibi / oracle ----------------------------------------------------------------------------


def test_hibi_commands(capsys, files):
    code, doc = run_json(capsys, "hibi", "gens", files("s", S_SUPPORT))
    assert code == 0 and len(doc["generators"]) == 5
    assert run(capsys, "hibi", "check-equality", files("s", S_SUPPORT), files("p", PATH))[0] == 0
    boolean = {"m": 2, "sets": ["", "1", "2", "1,2"]}
    assert run(capsys, "hibi", "check-equality", files("b", boolean), files("k", {"m": 2, "edges": [[1, 2]]}))[0] == 1


def test_oracle_commands(capsys):
    code, doc = run_json(capsys, "oracle", "sweep", "--trials", "5", "--seed", "2")
    assert code == 0 and doc["ok"]
    code, out, _ = run(capsys, "oracle", "counterexample")
    assert code == 0 and "3/19208" in out
    assert run(capsys, "oracle", "counterexample", "--p-empty", "1/14")[0] == 1


# -- errors --------------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "doc, needle",
    [
        ({"m": 4, "covers": [[2, 1]], "extra": 1}, "extra"),
        ({"m": 4}, "covers"),
        ({"m": "4", "covers": []}, "'m'"),
        ({"m": 4, "covers": [[2, 9]]}, "covers"),
        ({"m": 4, "covers": [[2, 1], [2, 1]]}, ""),
        ("not json", "JSON"),
    ],
)
def test_input_errors(capsys, files, doc, needle):
    code, out, err = run(capsys, "lattice", "from-poset", files("bad", doc))
    assert code == 2 and needle in err and out == ""


def test_usage_errors(capsys, files):
    assert run(capsys)[0] == 2
    assert run(capsys, "lattice")[0] == 2
    assert run(capsys, "param", "feasible", files("c", CYCLE))[0] == 2  # missing --support
    assert run(capsys, "lattice", "from-poset", "/nonexistent.json")[0] == 2


def test_bad_distribution_fields(capsys, files):
    for probs in ({"1,3": "-1/2"}, {"3,1": "1"}, {"5": "1"}, {"1": "x"}, {"1": 0.5}):
        code, _, err = run(capsys, "factorize", files("d", {"m": 4, "probs": probs}), files("c", CYCLE))
        assert code == 2, probs
    bad_cert = {"m": 4, "support": "1", "clique_params": {}}
    assert run(capsys, "verify", files("x", bad_cert), files("d", MASTER), files("c", CYCLE))[0] == 2


# -- round trips -----------------------------------------------------------------------------------


@given(posets())
def test_poset_round_trip(P):
    assert io.poset_from_dict(json.loads(json.dumps(io.poset_to_dict(P)))) == P


@given(graphs())
def test_graph_round_trip(G):
    assert io.graph_from_dict(io.graph_to_dict(G)) == G


@given(posets())
def test_lattice_round_trip(P):
    L = order_ideals(P)
    doc = json.loads(io.dumps(io.lattice_to_dict(L), "lattice"))
    assert io.lattice_from_dict(doc) == L


def test_distribution_and_certificate_round_trip():
    p = io.distribution_from_dict(MASTER)
    assert io.distribution_from_dict(io.distribution_to_dict(p)) == p
    assert p[D("13")] == Fraction(1, 16)
    from latticegm.combinat import Graph

    cert = factorize(p, Graph.cycle(4))
    assert io.certificate_from_dict(io.certificate_to_dict(cert)) == cert


def test_entry_point(files):
    out = subprocess.run(
        [sys.executable, "-m", "latticegm.cli", "lattice", "from-poset", files("fence", FENCE)],
        capture_output=True, text=True,
    )
    assert out.returncode == 0 and len(out.stdout.splitlines()) == 8
