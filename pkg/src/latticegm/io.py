"""JSON instance files and their text/JSON renderings.

Subsets are written as comma-separated ascending 1-based labels (``"1,3"``,
``""`` for the empty set) and rationals as strings (``"1/16"``, ``"2"``).
This module is the only place where 1-based labels are converted.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .ci import Binomial, CIStatement, Distribution
from .combinat import DistributiveLattice, Graph, Poset, masks
from .combinat.masks import Mask, mask_label, parse_mask
from .errors import InputError
from .factorization import FactorizationCertificate

SCHEMA = "latticegm/1"


def _check_keys(doc: dict, required: set[str], kind: str, optional: Iterable[str] = ()) -> None:
    if not isinstance(doc, dict):
        raise InputError(f"{kind} document must be a JSON object")
    allowed = required | set(optional) | {"schema", "kind"}
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise InputError(f"{kind}: unknown key(s) {', '.join(unknown)}")
    missing = sorted(required - set(doc))
    if missing:
        raise InputError(f"{kind}: missing key(s) {', '.join(missing)}")


def _m(doc: dict, kind: str) -> int:
    m = doc["m"]
    if not isinstance(m, int) or isinstance(m, bool):
        raise InputError(f"{kind}: field 'm' must be an integer")
    return masks.check_m(m)


def _pairs(doc: dict, key: str, kind: str, m: int) -> list[tuple[int, int]]:
    raw = doc[key]
    if not isinstance(raw, list):
        raise InputError(f"{kind}: field '{key}' must be a list of pairs")
    out = []
    for item in raw:
        if (
            not isinstance(item, list) or len(item) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)
        ):
            raise InputError(f"{kind}: field '{key}' has a malformed pair {item!r}")
        i, j = item
        if not (1 <= i <= m and 1 <= j <= m):
            raise InputError(f"{kind}: field '{key}' pair {item!r} is outside [1, {m}]")
        out.append((i - 1, j - 1))
    return out


def parse_rational(text: Any) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise InputError(f"rational must be a string like '1/16', got {text!r}")
    try:
        return Fraction(text.strip() if isinstance(text, str) else text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse rational {text!r}") from None


def fmt_rational(x: Fraction) -> str:
    return str(Fraction(x))


# -- readers -------------------------------------------------------------------------


def poset_from_dict(doc: dict) -> Poset:
    _check_keys(doc, {"m", "covers"}, "poset")
    m = _m(doc, "poset")
    return Poset.from_covers(m, _pairs(doc, "covers", "poset", m))


def graph_from_dict(doc: dict) -> Graph:
    _check_keys(doc, {"m", "edges"}, "graph")
    m = _m(doc, "graph")
    return Graph.from_edges(m, _pairs(doc, "edges", "graph", m))


def family_from_dict(doc: dict) -> tuple[int, list[Mask]]:
    """A list of subsets; no closure requirement."""
    _check_keys(doc, {"m", "sets"}, "lattice")
    m = _m(doc, "lattice")
    if not isinstance(doc["sets"], list):
        raise InputError("lattice: field 'sets' must be a list of strings")
    sets = [parse_mask(s, m) for s in doc["sets"]]
    if len(set(sets)) != len(sets):
        raise InputError("lattice: field 'sets' lists a subset twice")
    return m, sets


def lattice_from_dict(doc: dict) -> DistributiveLattice:
    m, sets = family_from_dict(doc)
    return DistributiveLattice(m, sets)


def distribution_from_dict(doc: dict) -> Distribution:
    _check_keys(doc, {"m", "probs"}, "distribution")
    m = _m(doc, "distribution")
    probs = doc["probs"]
    if not isinstance(probs, dict):
        raise InputError("distribution: field 'probs' must be an object")
    vals = {}
    for k, v in probs.items():
        S = parse_mask(k, m)
        if S in vals:
            raise InputError(f"distribution: subset {k!r} given twice")
        vals[S] = parse_rational(v)
    return Distribution(m, vals)


def certificate_from_dict(doc: dict) -> FactorizationCertificate:
    _check_keys(doc, {"m", "support", "clique_params"}, "certificate", optional={"dependent_trace"})
    m = _m(doc, "certificate")
    if not isinstance(doc["support"], list):
        raise InputError("certificate: field 'support' must be a list of strings")
    if not isinstance(doc["clique_params"], dict):
        raise InputError("certificate: field 'clique_params' must be an object")
    support = tuple(masks.sorted_masks(parse_mask(s, m) for s in doc["support"]))
    params = {parse_mask(k, m): parse_rational(v) for k, v in doc["clique_params"].items()}
    trace = []
    raw = doc.get("dependent_trace", [])
    if not isinstance(raw, list):
        raise InputError("certificate: field 'dependent_trace' must be a list")
    for item in raw:
        if not isinstance(item, dict) or set(item) != {"set", "i", "j"}:
            raise InputError("certificate: trace entries need exactly 'set', 'i', 'j'")
        i, j = item["i"], item["j"]
        if not all(isinstance(x, int) and not isinstance(x, bool) and 1 <= x <= m for x in (i, j)):
            raise InputError(f"certificate: trace entry {item!r} has an element outside [1, {m}]")
        trace.append((parse_mask(item["set"], m), i - 1, j - 1))
    return FactorizationCertificate(m, support, params, tuple(trace))


def load_json(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None


# -- writers -------------------------------------------------------------------------


def poset_to_dict(P: Poset) -> dict:
    return {"m": P.m, "covers": [[i + 1, j + 1] for i, j in P.sorted_covers()]}


def graph_to_dict(G: Graph) -> dict:
    return {"m": G.m, "edges": [[i + 1, j + 1] for i, j in G.sorted_edges()]}


def family_to_dict(m: int, sets: Iterable[Mask]) -> dict:
    return {"m": m, "sets": [mask_label(S) for S in masks.sorted_masks(sets)]}


def lattice_to_dict(L: DistributiveLattice) -> dict:
    return family_to_dict(L.m, L.elements)


def distribution_to_dict(p: Distribution) -> dict:
    # zeros are implicit
    return {"m": p.m, "probs": {mask_label(S): fmt_rational(p[S]) for S in p.support()}}


def certificate_to_dict(cert: FactorizationCertificate) -> dict:
    return {
        "m": cert.m,
        "support": [mask_label(S) for S in cert.support],
        "clique_params": {mask_label(S): fmt_rational(c) for S, c in cert.clique_params.items()},
        "dependent_trace": [
            {"set": mask_label(S), "i": i + 1, "j": j + 1} for S, i, j in cert.dependent_trace
        ],
    }


def binomial_to_dict(b: Binomial) -> dict:
    return {"plus": [mask_label(S) for S in b.plus], "minus": [mask_label(S) for S in b.minus]}


def statement_to_dict(s: CIStatement) -> dict:
    return {"A": mask_label(s.A), "B": mask_label(s.B), "C": mask_label(s.C)}


def dumps(obj: dict, kind: str) -> str:
    return json.dumps({"schema": SCHEMA, "kind": kind, **obj}, sort_keys=False)
