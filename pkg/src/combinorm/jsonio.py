"""JSON formats shared by the CLI and the file interfaces.

All rationals travel as strings "p/q" (or "p"); vectors as {"id": "p/q"};
families as tagged dicts that reconstruct the builder calls.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import emulations, families, graphs, orlicz, sierpinski
from .errors import InputError
from .exact import format_rat, parse_rat


def load_payload(source: str) -> dict:
    """Inline JSON (starts with '{' or '[') or a path to a JSON file."""
    text = source.strip()
    if not (text.startswith("{") or text.startswith("[")):
        try:
            text = open(source).read()
        except OSError as exc:
            raise InputError(f"cannot read {source!r}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON in {source!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

def vector_from_json(data) -> dict[int, Fraction]:
    if not isinstance(data, dict):
        raise InputError("vector JSON must be an object of id -> rational")
    out = {}
    for k, v in data.items():
        out[int(k)] = parse_rat(v)
    return {i: v for i, v in out.items() if v != 0}


def vector_to_json(x: dict[int, Fraction]) -> dict:
    return {str(i): format_rat(v) for i, v in sorted(x.items()) if v != 0}


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

def _universe_from_json(spec) -> list[int]:
    if isinstance(spec, dict):
        bound = int(spec["bound"])
        return list(range(1, bound + 1))
    return [int(v) for v in spec]


def family_from_json(data: dict):
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError("family JSON must be an object with a 'kind'")
    kind = data["kind"]
    if kind == "explicit":
        return families.explicit_family(_universe_from_json(data["universe"]),
                                        [frozenset(s) for s in data["sets"]])
    if kind == "all-subsets":
        return families.all_subsets_family(_universe_from_json(data["universe"]))
    if kind == "bounded-card":
        return families.bounded_card_family(_universe_from_json(data["universe"]),
                                            int(data["k"]))
    if kind == "schreier":
        return families.schreier(str(data["alpha"]),
                                 data.get("variant", "standard"),
                                 int(data["universe"]["bound"]
                                     if isinstance(data["universe"], dict)
                                     else max(_universe_from_json(data["universe"]))))
    if kind == "graph-cliques":
        return graphs.cliques(graphs.from_json_dict(data["graph"]))
    if kind == "graph-anticliques":
        return graphs.anticliques(graphs.from_json_dict(data["graph"]))
    if kind == "perp":
        inner = family_from_json(data["inner"])
        return families.perp(inner, data.get("truncation"))
    if kind in ("farah", "union"):
        parts = [( _universe_from_json(p["ground"]), family_from_json(p["family"]))
                 for p in data["parts"]]
        build = families.farah if kind == "farah" else families.union_family
        return build(parts)
    if kind in ("poset-chains", "poset-antichains"):
        order = families.PartialOrder(tuple(int(v) for v in data["elements"]),
                                      frozenset((int(a), int(b)) for a, b in data["le"]))
        build = families.poset_chains if kind == "poset-chains" else families.poset_antichains
        return build(order)
    if kind in ("product-chains", "product-antichains"):
        order = families.product_order(int(data["n"]))
        build = families.poset_chains if kind == "product-chains" else families.poset_antichains
        return build(order)
    raise InputError(f"unknown family kind {kind!r}")


def family_to_json(fam) -> dict:
    tag = fam.tag
    if tag == "explicit":
        return {"kind": "explicit", "universe": list(fam.universe),
                "sets": fam.meta["sets"]}
    if tag == "all-subsets":
        return {"kind": "all-subsets", "universe": list(fam.universe)}
    if tag == "bounded-card":
        return {"kind": "bounded-card", "universe": list(fam.universe), "k": fam.meta["k"]}
    if tag == "schreier":
        return {"kind": "schreier", "universe": {"bound": len(fam.universe)},
                "alpha": fam.meta["alpha"], "variant": fam.meta["variant"],
                "ladder": fam.meta["ladder"]}
    if tag in ("graph-cliques", "graph-anticliques"):
        return {"kind": tag, "graph": fam.meta["graph"]}
    raise InputError(f"family of kind {tag!r} has no JSON writer")


# ---------------------------------------------------------------------------
# injections and emulations
# ---------------------------------------------------------------------------

def injection_from_json(data: dict) -> sierpinski.RationalInjection:
    if "values" in data:
        return sierpinski.explicit_injection([parse_rat(v) for v in data["values"]])
    if "generator" in data:
        return sierpinski.generated_injection(data["generator"])
    raise InputError("injection JSON needs 'values' or 'generator'")


def injection_to_json(inj: sierpinski.RationalInjection) -> dict:
    if inj.generator:
        return {"generator": inj.generator}
    return {"values": [format_rat(v) for v in inj.values]}


def emulation_from_json(data: dict) -> emulations.Emulation:
    blocks = tuple((int(b["label"]), int(b["size"])) for b in data["blocks"])
    theta = tuple(parse_rat(v) for v in data["theta"])
    return emulations.Emulation(blocks, theta)


def emulation_to_json(e: emulations.Emulation) -> dict:
    return {"blocks": [{"label": t, "size": s} for t, s in e.blocks],
            "theta": [format_rat(v) for v in e.theta]}


# ---------------------------------------------------------------------------
# Orlicz sequences
# ---------------------------------------------------------------------------

def orlicz_from_json(data) -> orlicz.OrliczSeq:
    if isinstance(data, dict):
        entries = data.get("functions", [])
        repeat = data.get("repeat")
    else:
        entries = data
        repeat = None
    exps = []
    for item in entries:
        p = parse_rat(item["p"])
        c = parse_rat(item.get("c", "1"))
        if c != 1:
            raise InputError("phi(1) = 1 normalization forces c = 1")
        exps.append(p)
    rep = None
    if repeat is not None:
        rep = parse_rat(repeat["p"])
        if parse_rat(repeat.get("c", "1")) != 1:
            raise InputError("phi(1) = 1 normalization forces c = 1")
    return orlicz.OrliczSeq(tuple(exps), repeat=rep)
