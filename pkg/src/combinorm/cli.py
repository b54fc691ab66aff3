"""Command-line front end.

Exit codes: 0 success, 1 check-failed (an asserted boolean came out false),
2 input error, 3 internal invariant violation.  Output is plain text by
default; --json switches to the documented JSON schemas.  COMBINORM_THREADS
bounds per-graph parallelism in corpus sweeps (default 1).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import duality, emulations, exact, extremals, families, graphs, jsonio, norms, sierpinski
from .errors import CombinormError, EquivalenceViolation, InputError
from .exact import format_rat, parse_rat

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _parse_id_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"bad id list {text!r}") from exc


def _load_family(arg: str):
    return jsonio.family_from_json(jsonio.load_payload(arg))


def _load_vector(arg: str):
    return jsonio.vector_from_json(jsonio.load_payload(arg))


def _load_graph(arg: str):
    text = arg.strip()
    if text.startswith("{"):
        return graphs.from_json_dict(json.loads(text))
    return graphs.load_graph(arg)


def _emit(data, as_json: bool, text: str | None = None) -> None:
    if as_json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text if text is not None else data)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_norm(args) -> int:
    fam = _load_family(args.family)
    x = _load_vector(args.vector)
    ground = _parse_id_list(args.ground) if args.ground else None
    ctx = norms.context(fam, ground)
    value = norms.norm(ctx, x) if args.which == "norm" else norms.dual_norm(ctx, x)
    _emit({"value": format_rat(value)}, args.json, format_rat(value))
    return EXIT_OK


def _cmd_perp(args) -> int:
    fam = _load_family(args.family)
    p = families.perp(fam, args.truncation)
    if args.set is not None:
        member = p.contains(_parse_id_list(args.set))
        _emit({"member": member}, args.json, "member" if member else "not member")
        return EXIT_OK if member else EXIT_CHECK_FAILED
    sets = [sorted(s) for s in p.members()
            if len(s) <= (args.enumerate_max_size or len(p.universe))]
    _emit({"sets": sets}, args.json, "\n".join(" ".join(map(str, s)) for s in sets))
    return EXIT_OK


def _cmd_graphgen_check(args) -> int:
    fam = _load_family(args.family)
    ok, witness = families.is_graph_generated(fam, args.truncation)
    payload = {"graph_generated": ok,
               "witness": sorted(witness) if witness else None}
    text = "graph-generated" if ok else f"not graph-generated: witness {sorted(witness)}"
    _emit(payload, args.json, text)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_max_elements(args) -> int:
    fam = _load_family(args.family)
    ground = _parse_id_list(args.ground) if args.ground else None
    sets = [sorted(s) for s in fam.max_elements(ground)]
    _emit({"max_elements": sets}, args.json,
          "\n".join(" ".join(map(str, s)) for s in sets))
    return EXIT_OK


def _cmd_perfect_check(args) -> int:
    g = _load_graph(args.graph)
    methods = ["spgt", "chi_omega"] if args.method == "both" else [args.method.replace("-", "_")]
    verdicts = {m: graphs.is_perfect(g, m) for m in methods}
    if len(set(verdicts.values())) > 1:
        raise EquivalenceViolation("spgt", "chi_omega", detail=str(verdicts))
    perfect = next(iter(verdicts.values()))
    witness = None
    if not perfect:
        hole = graphs.find_odd_hole(g)
        if hole:
            witness = {"odd_hole": hole}
            text = "imperfect: odd hole (" + " ".join(map(str, hole)) + ")"
        else:
            anti = graphs.find_odd_antihole(g)
            witness = {"odd_antihole": anti}
            text = "imperfect: odd antihole (" + " ".join(map(str, anti)) + ")"
    else:
        text = "perfect"
    _emit({"perfect": perfect, "witness": witness}, args.json, text)
    return EXIT_OK if perfect else EXIT_CHECK_FAILED


def _cmd_duality_report(args) -> int:
    g = _load_graph(args.graph)
    report = duality.duality_report(g)
    d = report.as_dict()
    lines = ["check              verdict"] + [f"{k:<19}{v}" for k, v in sorted(d.items())]
    _emit(d, args.json, "\n".join(lines))
    return EXIT_OK


def _cmd_extreme(args) -> int:
    if args.construct is None:
        g = _load_graph(args.graph)
        x = _load_vector(args.vector)
        verdict = extremals.is_extreme(g, x)
        tight, gens = extremals.active_constraints(g, x)
        payload = {"extreme": verdict,
                   "tight_cliques": [sorted(c) for c in tight],
                   "active_rank": exact.rank(gens) if gens else 0,
                   "dimension": g.n}
        text = ("extreme" if verdict else "not extreme") + \
            f" ({len(tight)} tight cliques)"
        _emit(payload, args.json, text)
        return EXIT_OK if verdict else EXIT_CHECK_FAILED
    if args.construct == "hole":
        g = _load_graph(args.graph)
        hole = _parse_id_list(args.hole)
        x = extremals.extend_half(g, hole)
        ok = extremals.is_extreme(g, x)
        _emit({"vector": jsonio.vector_to_json(x), "extreme": ok}, args.json,
              json.dumps(jsonio.vector_to_json(x)))
        return EXIT_OK if ok else EXIT_INTERNAL
    if args.construct == "antihole":
        g, x = extremals.antihole_point(args.n)
        ok = extremals.is_extreme(g, x)
        _emit({"graph": graphs.to_json_dict(g), "vector": jsonio.vector_to_json(x),
               "extreme": ok}, args.json, json.dumps(jsonio.vector_to_json(x)))
        return EXIT_OK if ok else EXIT_INTERNAL
    if args.construct == "rational":
        g, x, w = extremals.rational_gadget(parse_rat(args.q))
        ok = extremals.is_extreme(g, x)
        _emit({"graph": graphs.to_json_dict(g), "vector": jsonio.vector_to_json(x),
               "vertex": w, "extreme": ok}, args.json,
              f"vertex {w} carries {args.q}; extreme: {ok}")
        return EXIT_OK if ok else EXIT_INTERNAL
    raise InputError(f"unknown construction {args.construct!r}")


def _cmd_emulate(args) -> int:
    if args.op == "base":
        e = (emulations.base_singletons if args.base_kind == "le1"
             else emulations.base_all_finite)(args.labels)
    elif args.op == "schreier":
        e = emulations.base_singletons(args.labels)
        for _ in range(args.times):
            e = emulations.schreier_transform(e)
    elif args.op == "dstar":
        depths = _parse_id_list(args.parts) if args.parts else list(range(1, args.labels + 1))
        parts = []
        for d in depths:
            part = emulations.base_singletons(args.labels)
            for _ in range(d):
                part = emulations.schreier_transform(part)
            parts.append(part)
        e = emulations.dstar_transform(parts)
    elif args.op in ("union", "farah"):
        if not args.inputs:
            raise InputError(f"--inputs required for op {args.op}")
        parts = [jsonio.emulation_from_json(jsonio.load_payload(p))
                 for p in args.inputs.split(";")]
        e = (emulations.union_shift if args.op == "union" else emulations.farah_shift)(parts)
    else:
        raise InputError(f"unknown emulation op {args.op!r}")
    print(json.dumps(jsonio.emulation_to_json(e)))
    return EXIT_OK


def _cmd_verify_emulation(args) -> int:
    e = jsonio.emulation_from_json(jsonio.load_payload(args.emulation))
    fam = _load_family(args.family)
    ok, counterexample = emulations.verify_emulation(e, fam, args.max_size)
    payload = {"verified": ok,
               "counterexample": sorted(counterexample) if counterexample else None}
    text = "verified" if ok else f"counterexample {sorted(counterexample)}"
    _emit(payload, args.json, text)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_search_emulation(args) -> int:
    fam = _load_family(args.family)
    found = emulations.search_emulation(fam, max_block=args.max_block)
    if found is None:
        _emit({"emulation": None}, args.json, "none")
        return EXIT_CHECK_FAILED
    _emit({"emulation": jsonio.emulation_to_json(found)}, args.json,
          json.dumps(jsonio.emulation_to_json(found)))
    return EXIT_OK


def _cmd_sierpinski(args) -> int:
    if args.action == "norm":
        ctx = sierpinski.SierpinskiContext(
            jsonio.injection_from_json(jsonio.load_payload(args.injection)))
        value = sierpinski.chain_norm(ctx, _load_vector(args.vector))
        _emit({"value": format_rat(value)}, args.json, format_rat(value))
        return EXIT_OK
    if args.action == "graph":
        ctx = sierpinski.SierpinskiContext(
            jsonio.injection_from_json(jsonio.load_payload(args.injection)))
        g = sierpinski.sierpinski_graph(ctx, args.n)
        if args.dimacs:
            sys.stdout.write(graphs.write_dimacs(g))
        else:
            print(json.dumps(graphs.to_json_dict(g)))
        return EXIT_OK
    if args.action == "embed":
        host = sierpinski.SierpinskiContext(
            jsonio.injection_from_json(jsonio.load_payload(args.host)))
        guest = sierpinski.SierpinskiContext(
            jsonio.injection_from_json(jsonio.load_payload(args.guest)))
        mapping = sierpinski.embed(host, guest, args.n)
        if not sierpinski.is_induced_embedding(host, guest, mapping):
            raise EquivalenceViolation("embedding", "induced-check")
        _emit({str(k): v for k, v in sorted(mapping.items())}, args.json,
              " ".join(f"{k}->{v}" for k, v in sorted(mapping.items())))
        return EXIT_OK
    raise InputError(f"unknown sierpinski action {args.action!r}")


def _cmd_schreier(args) -> int:
    fam = families.schreier(args.alpha, args.variant, args.truncation)
    if args.action == "member":
        ok = fam.contains(_parse_id_list(args.set))
        _emit({"member": ok}, args.json, "member" if ok else "not member")
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    if args.action == "enumerate":
        sets = [sorted(s) for s in fam.members()
                if len(s) <= (args.max_size or args.truncation)]
        _emit({"sets": sets}, args.json,
              "\n".join(" ".join(map(str, s)) for s in sets))
        return EXIT_OK
    raise InputError(f"unknown schreier action {args.action!r}")


def _corpus_chunk(masks) -> dict:
    cache = duality.ClassCache()
    corpus = [graphs.graph_from_canonical(n, m) for n, m in masks]
    return duality.corpus_sweep(cache=cache, corpus=corpus)


def _cmd_corpus(args) -> int:
    if args.action != "sweep":
        raise InputError(f"unknown corpus action {args.action!r}")
    corpus = graphs.load_corpus(max_n=args.max_n)
    threads = int(os.environ.get("COMBINORM_THREADS", "1"))
    if threads > 1:
        import multiprocessing as mp

        keyed = [(g.n, graphs._edge_mask(g)) for g in corpus]
        chunks = [keyed[i::threads] for i in range(threads)]
        with mp.Pool(threads) as pool:
            parts = pool.map(_corpus_chunk, chunks)
        summary = {"graphs": sum(p["graphs"] for p in parts),
                   "perfect": sum(p["perfect"] for p in parts),
                   "imperfect": sum(p["imperfect"] for p in parts),
                   "first_disagreement": next(
                       (p["first_disagreement"] for p in parts
                        if p["first_disagreement"]), None)}
    else:
        summary = duality.corpus_sweep(max_n=args.max_n, corpus=corpus)
    if args.json:
        print(json.dumps(summary, indent=2, sort_keys=True))
    else:
        print("graphs\tperfect\timperfect\tdisagreement")
        print(f"{summary['graphs']}\t{summary['perfect']}\t{summary['imperfect']}\t"
              + ("none" if not summary["first_disagreement"] else "FOUND"))
    return EXIT_OK if not summary["first_disagreement"] else EXIT_INTERNAL


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="combinorm",
        description="exact combinatorial-norm and perfect-graph-duality toolkit")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    for which in ("norm", "dual-norm"):
        p = add(which, _cmd_norm, help=f"evaluate the family {which.replace('-', ' ')}")
        p.set_defaults(which=which.replace("-", "_"))
        p.add_argument("--family", required=True)
        p.add_argument("--vector", required=True)
        p.add_argument("--ground")

    p = add("perp", _cmd_perp, help="orthogonal family membership / enumeration")
    p.add_argument("--family", required=True)
    p.add_argument("--truncation", type=int)
    p.add_argument("--set")
    p.add_argument("--enumerate-max-size", type=int)

    p = add("graphgen-check", _cmd_graphgen_check, help="is the family graph-generated?")
    p.add_argument("--family", required=True)
    p.add_argument("--truncation", type=int)

    p = add("max-elements", _cmd_max_elements, help="maximal members within a ground set")
    p.add_argument("--family", required=True)
    p.add_argument("--ground")

    p = add("perfect-check", _cmd_perfect_check, help="perfection verdict with witness")
    p.add_argument("--graph", required=True)
    p.add_argument("--method", choices=["spgt", "chi-omega", "both"], default="both")

    p = add("duality-report", _cmd_duality_report, help="five equivalent duality checks")
    p.add_argument("--graph", required=True)

    p = add("extreme", _cmd_extreme, help="verify or construct extreme points")
    p.add_argument("--graph")
    p.add_argument("--vector")
    p.add_argument("--construct", choices=["hole", "antihole", "rational"])
    p.add_argument("--hole")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--q")

    p = add("emulate", _cmd_emulate, help="build emulations")
    p.add_argument("--op", required=True,
                   choices=["base", "schreier", "dstar", "union", "farah"])
    p.add_argument("--labels", type=int, default=6)
    p.add_argument("--times", type=int, default=1)
    p.add_argument("--base-kind", choices=["le1", "finite"], default="le1")
    p.add_argument("--parts", help="comma list of S*-depths for dstar")
    p.add_argument("--inputs", help="semicolon list of emulation files for union/farah")

    p = add("verify-emulation", _cmd_verify_emulation, help="exhaustive emulation check")
    p.add_argument("--emulation", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--max-size", type=int, required=True)

    p = add("search-emulation", _cmd_search_emulation, help="exhaustive emulation search")
    p.add_argument("--family", required=True)
    p.add_argument("--max-block", type=int, default=2)

    p = add("sierpinski", _cmd_sierpinski, help="fast norm, graph export, embedding")
    p.add_argument("action", choices=["norm", "graph", "embed"])
    p.add_argument("--injection")
    p.add_argument("--vector")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--host", default='{"generator": "stern-brocot"}')
    p.add_argument("--guest")
    p.add_argument("--dimacs", action="store_true")

    p = add("schreier", _cmd_schreier, help="Schreier family membership / enumeration")
    p.add_argument("action", choices=["member", "enumerate"])
    p.add_argument("--alpha", required=True)
    p.add_argument("--variant", choices=["standard", "star"], default="standard")
    p.add_argument("--truncation", type=int, default=20)
    p.add_argument("--set")
    p.add_argument("--max-size", type=int)

    p = add("corpus", _cmd_corpus, help="sweep the shipped graph corpus")
    p.add_argument("action", choices=["sweep"])
    p.add_argument("--max-n", type=int, default=7)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except EquivalenceViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CombinormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
