"""Command-line front end.

Exit codes: 0 success (an undetermined homotopy type included), 2 bad input,
3 resource bound hit, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import complexity as cx
from . import homotopy as ht
from .cuts import (
    Cut,
    canonical_form,
    act,
    cut_from_weights,
    enumerate_resonances,
    format_vector,
    from_symbolic,
    to_symbolic,
)
from .errors import InvariantViolation, ParseError, ResourceLimitError
from .partitions import OrderedSetPartition, SetPartition, parse_weights
from .relative import closure_partition, relative_from_gluing, substratum_contained
from .sequential import classify

SCHEMA_VERSION = ht.SCHEMA_VERSION

EXIT_OK, EXIT_PARSE, EXIT_RESOURCE, EXIT_INVARIANT = 0, 2, 3, 4


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        payload = {"schema_version": SCHEMA_VERSION, **payload}
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _load_cut(args) -> Cut:
    if getattr(args, "symbolic", None):
        return from_symbolic(args.symbolic)
    if not getattr(args, "weights", None):
        raise ParseError("give a weight list or --symbolic")
    return cut_from_weights(parse_weights(args.weights), bound=args.bound_n)


def _cut_payload(S: Cut) -> dict:
    out = {"n": S.n, "size": len(S), "trivial": S.is_trivial(),
           "generators": [list(x) for x in S.generators()]}
    if S.n:
        out["symbolic"] = str(to_symbolic(S))
    return out


def _cut_text(S: Cut) -> str:
    lines = [f"n = {S.n}, {len(S)} element(s)" + (" (trivial)" if S.is_trivial() else "")]
    gens = S.generators()
    if gens:
        lines.append("elements (up to sign): " + " ".join(format_vector(x) for x in gens))
    lines.append(f"symbolic: {to_symbolic(S)}")
    return "\n".join(lines)


def cmd_cut(args) -> int:
    S = _load_cut(args)
    _emit(args, {"command": "cut", **_cut_payload(S)}, _cut_text(S))
    return EXIT_OK


def cmd_symbolic(args) -> int:
    S = from_symbolic(args.expr)
    payload = {"command": "symbolic", **_cut_payload(S),
               "elements": [list(x) for x in S.sorted()]}
    _emit(args, payload, _cut_text(S))
    return EXIT_OK


def cmd_act(args) -> int:
    S = _load_cut(args)
    pi = OrderedSetPartition.parse(args.partition, n=S.n)
    T = act(pi, S)
    _emit(args, {"command": "act", "partition": str(pi), **_cut_payload(T)}, _cut_text(T))
    return EXIT_OK


def cmd_closure(args) -> int:
    S = _load_cut(args)
    pi = SetPartition.parse(args.partition, n=S.n)
    if args.member:
        nu = SetPartition.parse(args.member, n=S.n)
        hit = substratum_contained(nu, pi, S)
        _emit(args, {"command": "closure", "partition": str(pi), "member": str(nu), "contained": hit},
              f"{nu} {'is' if hit else 'is not'} in the closure of {pi}")
        return EXIT_OK
    closed = sorted(closure_partition(pi, S), key=lambda p: (len(p.blocks), str(p)), reverse=True)
    _emit(args, {"command": "closure", "partition": str(pi), "closure": [str(p) for p in closed]},
          f"{len(closed)} partition(s)\n" + "\n".join(str(p) for p in closed))
    return EXIT_OK


def cmd_relative(args) -> int:
    S = _load_cut(args)
    pi = SetPartition.parse(args.partition, n=S.n)
    rc = relative_from_gluing(S, pi)
    surv = sorted(rc.surviving)
    inf = sorted(str(p) for p in rc.at_infinity)
    text = (f"surviving: {len(surv)} element(s)\n  " + " ".join(format_vector(x) for x in surv)
            + f"\nat infinity: {len(inf)} partition(s)\n  " + " ".join(inf))
    _emit(args, {"command": "relative", "partition": str(pi), "surviving": [list(x) for x in surv],
                 "at_infinity": inf}, text)
    return EXIT_OK


def cmd_classify(args) -> int:
    report = classify(parse_weights(args.weights), bound=args.bound_n)
    d = report.as_dict()
    yn = {True: "yes", False: "no"}
    lines = [f"parts: {','.join(map(str, report.parts))}",
             f"sequential: {yn[report.sequential]}",
             f"strongly sequential: {yn[report.strongly_sequential]}",
             f"division chain: {yn[report.division_chain]}",
             f"mm: {report.mm}",
             f"I: {'absent' if d['I'] is None else '{' + ','.join(map(str, d['I'])) + '}'}"]
    if d["witness"]:
        lines.append(f"witness: {d['witness']['identity']}")
    _emit(args, {"command": "classify", **d}, "\n".join(lines))
    return EXIT_OK


def cmd_homotopy(args) -> int:
    answer = ht.homotopy_type(parse_weights(args.weights), model=args.model, verify=args.verify)
    payload = ht.to_json(answer, args.model)
    text = ht.render(answer.result, args.model)
    if args.model == "circle" and answer.result.kind == "wedge":
        table = ht.betti(answer.result)
        text += "\nreduced Betti numbers: " + ", ".join(f"b_{d} = {r}" for d, r in table.items())
    if answer.result.is_undetermined and answer.result.carrier:
        text += f"\ncarrier: {answer.result.carrier}"
    if args.trace:
        text += "\ntrace:\n" + "\n".join(f"  {t}" for t in answer.trace)
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)
    return EXIT_OK


def cmd_graph(args) -> int:
    G = ht.division_graph(parse_weights(args.weights))
    paths = ht.complete_paths(G)
    if args.dot:
        sys.stdout.write(G.to_dot())
        return EXIT_OK
    payload = {"command": "graph", "bases": list(G.bases), "mults": list(G.mults),
               "edges": [{"from": x, "to": y, "weight": w} for x, y, w in G.edges],
               "paths": [{"vertices": list(p.vertices), "l": p.length, "w": p.weight} for p in paths]}
    lines = [f"vertices 0..{G.n}, {len(G.edges)} edge(s)"]
    lines += [f"  e({x},{y}) w={w}" for x, y, w in G.edges]
    lines.append(f"{len(paths)} complete path(s)")
    lines += [f"  {'-'.join(map(str, p.vertices))}  (l,w) = ({p.length},{p.weight})" for p in paths]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_complexity(args) -> int:
    S = _load_cut(args)
    res = cx.complexity(S, mode=args.mode, max_size=args.max_size, bound_n=args.bound_n)
    text = f"c = {res} ({res.mode} candidates)"
    if res.witness:
        text += "\nwitness: " + " ".join(str(p) for p in res.witness)
    _emit(args, {"command": "complexity", **res.as_dict()}, text)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    reps = enumerate_resonances(args.n)
    rows = []
    for r in reps:
        S = r.to_cut()
        rows.append({"size": len(S), "trivial": S.is_trivial(), "symbolic": str(to_symbolic(S)),
                     "generators": [list(x) for x in S.generators()]})
    nontrivial = [row for row in rows if not row["trivial"]]
    lines = [f"{len(reps)} resonance(s) of length {args.n}, {len(nontrivial)} nontrivial"]
    lines += [f"  {row['symbolic']}  [{row['size']} elements]" for row in nontrivial]
    _emit(args, {"command": "enumerate", "n": args.n, "count": len(reps), "resonances": rows},
          "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="resonance",
                                description="Cuts, closures and homotopy types of symmetric-product strata.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, cut_input: bool = False):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--bound-n", type=int, default=14, help="enumeration bound on the number of parts")
        if cut_input:
            sp.add_argument("--symbolic", help="cut given by linear forms, e.g. a+b,a,b")

    sp = sub.add_parser("cut", help="cut of a weight list")
    sp.add_argument("weights", nargs="?", help="e.g. 8,4,2^3,1^6")
    common(sp, True)
    sp.set_defaults(func=cmd_cut)

    sp = sub.add_parser("symbolic", help="cut of a symbolic resonance")
    sp.add_argument("expr")
    common(sp)
    sp.set_defaults(func=cmd_symbolic)

    sp = sub.add_parser("act", help="act on a cut with an ordered set partition")
    sp.add_argument("partition", help="e.g. ({1},{2,3})")
    sp.add_argument("weights", nargs="?")
    common(sp, True)
    sp.set_defaults(func=cmd_act)

    sp = sub.add_parser("closure", help="closure of a partition under a cut")
    sp.add_argument("partition", help="e.g. {1}{2,3}{4}{5}")
    sp.add_argument("weights", nargs="?")
    sp.add_argument("--member", help="only test whether this partition is in the closure")
    common(sp, True)
    sp.set_defaults(func=cmd_closure)

    sp = sub.add_parser("relative", help="relative cut obtained by gluing a partition")
    sp.add_argument("partition")
    sp.add_argument("weights", nargs="?")
    common(sp, True)
    sp.set_defaults(func=cmd_relative)

    sp = sub.add_parser("classify", help="sequential / strongly sequential / division chain")
    sp.add_argument("weights")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("homotopy", help="homotopy type of the stratum")
    sp.add_argument("weights")
    sp.add_argument("--model", choices=["circle", "symbolic"], default="circle")
    sp.add_argument("--format", choices=["text", "json"], default=None)
    sp.add_argument("--verify", action="store_true", help="compare every applicable rule")
    sp.add_argument("--trace", action="store_true", help="print the derivation trace")
    common(sp)
    sp.set_defaults(func=cmd_homotopy)

    sp = sub.add_parser("graph", help="weighted path graph of a division chain")
    sp.add_argument("weights")
    sp.add_argument("--dot", action="store_true", help="Graphviz output")
    common(sp)
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("complexity", help="minimal number of partitions that lower the rank")
    sp.add_argument("weights", nargs="?")
    sp.add_argument("--mode", choices=list(cx.MODES), default=cx.TRANSPOSITIONS)
    sp.add_argument("--max-size", type=int, default=cx.DEFAULT_MAX_SIZE)
    common(sp, True)
    sp.set_defaults(func=cmd_complexity, bound_n=cx.DEFAULT_BOUND_N)

    sp = sub.add_parser("enumerate", help="all resonances of small length")
    sp.add_argument("n", type=int)
    common(sp)
    sp.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "format", None) == "json":
        args.json = True
    if getattr(args, "bound_n", 1) < 1 or getattr(args, "max_size", 1) < 1:
        print("error: bounds must be positive", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantViolation as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
