"""Command-line interface.

Exit codes: 0 success or YES, 1 negative decision (NO / UNSAT), 2 bad
input or a size-cap refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from functools import partial
from pathlib import Path

from .characterize import classify, fair_k_coloring
from .errors import CapExceeded, ParseError
from .field import check_modulus, format_matrix, parse_matrix
from .graphs import DEFAULT_MAIS_CAP, Graph, as_digraph, format_graph, mais, parse_graph_file
from .index_coding import IcsiInstance, optimal_scalar_rate, parse_instance, simulate
from .minrank import MAX_N, min_rank, min_rank_le
from .reduction import build_gadget, format_names
from .sweep import generate, pmap

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path):
    return parse_graph_file(_read(path))


def _caps(args) -> dict:
    return {"max_n": args.max_n} if args.max_n is not None else {}


def _mais_cap(args) -> int:
    return args.max_n if args.max_n is not None else DEFAULT_MAIS_CAP


def _emit(text: str, out=None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# per-file workers (top level so process pools can pickle them)


def _minrank_one(path, q, le, caps):
    try:
        d = _load_graph(path)
        if le is None:
            res = min_rank(d, q, **caps)
            return EXIT_OK, {"file": path, "minrank": res.value, "q": q, "witness": res.witness.tolist()}, (
                f"minrank {res.value}\n" + format_matrix(res.witness)
            )
        if not 1 <= le <= d.n:
            raise CliError(f"--le must lie in 1..{d.n}")
        m = min_rank_le(d, q, le, **caps)
        if m is None:
            return EXIT_NO, {"file": path, "decision": "NO", "le": le, "q": q}, "NO\n"
        return EXIT_OK, {"file": path, "decision": "YES", "le": le, "q": q, "witness": m.tolist()}, (
            "YES\n" + format_matrix(m)
        )
    except (ParseError, CapExceeded, CliError, ValueError) as exc:
        return EXIT_ERROR, {"file": path, "error": str(exc)}, f"error: {exc}\n"


def _classify_one(path, q, caps):
    try:
        c = classify(_load_graph(path), q, **caps)
        return EXIT_OK, dict(file=path, **c.to_dict()), c.to_text()
    except (ParseError, CliError, ValueError) as exc:
        return EXIT_ERROR, {"file": path, "error": str(exc)}, f"error: {exc}\n"


def _bounds_one(path, q, caps, mais_cap):
    try:
        d = as_digraph(_load_graph(path))
        low = mais(d, cap=mais_cap)[0]
        high = min_rank(d, q, **caps).value
        return EXIT_OK, {"file": path, "q": q, "lower": low, "upper": high}, f"{low} ≤ beta ≤ {high}\n"
    except (ParseError, CapExceeded, CliError, ValueError) as exc:
        return EXIT_ERROR, {"file": path, "error": str(exc)}, f"error: {exc}\n"


def _run_many(worker, args):
    results = pmap(worker, args.files, workers=args.parallel)
    many = len(args.files) > 1
    if args.json:
        payload = [r[1] for r in results] if many else results[0][1]
        text = json.dumps(payload) + "\n"
    else:
        chunks = []
        for path, (code, _, text) in zip(args.files, results):
            if many:
                chunks.append(f"file {path}\n" + text)
            elif code != EXIT_ERROR:
                chunks.append(text)
        text = "".join(chunks)
    _emit(text, args.out)
    for code, _, t in results:
        if code == EXIT_ERROR:
            sys.stderr.write(t)
    codes = [r[0] for r in results]
    return EXIT_ERROR if EXIT_ERROR in codes else max(codes)


# --------------------------------------------------------------------------
# commands


def cmd_minrank(args):
    return _run_many(partial(_minrank_one, q=args.field, le=args.le, caps=_caps(args)), args)


def cmd_classify(args):
    return _run_many(partial(_classify_one, q=args.field, caps=_caps(args)), args)


def cmd_bounds(args):
    return _run_many(partial(_bounds_one, q=args.field, caps=_caps(args), mais_cap=_mais_cap(args)), args)


def cmd_faircolor(args):
    d = as_digraph(_load_graph(args.file))
    coloring = fair_k_coloring(d, args.colors)
    if args.json:
        _emit(json.dumps({"k": args.colors, "coloring": None if coloring is None else
                          {str(v): c for v, c in coloring.items()}}) + "\n", args.out)
    elif coloring is None:
        _emit("UNSAT\n", args.out)
    else:
        _emit(" ".join(f"{v}:{c}" for v, c in coloring.items()) + "\n", args.out)
    return EXIT_NO if coloring is None else EXIT_OK


def _load_instance(path, q) -> IcsiInstance:
    text = _read(path)
    if text.lstrip().startswith("{"):
        return parse_instance(text)
    return IcsiInstance.from_digraph(as_digraph(parse_graph_file(text)), q)


def cmd_simulate(args):
    inst = _load_instance(args.instance, args.field)
    if args.matrix:
        m = parse_matrix(_read(args.matrix))
    else:
        _, m = optimal_scalar_rate(inst, **_caps(args))
    report = simulate(inst, m, trials=args.trials, seed=args.seed)
    if args.json:
        _emit(json.dumps(report.to_dict(), sort_keys=True) + "\n", args.out)
    else:
        _emit(report.to_text(), args.out)
    return EXIT_OK if report.ok else EXIT_NO


def cmd_reduce(args):
    g = _load_graph(args.file)
    if not isinstance(g, Graph):
        raise CliError("reduce expects an undirected 'graph' file")
    gadget = build_gadget(g, args.colors)
    edges, names = format_graph(gadget.digraph), format_names(gadget)
    summary = {"vertices": gadget.digraph.n, "arcs": len(gadget.digraph.arcs), "k": gadget.k}
    if args.out:
        Path(args.out).write_text(edges, encoding="utf-8")
        Path(str(args.out) + ".names").write_text(names, encoding="utf-8")
        text = json.dumps(summary) + "\n" if args.json else (
            f"vertices {summary['vertices']}\narcs {summary['arcs']}\n"
        )
        sys.stdout.write(text)
    elif args.json:
        summary["digraph"] = edges
        summary["names"] = names
        sys.stdout.write(json.dumps(summary) + "\n")
    else:
        sys.stdout.write(edges + "".join(f"# {line}\n" for line in names.splitlines()))
    return EXIT_OK


def cmd_gen(args):
    if args.p is not None and args.edges is not None:
        raise CliError("give either --p or --edges, not both")
    if args.p is not None and not 0.0 <= args.p <= 1.0:
        raise CliError("--p must lie in [0, 1]")
    g = generate(args.kind, args.n, args.seed, p=args.p, edges=args.edges)
    _emit(format_graph(g), args.out)
    return EXIT_OK


# --------------------------------------------------------------------------


def _prime(text):
    try:
        return check_modulus(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mrkit", description="Min-rank of graphs and digraphs over GF(q).")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--max-n", type=_positive, default=None, dest="max_n",
                        help=f"override the exact-search vertex cap (default {MAX_N})")

    many = argparse.ArgumentParser(add_help=False)
    many.add_argument("files", nargs="+", help="edge-list files")
    many.add_argument("--field", type=_prime, default=2)
    many.add_argument("--parallel", type=_positive, default=1, help="worker processes for several files")

    p = sub.add_parser("minrank", parents=[common, many], help="exact min-rank with witness matrix")
    p.add_argument("--le", type=_positive, default=None, help="decide whether min-rank <= r")
    p.set_defaults(func=cmd_minrank)

    p = sub.add_parser("classify", parents=[common, many], help="near-extreme min-rank class with certificate")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bounds", parents=[common, many], help="MAIS <= broadcast rate <= min-rank")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("faircolor", parents=[common], help="fair k-coloring or UNSAT")
    p.add_argument("file")
    p.add_argument("--colors", type=_positive, default=3)
    p.set_defaults(func=cmd_faircolor)

    p = sub.add_parser("simulate", parents=[common], help="encode/decode random messages")
    p.add_argument("instance", help="instance JSON or side-information edge-list file")
    p.add_argument("--matrix", help="fitting matrix file; solved for when omitted")
    p.add_argument("--field", type=_prime, default=2, help="field for edge-list instances")
    p.add_argument("--trials", type=_positive, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reduce", parents=[common], help="k-coloring to fair k-coloring gadget")
    p.add_argument("file")
    p.add_argument("--colors", type=_positive, default=3)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", parents=[common], help="seeded random instance")
    p.add_argument("kind", choices=["digraph", "graph"])
    p.add_argument("n", type=_positive)
    p.add_argument("--p", type=float, default=None, help="arc/edge probability (default 0.5)")
    p.add_argument("--edges", type=int, default=None, help="exact arc/edge count")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, CapExceeded, CliError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR
    except OSError as exc:
        sys.stderr.write(f"error: {exc.strerror}: {exc.filename}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
