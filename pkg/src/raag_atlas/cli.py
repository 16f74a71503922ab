"""``raag-atlas`` command line.

Exit codes: 0 success, 1 internal error, 2 bad input or failed precondition
(including a rejected certificate and a ball over its cap), 3 a sweep found
a counterexample.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import atlas, certificates, extension, families, graphio, words
from .errors import BallOverflow, InputError, PreconditionError
from .graphs import Graph

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3


def load_graphs(source: str) -> list[Graph]:
    """Resolve ``family:lambda:<n>``, ``family:gamma:<n>``, ``example:<name>``, ``-`` or a path."""
    if source.startswith("family:"):
        parts = source.split(":")
        if len(parts) != 3 or parts[1] not in ("lambda", "gamma"):
            raise InputError(f"expected family:lambda:<n> or family:gamma:<n>, got {source!r}")
        try:
            n = int(parts[2])
        except ValueError:
            raise InputError(f"family size must be an integer, got {parts[2]!r}") from None
        return [families.lambda_n(n) if parts[1] == "lambda" else families.gamma_n(n)]
    if source.startswith("example:"):
        name = source.split(":", 1)[1]
        named = families.named_examples()
        if name not in named:
            raise InputError(f"unknown example {name!r}; known: {', '.join(sorted(named))}")
        return [named[name]]
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from None
    return graphio.parse_graphs(text)


def load_one(source: str) -> Graph:
    gs = load_graphs(source)
    if len(gs) != 1:
        raise InputError(f"expected one graph, {source} holds {len(gs)}")
    return gs[0]


# -- subcommands -----------------------------------------------------------

def cmd_certify(args) -> int:
    out = []
    for g in load_graphs(args.source):
        cert = certificates.best_upper_bound(g, cap=args.cap)
        data = certificates.certificate_to_dict(cert)
        ok, checks = certificates.verify_certificate(json.dumps(data))
        if not ok:
            bad = sorted(k for k, v in checks.items() if not v)
            print(f"internal error: emitted certificate fails re-verification: {bad}", file=sys.stderr)
            return EXIT_INTERNAL
        out.append(data)
    print(json.dumps(out[0] if len(out) == 1 else out, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    text = sys.stdin.read() if args.certificate == "-" else Path(args.certificate).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"certificate is not valid JSON: {exc}") from None
    items = data if isinstance(data, list) else [data]
    all_ok = True
    for k, item in enumerate(items):
        ok, checks = certificates.verify_certificate(item)
        if args.path_steps:
            cert = certificates.certificate_from_dict(item)
            good = certificates.verified_path_length(cert, args.path_steps)
            checks["zigzag_path"] = good == args.path_steps
            ok = ok and checks["zigzag_path"]
        all_ok &= ok
        bound = f"{item['bound']['num']}/{item['bound']['den']}"
        status = "VERIFIED" if ok else "REJECTED"
        print(f"certificate {k}: {status} bound {bound}")
        for name, v in sorted(checks.items()):
            if not v or args.verbose:
                print(f"  {name}: {'ok' if v else 'FAILED'}")
    return EXIT_OK if all_ok else EXIT_INPUT


def _emit_report(report: atlas.SweepReport, fmt: str) -> int:
    print(report.to_csv() if fmt == "csv" else report.to_json(), end="" if fmt == "csv" else "\n")
    for n, code, why in report.failures[:20]:
        print(f"counterexample n={n} code={code}: {why}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_COUNTEREXAMPLE


def cmd_sweep_2v(args) -> int:
    return _emit_report(atlas.sweep_theorem_2v(args.min_n, args.max_n, jobs=args.jobs), args.format)


def cmd_sweep_loxo(args) -> int:
    return _emit_report(atlas.sweep_loxo_equiv(args.max_n, jobs=args.jobs, n_min=args.min_n), args.format)


def cmd_sweep_certify(args) -> int:
    return _emit_report(atlas.sweep_certify(args.min_n, args.max_n, jobs=args.jobs), args.format)


def cmd_ball(args) -> int:
    g = load_one(args.source)
    if args.element:
        elem = words.reduce(g, args.element)
        base = args.base or g.labels[0]
    else:
        cert = certificates.best_upper_bound(g)
        elem = cert.element
        w = cert.witness
        base = args.base or (w.v1 if isinstance(w, certificates.PathWitness) else w.as_path().v1)
    try:
        samples = extension.orbit_ratio(g, elem, base, args.n_max, args.radius, cap=args.cap)
    except BallOverflow as exc:
        print(f"overflow: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rows = [(s.n, s.distance, s.ratio, "no" if s.boundary_touched else "yes") for s in samples]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "distance", "ratio", "converged"])
        w.writerows(rows)
        print(buf.getvalue(), end="")
    elif args.format == "json":
        print(json.dumps({"element": str(elem), "base": base, "radius": args.radius,
                          "samples": [{"n": n, "distance": d, "ratio": str(r), "converged": c == "yes"}
                                      for n, d, r, c in rows]}, indent=2))
    else:
        print(f"element {elem}  base {base}  radius {args.radius}")
        print(f"{'n':>3} {'dist':>5} {'ratio':>7}  converged")
        for n, d, r, c in rows:
            print(f"{n:>3} {d:>5} {str(r):>7}  {c}")
    return EXIT_OK


def cmd_family(args) -> int:
    g = families.lambda_n(args.n) if args.name == "lambda" else families.gamma_n(args.n)
    if args.format == "json":
        print(json.dumps({"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}, indent=2))
    elif args.format == "graph6":
        print(graphio.to_graph6(g))
    else:
        print(graphio.format_edge_list(g), end="")
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = load_one(args.source)
    x = words.reduce(g, args.word)
    conj, core = words.cyclic_reduce(x)
    info = {
        "normal_form": str(x),
        "length": len(x),
        "support": g.sorted_labels(x.support_mask()),
        "cyclic_core": str(core),
        "cyclic_conjugator": str(conj),
    }
    if args.equals is not None:
        info["equals"] = words.equals(x, words.reduce(g, args.equals))
    if args.format == "json":
        print(json.dumps(info, indent=2))
    else:
        for k, v in info.items():
            print(f"{k}: {' '.join(v) if isinstance(v, list) else v}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="raag-atlas", description="Loxodromic elements and translation-length certificates for right-angled Artin groups.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("certify", help="emit a verified upper-bound certificate")
    c.add_argument("source", help="file, '-', family:lambda:<n>, family:gamma:<n> or example:<name>")
    c.add_argument("--cap", type=int, default=certificates.DEFAULT_SEARCH_CAP,
                   help="largest vertex count for the sub-Λ search")
    c.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify", help="re-check a certificate JSON from scratch")
    v.add_argument("certificate", help="file or '-'")
    v.add_argument("--path-steps", type=int, default=0, help="also walk the zig-zag path this many steps")
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    for name, func, lo, hi in (("sweep-2v", cmd_sweep_2v, 4, 6), ("sweep-loxo", cmd_sweep_loxo, 4, 6),
                               ("sweep-certify", cmd_sweep_certify, 4, 5)):
        s = sub.add_parser(name, help="exhaustive labeled sweep")
        s.add_argument("--min-n", type=int, default=lo)
        s.add_argument("--max-n", type=int, default=hi)
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--format", choices=("json", "csv"), default="json")
        s.set_defaults(func=func)

    b = sub.add_parser("ball", help="orbit distances inside a truncated extension graph")
    b.add_argument("source")
    b.add_argument("--element", help="word; defaults to the certified element")
    b.add_argument("--base", help="base vertex; defaults to the certificate's path start")
    b.add_argument("--radius", "-L", type=int, default=2)
    b.add_argument("--n-max", type=int, default=3)
    b.add_argument("--cap", type=int, default=extension.DEFAULT_CAP)
    b.add_argument("--format", choices=("table", "json", "csv"), default="table")
    b.set_defaults(func=cmd_ball)

    f = sub.add_parser("family", help="print a family graph")
    f.add_argument("name", choices=("lambda", "gamma"))
    f.add_argument("n", type=int)
    f.add_argument("--format", choices=("edges", "json", "graph6"), default="edges")
    f.set_defaults(func=cmd_family)

    r = sub.add_parser("reduce", help="normal form, support and cyclic core of a word")
    r.add_argument("source")
    r.add_argument("word")
    r.add_argument("--equals", help="second word to compare against")
    r.add_argument("--format", choices=("text", "json"), default="text")
    r.set_defaults(func=cmd_reduce)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # anything else is a bug
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
