"""Command-line entry point: ``sepwidth <command> [flags]``.

Exit status: 0 success, 1 a verified property failed (an inequality breach,
a failed audit step, a broken contract), 2 usage, parse or I/O errors,
3 an input beyond a capability cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .audit import audit_constants, audit_refinement
from .clouds import STRONG, CloudParams, check_cloud, trim_to_strongly_tame
from .dichotomy import CLOUD, tame_cloud_or_skewed, witness_to_dict
from .errors import CapabilityError, ContractError, GraphValidationError, ParseError
from .experiment import ratio_experiment, report_to_csv, report_to_svg
from .generators import atlas_graphs, generate, parse_family
from .graph import Graph, format_edge_list, parse_edge_list
from .rational import format_rational, parse_rational
from .tangles import tangle_number_exact
from .width import min_balanced_separation, separation_number_exact, treewidth_exact

COMMANDS = ("tw", "sn", "tn", "minsep", "cloud", "pipeline", "gen", "experiment", "audit")
FORMATS = ("json", "csv", "text")

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAPABILITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sepwidth", description="Exact separation number and treewidth tools.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--in", dest="inp", help="edge-list file ('-' for stdin)")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--w", help="terminal set, comma separated")
    p.add_argument("--s", help="size parameter s as p/q or an integer")
    p.add_argument("--eps", help="eps as p/q")
    p.add_argument("--rounds", type=int, default=8)
    p.add_argument("--nmax", type=int, help="experiment: all connected graphs up to this size")
    p.add_argument("--families", help="comma separated family specs, e.g. grid:3x3,gnp:10:1/2")
    return p


# -- output ------------------------------------------------------------------

def _json_default(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"not serializable: {type(x).__name__}")


def _to_text(doc) -> str:
    if isinstance(doc, str):
        return doc if doc.endswith("\n") else doc + "\n"
    if isinstance(doc, dict) and "rows" in doc:
        lines = [f"{r['spec']}: n={r['n']} m={r['m']} sn={r['sn']} tw={r['tw']} "
                 f"tn={r['tn']} ratio={r['ratio']}" + (f" ({r['error']})" if r["error"] else "")
                 for r in doc["rows"]]
        lines.append(f"max ratio {doc['max_ratio']}, {len(doc['violations'])} violations")
        lines.extend(f"VIOLATION {v['spec']}: {v['violation']}" for v in doc["violations"])
        lines.append(doc["note"])
        return "\n".join(lines) + "\n"
    if isinstance(doc, dict) and "steps" in doc:
        lines = [f"{doc['title']}: {'PASS' if doc['overall'] else 'FAIL'}"]
        for s in doc["steps"]:
            lines.append(f"  [{'pass' if s['pass'] else 'FAIL'}] {s['name']}: {s['claim']}")
        lines.append(doc["note"])
        return "\n".join(lines) + "\n"
    return "".join(
        f"{k}: {json.dumps(doc[k], sort_keys=True, default=_json_default)}\n" for k in sorted(doc)
    )


def render(doc, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2, default=_json_default) + "\n"
    if fmt == "csv":
        if not (isinstance(doc, dict) and "rows" in doc):
            raise UsageError("csv output is only available for experiment reports")
        return report_to_csv(doc)
    if fmt == "text":
        return _to_text(doc)
    raise UsageError(f"unknown format {fmt!r}")


def emit_report(doc, fmt: str, path=None) -> None:
    """Write ``doc`` as json, csv or text; same doc, same bytes."""
    data = render(doc, fmt)
    if path is None or str(path) == "-":
        sys.stdout.write(data)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


# -- commands ------------------------------------------------------------------

def _read_graph(args) -> Graph:
    if not args.inp:
        raise UsageError(f"{args.command} needs --in")
    try:
        text = sys.stdin.read() if args.inp == "-" else Path(args.inp).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.inp}: {exc}") from exc
    return parse_edge_list(text)


def _terminals(args, G: Graph) -> list[int]:
    if not args.w:
        raise UsageError(f"{args.command} needs --w")
    try:
        W = sorted({int(x) for x in args.w.split(",") if x.strip()})
    except ValueError as exc:
        raise UsageError(f"bad --w list {args.w!r}") from exc
    if not W or any(not 0 <= w < G.n for w in W):
        raise UsageError(f"--w ids must lie in 0..{G.n - 1}")
    return W


def _params(args) -> tuple[Fraction, Fraction]:
    if args.s is None or args.eps is None:
        raise UsageError(f"{args.command} needs --s and --eps")
    s, eps = parse_rational(args.s), parse_rational(args.eps)
    if not 0 < eps < 1:
        raise UsageError(f"--eps must lie in (0, 1), got {format_rational(eps)}")
    if s <= 0:
        raise UsageError("--s must be positive")
    return s, eps


def _sep_doc(sep) -> dict:
    return {"A": sorted(sep.A), "B": sorted(sep.B)}


def cmd_tw(args):
    r = treewidth_exact(_read_graph(args))
    return {"tw": r.value, "witness": list(r.witness), "exact": r.exact}, EXIT_OK


def cmd_sn(args):
    r = separation_number_exact(_read_graph(args))
    w = r.witness
    return {"sn": r.value, "witness": {"S": sorted(w["S"]), **_sep_doc(w["separation"])}}, EXIT_OK


def cmd_tn(args):
    return {"tn": tangle_number_exact(_read_graph(args))}, EXIT_OK


def cmd_minsep(args):
    k, sep = min_balanced_separation(_read_graph(args))
    return {"order": k, **_sep_doc(sep)}, EXIT_OK


def cmd_pipeline(args):
    G = _read_graph(args)
    W = _terminals(args, G)
    s, eps = _params(args)
    if not eps < Fraction(1, 2):
        raise UsageError("pipeline needs eps < 1/2")
    res = tame_cloud_or_skewed(G, W, s, eps)
    doc = witness_to_dict(res)
    doc["route"] = res.route
    return doc, EXIT_OK


def cmd_cloud(args):
    """Run the dichotomy at 5 eps; a cloud is then trimmed to a strongly
    (s, eps)-tame one."""
    G = _read_graph(args)
    W = _terminals(args, G)
    s, eps = _params(args)
    if not 5 * eps < Fraction(1, 2):
        raise UsageError("cloud needs 5*eps < 1/2")
    res = tame_cloud_or_skewed(G, W, s, 5 * eps)
    doc = witness_to_dict(res)
    doc["route"] = res.route
    if res.kind == CLOUD:
        trimmed = trim_to_strongly_tame(res.cloud, s, eps)
        rep = check_cloud(trimmed, CloudParams(s, eps, len(W)), STRONG)
        doc["components"] = {str(w): sorted(trimmed.comp[w]) for w in sorted(trimmed.W)}
        doc["edges"] = [list(e) for e in sorted(trimmed.edges)]
        doc["strongly_tame"] = bool(rep.holds)
        doc["params"] = {"s": format_rational(s), "eps": format_rational(eps)}
        if not rep.holds:
            return doc, EXIT_VIOLATION
    return doc, EXIT_OK


def cmd_gen(args):
    if not args.families or "," in args.families:
        raise UsageError("gen needs exactly one --families spec")
    G = generate(parse_family(args.families, args.seed))
    if (args.format or "text") == "text":
        return format_edge_list(G), EXIT_OK
    return {"n": G.n, "edges": [list(e) for e in G.sorted_edges()]}, EXIT_OK


def cmd_experiment(args):
    items = []
    if args.families:
        items.extend(parse_family(f, args.seed) for f in args.families.split(",") if f.strip())
    if args.nmax is not None:
        items.extend(atlas_graphs(args.nmax))
    if not items:
        raise UsageError("experiment needs --families and/or --nmax")
    report = ratio_experiment(items)
    return report, EXIT_VIOLATION if report["violations"] else EXIT_OK


def cmd_audit(args):
    if args.inp:
        G = _read_graph(args)
        a = separation_number_exact(G).value
        rep = audit_refinement(G, G.vertices, G.vertices, a, args.rounds)
    else:
        rep = audit_constants()
    doc = rep.to_dict()
    return doc, EXIT_OK if rep.overall else EXIT_VIOLATION


HANDLERS = {
    "tw": cmd_tw, "sn": cmd_sn, "tn": cmd_tn, "minsep": cmd_minsep,
    "cloud": cmd_cloud, "pipeline": cmd_pipeline, "gen": cmd_gen,
    "experiment": cmd_experiment, "audit": cmd_audit,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        doc, status = HANDLERS[args.command](args)
        fmt = args.format or ("text" if isinstance(doc, str) else "json")
        emit_report(doc, fmt, args.out)
        if args.command == "experiment" and args.out and args.out != "-":
            svg = Path(args.out).with_suffix(".svg")
            if svg != Path(args.out):
                try:
                    svg.write_text(report_to_svg(doc))
                except OSError as exc:
                    raise UsageError(f"cannot write {svg}: {exc}") from exc
        return status
    except UsageError as exc:
        print(f"sepwidth: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, GraphValidationError) as exc:
        print(f"sepwidth: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapabilityError as exc:
        print(f"sepwidth: capability: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except ContractError as exc:
        print(f"sepwidth: contract violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except ValueError as exc:
        print(f"sepwidth: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
