"""``cayley-spectra`` command line: analyze, scan, gen, verify, corpus.

Exit codes: 0 ok, 1 a check failed, 2 parse error, 3 validation error,
4 instance too large, 5 no valid generating set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import corpus
from .analysis import CayleyAnalyzer
from .cheeger import DEFAULT_EXACT_CAP
from .exceptions import NoValidSet, OrderCapExceeded, ParseError, TooLarge, ValidationError
from .groups import parse_family
from .io import parse_set_spec, read_group_table, read_set_file
from .sampling import REQUIREMENTS, gen
from .spectra import DEFAULT_TOL

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_VALIDATION, EXIT_TOO_LARGE, EXIT_NO_SET = range(6)

log = logging.getLogger("cayley_spectra")


def _add_group_args(p, required=True):
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--family", help="e.g. cyclic:5, dihedral:4, symmetric:3, quaternion8, product:cyclic:2+cyclic:3")
    src.add_argument("--group-file", type=Path, help="multiplication table file")


def _add_common(p):
    p.add_argument("--kind", choices=("cayley_sum", "cayley"), default="cayley_sum")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-exact-n", type=int, default=DEFAULT_EXACT_CAP)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", type=Path)
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cayley-spectra", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one instance")
    _add_group_args(p)
    s = p.add_mutually_exclusive_group(required=True)
    s.add_argument("--set", help="comma separated element indices; -k means the inverse of k")
    s.add_argument("--set-file", type=Path)
    p.add_argument("--epsilon", help="expansion constant override, e.g. 1/3")
    _add_common(p)

    p = sub.add_parser("scan", help="CSV sweep over a family range")
    p.add_argument("--family", required=True, help="e.g. cyclic:3..15; several separated by ';'")
    p.add_argument("--set", help="fixed set for every family member")
    p.add_argument("--d", type=int, default=2, help="random set size when --set is absent")
    p.add_argument("--count", type=int, default=1, help="random sets per family member")
    _add_common(p)

    p = sub.add_parser("gen", help="sample a generating set")
    _add_group_args(p)
    p.add_argument("--d", type=int, required=True, dest="d_target")
    p.add_argument("--require", action="append", default=[], choices=REQUIREMENTS)
    p.add_argument("--attempts", type=int, default=100)
    _add_common(p)

    p = sub.add_parser("verify", help="run every check over a manifest")
    p.add_argument("manifest", type=Path, nargs="?", help="defaults to the built-in corpus")
    _add_common(p)

    p = sub.add_parser("corpus", help="write the default corpus manifest")
    _add_common(p)
    return parser


def _group(args):
    if args.family:
        return parse_family(args.family)
    try:
        return read_group_table(args.group_file)
    except OSError as exc:
        raise ParseError(f"cannot read {args.group_file}: {exc}") from exc


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _flatten(d: dict, prefix="") -> dict:
    flat = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            flat.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            flat[key] = json.dumps(v, sort_keys=True)
        else:
            flat[key] = "" if v is None else v
    return flat


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    cols = list(rows[0]) if rows else []
    w = csv.DictWriter(buf, cols, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def cmd_analyze(args) -> int:
    group = _group(args)
    try:
        members = read_set_file(args.set_file, group) if args.set_file else parse_set_spec(args.set, group)
    except OSError as exc:
        raise ParseError(f"cannot read {args.set_file}: {exc}") from exc
    an = CayleyAnalyzer(kind=args.kind, tol=args.tol, max_exact_n=args.max_exact_n, epsilon=args.epsilon)
    an.fit(group, members)
    descriptor = {"source": args.family or f"file:{group.name}", "seed": args.seed}
    report = an.report(descriptor)
    if args.format == "json":
        text = report.to_json() + "\n"
    else:
        summary = {k: v for k, v in report.to_dict().items() if k != "checks"}
        checks = [{**c, "witness": json.dumps(c["witness"], sort_keys=True)} for c in report.checks]
        text = _csv([_flatten(summary)]) + "\n" + _csv([_flatten(c) for c in checks])
    _emit(text, args.out)
    return EXIT_FAIL if report.failures else EXIT_OK


def cmd_scan(args) -> int:
    families = corpus.expand_family_range(args.family)
    text = corpus.scan(families, set_spec=args.set, random_d=args.d, count=args.count, kind=args.kind,
                       seed=args.seed, max_exact_n=args.max_exact_n, tol=args.tol)
    _emit(text, args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    group = _group(args)
    members = gen(group, args.d_target, tuple(args.require), seed=args.seed, attempts=args.attempts)
    if args.format == "json":
        text = json.dumps({"group": group.name, "set": list(members), "seed": args.seed}) + "\n"
    else:
        text = ",".join(map(str, members)) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    instances = corpus.load_manifest(args.manifest) if args.manifest else corpus.default_corpus(args.seed)
    summary, code = corpus.verify(instances, args.max_exact_n, args.tol)
    if args.format == "json":
        text = json.dumps(summary, indent=1, sort_keys=True) + "\n"
    else:
        rows = [{"check": name, **counts} for name, counts in summary["checks"].items()]
        text = _csv(rows)
    _emit(text, args.out)
    for f in summary["failures"]:
        log.error("FAIL %s on %s", f["check"], f["instance_id"])
    for e in summary["errors"]:
        log.error("ERROR %s: %s", e["id"], e["error"])
    return code


def cmd_corpus(args) -> int:
    instances = corpus.default_corpus(args.seed)
    _emit(corpus.save_manifest(instances, seed=args.seed), args.out)
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "scan": cmd_scan, "gen": cmd_gen, "verify": cmd_verify, "corpus": cmd_corpus}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.handlers = [handler]
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    log.propagate = False
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_PARSE
    except ValidationError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_VALIDATION
    except (TooLarge, OrderCapExceeded) as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_TOO_LARGE
    except NoValidSet as exc:
        log.error("NoValidSet: %s", exc)
        return EXIT_NO_SET


if __name__ == "__main__":
    sys.exit(main())
