"""Instance corpora, manifests, corpus verification and family scans."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import random
import re
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .analysis import SCHEMA_VERSION, CayleyAnalyzer
from .bounds import FAIL, PASS, VACUOUS, main_gap
from .exceptions import CayleySpectraError, NoValidSet, ParseError
from .groups import parse_family
from .io import parse_set_spec
from .sampling import enumerate_sets, gen

log = logging.getLogger(__name__)

THREADS_ENV = "CAYLEY_SPECTRA_THREADS"

DEFAULT_FAMILIES = (
    [f"cyclic:{n}" for n in range(3, 17)]
    + [f"dihedral:{n}" for n in range(3, 9)]
    + ["symmetric:3", "symmetric:4", "quaternion8"]
    + [f"product:cyclic:2+cyclic:{n}" for n in range(2, 9)]
)

SCAN_COLUMNS = (
    "instance_id", "family", "n", "d", "kind", "set", "h", "edge_h", "t_2", "t_n", "main_bound", "margin",
    "tightness_ratio", "bipartite", "main_verdict", "upper_gap_verdict", "bis19_verdict", "sharp_verdict", "error",
)


@dataclass
class Instance:
    group: str
    set: tuple[int, ...]
    kind: str
    expected: dict = field(default_factory=dict)
    id: str | None = None

    def __post_init__(self):
        self.set = tuple(int(x) for x in self.set)
        if self.id is None:
            self.id = f"{self.kind}/{self.group}/{'.'.join(map(str, self.set))}"

    def to_dict(self) -> dict:
        d = {"id": self.id, "group": self.group, "set": list(self.set), "kind": self.kind}
        if self.expected:
            d["expected"] = self.expected
        return d


def worker_count() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return max(1, min(8, os.cpu_count() or 1))


def default_corpus(seed: int = 0, max_d: int = 4, random_sets: int = 5) -> list[Instance]:
    """Every conjugation-closed symmetric generating set with ``d <= max_d`` of each
    default family, as both Cayley and Cayley sum graphs, plus seeded random sets
    and the near-bipartite instances."""
    rng = random.Random(seed)
    out: list[Instance] = []
    for fam in DEFAULT_FAMILIES:
        group = parse_family(fam)
        seen = set()
        for s in enumerate_sets(group, max_d, ("conjugation_closed",)):
            for kind in ("cayley_sum", "cayley"):
                out.append(Instance(fam, s, kind))
                seen.add((kind, s))
        for kind in ("cayley_sum", "cayley"):
            require = ("conjugation_closed",) if kind == "cayley_sum" else ()
            for _ in range(random_sets):
                d_target = rng.randint(2, min(group.order - 1, 8))
                try:
                    s = gen(group, d_target, require, seed=rng.randrange(2**31), attempts=50)
                except NoValidSet:
                    continue
                if (kind, s) not in seen:
                    seen.add((kind, s))
                    out.append(Instance(fam, s, kind))
    ids = {i.id for i in out}
    out += [i for i in near_bipartite_instances() if i.id not in ids]
    return out


def near_bipartite_instances() -> list[Instance]:
    """Bipartite sum graphs on ``Z/n`` (``S = {1, -1}``, ``n = 0 mod 4``) perturbed by the
    central involution ``n/2``, which lies in the only index-two subgroup."""
    out = []
    for n in (4, 8, 12, 16):
        out.append(Instance(f"cyclic:{n}", (1, n - 1), "cayley_sum"))
        out.append(Instance(f"cyclic:{n}", tuple(sorted({1, n - 1, n // 2})), "cayley_sum"))
    return out


def save_manifest(instances, path=None, seed: int = 0) -> str:
    text = json.dumps({"schema_version": SCHEMA_VERSION, "seed": seed,
                       "instances": [i.to_dict() for i in instances]}, indent=1, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def load_manifest(path) -> list[Instance]:
    try:
        data = json.loads(Path(path).read_text())
        items = data["instances"] if isinstance(data, dict) else data
        return [Instance(i["group"], i["set"], i["kind"], i.get("expected", {}), i.get("id")) for i in items]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad manifest {path}: {exc}") from exc


def _fixture_check(an: CayleyAnalyzer, expected: dict) -> dict:
    actual = {
        "h": str(an.vertex_cheeger_.value),
        "edge_h": str(an.edge_cheeger_.value),
        "bipartite": bool(an.report().graphs["bipartite"]),
        "vertex_witness": list(an.vertex_cheeger_.subset),
    }
    mismatches = {}
    for key, want in expected.items():
        got = actual.get(key)
        same = Fraction(str(want)) == Fraction(got) if key in ("h", "edge_h") else want == got
        if not same:
            mismatches[key] = {"expected": want, "actual": got}
    return {"check": "fixture", "instance_id": an.instance_id_, "verdict": FAIL if mismatches else PASS,
            "hypotheses_held": True, "lhs": None, "rhs": None, "margin": None,
            "witness": mismatches or None}


def run_instance(inst: Instance, max_exact_n: int = 24, tol: float = 1e-10) -> dict:
    """Analyse one instance; errors are captured, not raised."""
    try:
        an = CayleyAnalyzer(kind=inst.kind, tol=tol, max_exact_n=max_exact_n).fit(inst.group, inst.set, inst.id)
    except (CayleySpectraError, ValueError) as exc:
        return {"id": inst.id, "error": f"{type(exc).__name__}: {exc}", "checks": [], "report": None}
    report = an.report()
    checks = list(report.checks)
    if inst.expected:
        checks.append(_fixture_check(an, inst.expected))
    return {"id": inst.id, "error": None, "checks": checks, "report": report}


def run_corpus(instances, max_exact_n: int = 24, tol: float = 1e-10, workers: int | None = None) -> list[dict]:
    """Results in input order regardless of the worker count."""
    instances = list(instances)
    workers = workers or worker_count()
    if workers == 1 or len(instances) < 2:
        return [run_instance(i, max_exact_n, tol) for i in instances]
    # compile the enumeration kernel once before fanning out
    run_instance(instances[0], max_exact_n, tol)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: run_instance(i, max_exact_n, tol), instances))


def summarize(results) -> dict:
    per_check: dict[str, Counter] = {}
    failures = []
    errors = []
    for res in results:
        if res["error"]:
            errors.append({"id": res["id"], "error": res["error"]})
        for c in res["checks"]:
            per_check.setdefault(c["check"], Counter())[c["verdict"]] += 1
            if c["verdict"] == FAIL:
                failures.append(c)
    totals = Counter()
    for counts in per_check.values():
        totals.update(counts)
    return {
        "schema_version": SCHEMA_VERSION,
        "instances": len(results),
        "checks": {name: {v: per_check[name].get(v, 0) for v in (PASS, FAIL, VACUOUS)} for name in sorted(per_check)},
        "totals": {v: totals.get(v, 0) for v in (PASS, FAIL, VACUOUS)},
        "errors": errors,
        "failures": failures,
    }


def verify(instances, max_exact_n: int = 24, tol: float = 1e-10, workers: int | None = None) -> tuple[dict, int]:
    """Run every check over ``instances``; exit code 0 iff nothing failed or errored."""
    instances = list(instances)
    if not instances:
        log.warning("empty manifest: no checks were run")
    results = run_corpus(instances, max_exact_n, tol, workers)
    summary = summarize(results)
    code = 1 if summary["totals"][FAIL] or summary["errors"] else 0
    return summary, code


# -- scan ---------------------------------------------------------------------


_RANGE = re.compile(r"^(?P<name>[a-z0-9]+):(?P<lo>\d+)\.\.(?P<hi>\d+)$")


def expand_family_range(spec: str) -> list[str]:
    """``cyclic:3..15`` -> ``["cyclic:3", ..., "cyclic:15"]``; other specs pass through."""
    out = []
    for part in spec.split(";"):
        part = part.strip()
        m = _RANGE.match(part)
        if m:
            lo, hi = int(m["lo"]), int(m["hi"])
            if lo > hi:
                raise ParseError(f"empty range {part!r}")
            out += [f"{m['name']}:{k}" for k in range(lo, hi + 1)]
        elif part:
            out.append(part)
    return out


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def scan_instances(families, set_spec: str | None = None, random_d: int | None = None, count: int = 1,
                   kind: str = "cayley_sum", seed: int = 0) -> list[tuple[Instance | None, str, str | None]]:
    """Expand a family sweep into instances; entries that cannot be built carry an error."""
    rng = random.Random(seed)
    out = []
    for fam in families:
        try:
            group = parse_family(fam)
        except CayleySpectraError as exc:
            out.append((None, fam, f"{type(exc).__name__}: {exc}"))
            continue
        if set_spec is not None:
            try:
                out.append((Instance(fam, parse_set_spec(set_spec, group), kind), fam, None))
            except CayleySpectraError as exc:
                out.append((None, fam, f"{type(exc).__name__}: {exc}"))
            continue
        require = ("conjugation_closed",) if kind == "cayley_sum" else ()
        for _ in range(count):
            try:
                s = gen(group, random_d, require, seed=rng.randrange(2**31), attempts=100)
                out.append((Instance(fam, s, kind), fam, None))
            except NoValidSet as exc:
                out.append((None, fam, f"NoValidSet: {exc}"))
    return out


def scan(families, set_spec=None, random_d=None, count=1, kind="cayley_sum", seed=0, max_exact_n=24,
         tol=1e-10, workers=None) -> str:
    """CSV text with one row per instance, columns ``SCAN_COLUMNS``."""
    planned = scan_instances(families, set_spec, random_d, count, kind, seed)
    runnable = [inst for inst, _, err in planned if inst is not None]
    results = iter(run_corpus(runnable, max_exact_n, tol, workers))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCAN_COLUMNS)
    for inst, fam, err in planned:
        row = dict.fromkeys(SCAN_COLUMNS)
        row["family"] = fam
        if inst is None:
            row["error"] = err
        else:
            res = next(results)
            row.update(instance_id=inst.id, kind=inst.kind, set=" ".join(map(str, inst.set)))
            if res["error"]:
                row["error"] = res["error"]
            else:
                rep = res["report"]
                h = Fraction(rep.cheeger["h"])
                d = rep.graphs["d"]
                t_n = rep.spectra["t_n"]
                gap = main_gap(h, d)
                bound = float(-1 + gap)
                row.update(n=rep.graphs["n"], d=d, h=str(h), edge_h=rep.cheeger["edge_h"], t_2=rep.spectra["t_2"],
                           t_n=t_n, main_bound=bound, margin=t_n - bound, bipartite=rep.graphs["bipartite"],
                           main_verdict=rep.verdict("theorem_main"), upper_gap_verdict=rep.verdict("upper_gap"),
                           bis19_verdict=rep.verdict("bis19"), sharp_verdict=rep.verdict("sharp"))
                if not rep.graphs["bipartite"] and gap > 0:
                    row["tightness_ratio"] = (t_n + 1) / float(gap)
        writer.writerow([_fmt(row[c]) for c in SCAN_COLUMNS])
    return buf.getvalue()
