"""Command-line front end: freeness checks, curvature scans, fixture runs,
catalog enumeration and table verification.

Input files are JSON documents validated against the schema files shipped
in biq/schemas (weights.schema.json, metric.schema.json).  All randomness
flows from the single seed in the run configuration, which is recorded in
every report header, and output ordering is canonical, so identical
invocations produce byte-identical reports.  Reports are written through a
temporary file and renamed, never partially.

Exit codes: 0 success (for `free`: the action is free), 1 a check failed
(for `free`: not free), 2 input or usage error.

The environment variable BIQ_THREADS caps worker parallelism; the current
implementation evaluates sequentially, which trivially respects any cap,
and records the setting in the report header.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from importlib import resources

import jsonschema
import numpy as np

from . import catalog, detectors
from .algebra import AlgebraError, GroupFamily, random_group_element, root_decomposition
from .biquotient import from_torus_weights
from .freeness import TorusActionWeights, is_free_bruteforce, is_free_exact
from .metric import build_metric

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    structural_tol: float = 1e-9
    flatness_tol: float = 1e-8
    points: int = 5
    planes: int = 2000
    restarts: int = 4
    output: str | None = None
    fmt: str = "json"

    def header(self):
        return {
            "seed": self.seed,
            "tolerances": {"structural": self.structural_tol,
                           "flatness": self.flatness_tol},
            "budgets": {"points": self.points, "planes": self.planes,
                        "restarts": self.restarts},
            "threads_cap": os.environ.get("BIQ_THREADS", "unset"),
            "schema_version": SCHEMA_VERSION,
        }


class InputError(Exception):
    """Malformed input file or arguments (exit code 2)."""


def _load_schema(name):
    with resources.files("biq.schemas").joinpath(name).open() as fh:
        return json.load(fh)


def _load_json(path, schema_name):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    schema = _load_schema(schema_name)
    validator = jsonschema.Draft7Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        lines = [
            f"{path}: field {'/'.join(str(p) for p in err.absolute_path) or '<root>'}: {err.message}"
            for err in errors
        ]
        raise InputError("\n".join(lines))
    return doc


def load_weights(path) -> TorusActionWeights:
    doc = _load_json(path, "weights.schema.json")
    fam = GroupFamily(doc["group"], doc["n"])
    try:
        return TorusActionWeights(
            group=fam,
            k=doc["k"],
            w_left=tuple(map(tuple, doc["W_L"])),
            w_right=tuple(map(tuple, doc["W_R"])),
            mode=doc.get("mode", "strict"),
        )
    except (AlgebraError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_metric(path, dec):
    doc = _load_json(path, "metric.schema.json")
    try:
        return build_metric(dec, doc.get("t_block"), doc.get("alphas"))
    except (AlgebraError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _write_report(text: str, output: str | None):
    if output is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    directory = os.path.dirname(os.path.abspath(output))
    tmp = os.path.join(directory, f".{os.path.basename(output)}.tmp")
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, output)


def _emit(report, cfg: RunConfig, csv_rows=None):
    if cfg.fmt == "json":
        _write_report(json.dumps(report, indent=2, sort_keys=True), cfg.output)
    elif cfg.fmt == "jsonl":
        lines = [json.dumps(r, sort_keys=True) for r in csv_rows or []]
        _write_report("\n".join(lines), cfg.output)
    else:
        rows = csv_rows or []
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=sorted(rows[0]))
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
        _write_report(buf.getvalue(), cfg.output)


def _witness_dict(witness):
    if witness is None:
        return None
    return {
        "perm": list(witness.perm),
        "signs": list(witness.signs),
        "element_numerators": list(witness.numerators),
        "element_denominator": witness.denominator,
        "invariant_factors": list(witness.invariant_factors),
        "kind": witness.kind,
    }


def cmd_free(args) -> int:
    cfg = _config(args)
    weights = load_weights(args.weights)
    verdict = is_free_exact(weights, args.mode)
    report = {
        "config": cfg.header(),
        "command": "free",
        "group": str(weights.group),
        "k": weights.k,
        "mode": args.mode,
        "free": verdict.free,
        "odd_signed_only": verdict.odd_signed_only,
        "witness": _witness_dict(verdict.witness),
        "note": verdict.note,
    }
    if args.oracle:
        oracle = is_free_bruteforce(weights, args.oracle, args.mode)
        report["oracle"] = {
            "max_order": args.oracle,
            "violation_found": not oracle.free,
            "witness": _witness_dict(oracle.witness),
            "note": oracle.note,
        }
        if verdict.free and not oracle.free:
            report["oracle"]["contradiction"] = True
    _emit(report, cfg)
    return 0 if verdict.free else 1


def cmd_scan(args) -> int:
    cfg = _config(args)
    if cfg.planes < 1 or cfg.points < 1:
        raise InputError("budgets must be at least 1")
    weights = load_weights(args.action)
    verdict = is_free_exact(weights)
    if not verdict.free:
        report = {
            "config": cfg.header(),
            "command": "scan",
            "error": "action is not free; refusing to scan",
            "witness": _witness_dict(verdict.witness),
        }
        _emit(report, cfg)
        return 1
    act = from_torus_weights(weights)
    dec = root_decomposition(weights.group)
    P = load_metric(args.metric, dec) if args.metric else build_metric(dec)
    rng = np.random.default_rng(cfg.seed)

    points = [("identity", None)]
    points += [(f"random[{i}]", None) for i in range(cfg.points - 1)]
    rows = []
    global_min = None
    from .algebra import identity as group_identity

    for name, _ in points:
        g = group_identity(weights.group) if name == "identity" else \
            random_group_element(weights.group, rng)
        best = detectors.numeric_flat_search(
            act, g, P, budget=cfg.planes, rng=rng,
            local_restarts=cfg.restarts,
        )
        cert = _auto_certificate(act, g, P, rng)
        rows.append({
            "point": name,
            "min_sec_quotient": best.sec_quotient,
            "sec_G": best.sec_g,
            "oneill_term": best.oneill_term,
            "numeric_certificate": best.certificate,
            "flat_certificate": cert.criterion if cert else "",
        })
        if global_min is None or best.sec_quotient < global_min:
            global_min = best.sec_quotient
    report = {
        "config": cfg.header(),
        "command": "scan",
        "group": str(weights.group),
        "points": rows,
        "global_min": global_min,
        "flat_planes_found": sum(
            1 for r in rows
            if r["numeric_certificate"] == "numeric" or r["flat_certificate"]
        ),
    }
    _emit(report, cfg, csv_rows=rows)
    return 0


def _auto_certificate(act, g, P, rng):
    """Try the commuting-subspaces criterion on every pair of root spaces
    whose bracket vanishes."""
    from .algebra import bracket, root_subspace

    dec = P.dec
    nroots = len(dec.roots)
    for i in range(nroots):
        for j in range(i + 1, nroots):
            ri, rj = dec.roots[i], dec.roots[j]
            if any(
                np.abs(bracket(a, b).mat).max() > 1e-12
                for a in (ri.x, ri.y)
                for b in (rj.x, rj.y)
            ):
                continue
            cert = detectors.check_N2(
                P, root_subspace(dec, i), root_subspace(dec, j), act, g, rng=rng
            )
            if cert is not None:
                return cert
    return None


def cmd_fixtures(args) -> int:
    cfg = _config(args)
    runner = detectors.FIXTURES.get(args.name)
    if runner is None:
        raise InputError(
            f"unknown fixture {args.name!r}; choose from "
            + ", ".join(sorted(detectors.FIXTURES))
        )
    result = runner(seed=cfg.seed)
    report = {
        "config": cfg.header(),
        "command": "fixtures",
        "fixture": args.name,
        "passed": result["passed"],
        "summary": {
            k: v for k, v in result.items()
            if isinstance(v, (int, float, str, bool))
        },
    }
    _emit(report, cfg)
    return 0 if result["passed"] else 1


def cmd_catalog(args) -> int:
    cfg = _config(args)
    if args.what == "enumerate-eschenburg":
        records = [r.to_dict() for r in catalog.enumerate_eschenburg(args.bound)]
        report = {"config": cfg.header(), "command": "catalog",
                  "records": records, "count": len(records)}
        _emit(report, cfg, csv_rows=_flatten_records(records))
        return 0
    if args.what == "enumerate-bazaikin":
        records = [r.to_dict() for r in catalog.enumerate_bazaikin(args.bound)]
        report = {"config": cfg.header(), "command": "catalog",
                  "records": records, "count": len(records)}
        _emit(report, cfg, csv_rows=_flatten_records(records))
        return 0
    # verify-tables
    rows = []
    ok = True
    for table in ("A", "B"):
        for entry in catalog.table_entries(table):
            rep = catalog.verify_entry(entry)
            ok &= rep["passed"]
            rows.append({
                "row": rep["row"], "table": rep["table"], "group": rep["group"],
                "verified": rep["verified"], "passed": rep["passed"],
                "checks": "; ".join(
                    f"{name}={'ok' if okk else 'FAIL'}" for name, okk, _ in rep["checks"]
                ),
            })
    report = {"config": cfg.header(), "command": "catalog",
              "rows": rows, "all_passed": ok}
    _emit(report, cfg, csv_rows=rows)
    return 0 if ok else 1


def _flatten_records(records):
    out = []
    for r in records:
        flat = {}
        for k, v in r.items():
            flat[k] = " ".join(map(str, v)) if isinstance(v, list) else v
        out.append(flat)
    return out


def _config(args) -> RunConfig:
    return RunConfig(
        seed=args.seed,
        structural_tol=args.tol_structural,
        flatness_tol=args.tol_flat,
        points=getattr(args, "points", 5),
        planes=getattr(args, "planes", 2000),
        restarts=getattr(args, "restarts", 4),
        output=args.output,
        fmt=args.format,
    )


def _add_common(p, budgets=False):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol-structural", type=float, default=1e-9)
    p.add_argument("--tol-flat", type=float, default=1e-8)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--format", choices=("json", "csv", "jsonl"), default="json")
    if budgets:
        p.add_argument("--points", type=int, default=5)
        p.add_argument("--planes", type=int, default=2000)
        p.add_argument("--restarts", type=int, default=4)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="biq",
        description="Freeness, curvature and classification workbench for "
                    "two-sided quotients of compact matrix groups",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("free", help="exact freeness verdict for weight matrices")
    p.add_argument("weights", help="weights JSON file")
    p.add_argument("--mode", choices=("strict", "mod-center"), default="strict")
    p.add_argument("--oracle", type=int, default=0, metavar="MAX_ORDER",
                   help="cross-check with the brute-force falsifier")
    _add_common(p)
    p.set_defaults(func=cmd_free)

    p = sub.add_parser("scan", help="curvature scan over points and planes")
    p.add_argument("--action", required=True, help="weights JSON file")
    p.add_argument("--metric", default=None, help="metric JSON file (default: bi-invariant)")
    _add_common(p, budgets=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("fixtures", help="run a worked-example fixture")
    p.add_argument("name", help="example1 | example2 | example3 | example4")
    _add_common(p)
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("catalog", help="enumerations and table verification")
    p.add_argument("what", choices=("enumerate-eschenburg", "enumerate-bazaikin",
                                    "verify-tables"))
    p.add_argument("--bound", type=int, default=2)
    _add_common(p)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
