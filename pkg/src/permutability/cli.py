"""Command-line interface.

Commands:
  analyze <spec>                      structural summary of one group
  classify <spec>                     class verdicts (both routes)
  predicate <spec> --subgroup W --pred P [--expect B]
  verify <spec|manifest|standard> --check IDS
  catalog <manifest|standard>         full catalog run

Exit codes: 0 all selected checks pass and expected values match, 1 a
counterexample or expectation mismatch was found, 2 usage or build errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .catalog import (
    CatalogManifest,
    entry_report,
    parse_group_spec,
    parse_manifest,
    run_catalog,
    standard_catalog,
)
from .classes import classify
from .errors import GroupError
from .lattice import all_subgroups, generated_subgroup
from .predicates import PREDICATES, evaluate_predicate
from .series import (
    fitting,
    frattini,
    hypercenter,
    nilpotent_residual,
    order_p_part,
    pi,
)
from .specs import build_from_spec, resolve_subgroup_words
from .tables import DEFAULT_ORDER_CAP
from .theorems import THEOREM_IDS, report_to_dict, run_check

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_ERROR = 2


def _emit(doc: dict, json_path: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if json_path:
        Path(json_path).write_text(text)
    sys.stdout.write(text)


def _load_spec(path: str):
    return parse_group_spec(Path(path).read_text())


def _subgroup_record(sub) -> dict:
    return {"order": sub.order, "members": list(sub.members)}


def _serialize_verdict(v) -> dict:
    out = {"predicate": v.predicate, "verdict": v.verdict,
           "subject": _subgroup_record(v.subject)}
    if v.witness is not None:
        out["witness"] = _subgroup_record(v.witness)
    if v.refutation is not None:
        out["refutation"] = [_subgroup_record(s) for s in v.refutation]
    return out


def _cap(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("PERMUTABILITY_CAP")
    return int(env) if env else DEFAULT_ORDER_CAP


def _cmd_analyze(args) -> int:
    spec = _load_spec(args.spec)
    group = build_from_spec(spec, cap=_cap(args))
    lat = all_subgroups(group)
    doc = {
        "tool_version": __version__,
        "group": {
            "name": group.name,
            "order": group.order,
            "pi": sorted(pi(group)),
            "p_parts": {str(p): order_p_part(group, p) for p in sorted(pi(group))},
            "subgroup_count": len(lat.masks),
            "nilpotent_residual": list(nilpotent_residual(group).members),
            "fitting": list(fitting(group).members),
            "frattini": list(frattini(group).members),
            "hypercenter": list(hypercenter(group).members),
            "class_verdicts": classify(group),
        },
    }
    _emit(doc, args.json)
    return EXIT_OK


def _cmd_classify(args) -> int:
    spec = _load_spec(args.spec)
    group = build_from_spec(spec, cap=_cap(args))
    verdicts = classify(group)
    disagreements = [
        cid for cid, v in verdicts.items()
        if v.get("characterization") is not None
        and v["characterization"] != v["bruteforce"]
    ]
    doc = {
        "tool_version": __version__,
        "group": {"name": group.name, "order": group.order,
                  "pi": sorted(pi(group)), "class_verdicts": verdicts},
        "class_route_disagreements": disagreements,
    }
    _emit(doc, args.json)
    return EXIT_OK if not disagreements else EXIT_COUNTEREXAMPLE


def _cmd_predicate(args) -> int:
    spec = _load_spec(args.spec)
    group = build_from_spec(spec, cap=_cap(args))
    ids = resolve_subgroup_words(spec, group, args.subgroup)
    subject = generated_subgroup(group, ids)
    verdict = evaluate_predicate(args.pred, group, subject)
    doc = {
        "tool_version": __version__,
        "group": {"name": group.name, "order": group.order},
        "verdict": _serialize_verdict(verdict),
    }
    if args.expect is not None:
        expected = args.expect == "true"
        doc["expected"] = expected
        doc["match"] = expected == verdict.verdict
    _emit(doc, args.json)
    if args.expect is not None and not doc["match"]:
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def _checks_arg(args) -> tuple[str, ...]:
    if not args.check or args.check == ["all"]:
        return THEOREM_IDS
    for c in args.check:
        if c not in THEOREM_IDS:
            raise GroupError(f"unknown theorem id {c!r}; known: {', '.join(THEOREM_IDS)}")
    return tuple(args.check)


def _manifest_from_target(target: str) -> CatalogManifest | None:
    if target == "standard":
        return standard_catalog()
    path = Path(target)
    doc = json.loads(path.read_text())
    if "entries" in doc:
        return parse_manifest(path.read_text(), base_dir=path.parent)
    return None


def _cmd_verify(args) -> int:
    checks = _checks_arg(args)
    manifest = _manifest_from_target(args.target)
    if manifest is not None:
        report = run_catalog(manifest, checks=checks, jobs=args.jobs)
        _emit(report, args.json)
        return EXIT_OK if report["summary"]["pass"] else EXIT_COUNTEREXAMPLE
    spec = parse_group_spec(Path(args.target).read_text())
    group = build_from_spec(spec, cap=_cap(args))
    from .catalog import _direct_factors
    factors = _direct_factors(spec, group, _cap(args))
    reports = [run_check(group, cid, factors=factors) for cid in checks]
    failures = [r for r in reports if r.applicable and not r.passed]
    doc = {
        "tool_version": __version__,
        "group": {"name": group.name, "order": group.order,
                  "pi": sorted(pi(group)), "class_verdicts": classify(group)},
        "checks": [report_to_dict(r) for r in reports],
        "counterexamples": [
            {"theorem_id": r.theorem_id, "records": list(r.counterexamples)}
            for r in failures
        ],
    }
    _emit(doc, args.json)
    return EXIT_OK if not failures else EXIT_COUNTEREXAMPLE


def _cmd_catalog(args) -> int:
    manifest = _manifest_from_target(args.target)
    if manifest is None:
        raise GroupError(f"{args.target} is not a catalog manifest")
    checks = _checks_arg(args) if args.check else None
    report = run_catalog(manifest, checks=checks, jobs=args.jobs)
    _emit(report, args.json)
    return EXIT_OK if report["summary"]["pass"] else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permutability",
        description="subgroup permutability predicates and theorem checks "
                    "on small finite groups")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--cap", type=int, default=None,
                       help=f"group order cap (default {DEFAULT_ORDER_CAP})")
        p.add_argument("--json", default=None, help="also write the report here")
        p.add_argument("--jobs", type=int, default=None,
                       help="worker processes for catalog runs")
        p.add_argument("--seed-sample", type=int, default=None,
                       help="associativity sample size for orders above 256")

    p = sub.add_parser("analyze", help="structural summary of one group")
    p.add_argument("spec")
    common(p)
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("classify", help="class verdicts by both routes")
    p.add_argument("spec")
    common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("predicate", help="evaluate one embedding predicate")
    p.add_argument("spec")
    p.add_argument("--subgroup", required=True,
                   help="comma-separated generator words, or a named alias")
    p.add_argument("--pred", required=True, choices=PREDICATES)
    p.add_argument("--expect", choices=("true", "false"), default=None)
    common(p)
    p.set_defaults(fn=_cmd_predicate)

    p = sub.add_parser("verify", help="run theorem checks on a group or catalog")
    p.add_argument("target", help="group spec, manifest path, or 'standard'")
    p.add_argument("--check", nargs="+", default=None,
                   help="theorem ids (default: all)")
    common(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("catalog", help="run a catalog manifest")
    p.add_argument("target", help="manifest path or 'standard'")
    p.add_argument("--check", nargs="+", default=None)
    common(p)
    p.set_defaults(fn=_cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching our contract
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except GroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
