"""Group-spec files, catalog manifests, the standard catalog, and batch runs.

File formats (JSON):

* group spec: a construction-tree object; keys per node kind, plus optional
  ``name``, ``relations`` (words equal to the identity) and ``subgroups``
  (named generator-word aliases).
* manifest: ``{"config": {cap, jobs, checks}, "entries": [{name, spec |
  spec_path, expected}]}``.  Expected values map check ids (``class:SST``,
  ``pred:ss_permutable:y,w``, ``theorem:D``) to booleans.

Reports are deterministic byte streams for fixed inputs: entries are
processed independently (optionally in a process pool) and merged in
manifest order.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import __version__
from .classes import classify, class_verdict_bool
from .errors import BadAction, GroupError, ParseError, UnknownKind
from .lattice import all_subgroups, generated_subgroup
from .predicates import PREDICATES, evaluate_predicate
from .series import pi
from .specs import GroupSpec, build_from_spec, resolve_subgroup_words
from .tables import DEFAULT_ORDER_CAP, GroupTable
from .theorems import THEOREM_IDS, report_to_dict, run_check
from .words import ElementWord

_SPEC_KEYS = {
    "kind", "n", "label", "degree", "generators", "factors", "kernel",
    "actor", "action", "relations", "name", "subgroups",
}


def _spec_from_dict(doc: dict) -> GroupSpec:
    if not isinstance(doc, dict):
        raise ParseError(f"group spec node must be an object, got {type(doc).__name__}")
    unknown = set(doc) - _SPEC_KEYS
    if unknown:
        raise ParseError(f"unknown group spec keys: {sorted(unknown)}")
    kind = doc.get("kind")
    if not isinstance(kind, str):
        raise ParseError("group spec node is missing a 'kind' string")
    kwargs: dict = {"kind": kind}
    if "n" in doc:
        if not isinstance(doc["n"], int):
            raise ParseError(f"field 'n' must be an integer, got {doc['n']!r}")
        kwargs["n"] = doc["n"]
    if "label" in doc:
        kwargs["label"] = doc["label"]
    if "degree" in doc:
        kwargs["degree"] = doc["degree"]
    if "generators" in doc:
        gens = doc["generators"]
        if not isinstance(gens, dict):
            raise ParseError("'generators' must map labels to image arrays")
        kwargs["generators"] = {
            str(lbl): tuple(int(x) for x in images) for lbl, images in gens.items()
        }
    if "factors" in doc:
        kwargs["factors"] = tuple(_spec_from_dict(f) for f in doc["factors"])
    if "kernel" in doc:
        kwargs["kernel"] = _spec_from_dict(doc["kernel"])
    if "actor" in doc:
        kwargs["actor"] = _spec_from_dict(doc["actor"])
    if "action" in doc:
        action = doc["action"]
        if not isinstance(action, dict):
            raise BadAction("'action' must map actor labels to kernel-label maps")
        parsed: dict[str, dict[str, str]] = {}
        for alabel, kmap in action.items():
            if not isinstance(kmap, dict):
                raise BadAction(f"action of {alabel!r} must be an object")
            for klabel, word in kmap.items():
                ElementWord.parse(str(word))  # syntax check now, meaning at build
            parsed[str(alabel)] = {str(k): str(w) for k, w in kmap.items()}
        kwargs["action"] = parsed
    if "relations" in doc:
        rels = tuple(str(r) for r in doc["relations"])
        for r in rels:
            ElementWord.parse(r)
        kwargs["relations"] = rels
    if "name" in doc:
        kwargs["name"] = str(doc["name"])
    if "subgroups" in doc:
        kwargs["subgroups"] = {str(k): str(v) for k, v in doc["subgroups"].items()}
    return GroupSpec(**kwargs)


def _spec_to_dict(spec: GroupSpec) -> dict:
    out: dict = {"kind": spec.kind}
    if spec.n is not None:
        out["n"] = spec.n
    if spec.label is not None:
        out["label"] = spec.label
    if spec.degree is not None:
        out["degree"] = spec.degree
    if spec.generators is not None:
        out["generators"] = {k: list(v) for k, v in spec.generators.items()}
    if spec.factors:
        out["factors"] = [_spec_to_dict(f) for f in spec.factors]
    if spec.kernel is not None:
        out["kernel"] = _spec_to_dict(spec.kernel)
    if spec.actor is not None:
        out["actor"] = _spec_to_dict(spec.actor)
    if spec.action is not None:
        out["action"] = {a: dict(m) for a, m in spec.action.items()}
    if spec.relations:
        out["relations"] = list(spec.relations)
    if spec.name is not None:
        out["name"] = spec.name
    if spec.subgroups:
        out["subgroups"] = dict(spec.subgroups)
    return out


def parse_group_spec(text: str) -> GroupSpec:
    """Parse and validate a group spec JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return _spec_from_dict(doc)


def serialize_group_spec(spec: GroupSpec) -> str:
    return json.dumps(_spec_to_dict(spec), indent=2) + "\n"


# ---------------------------------------------------------------------------
# manifests


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: GroupSpec
    expected: dict[str, bool] = field(default_factory=dict)


@dataclass(frozen=True)
class CatalogManifest:
    entries: tuple[CatalogEntry, ...]
    cap: int = DEFAULT_ORDER_CAP
    jobs: int = 1
    checks: tuple[str, ...] = THEOREM_IDS


def _validate_check_id(check_id: str) -> None:
    if check_id.startswith("class:") or check_id.startswith("theorem:"):
        return
    if check_id.startswith("pred:"):
        parts = check_id.split(":", 2)
        if len(parts) == 3 and parts[1] in PREDICATES:
            return
        raise ParseError(f"malformed predicate check id {check_id!r}")
    raise ParseError(f"unknown expected-check id {check_id!r}")


def parse_manifest(text: str, base_dir: Path | None = None) -> CatalogManifest:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if "entries" not in doc:
        raise ParseError("manifest is missing 'entries'")
    conf = doc.get("config", {})
    checks = tuple(conf.get("checks", THEOREM_IDS))
    for c in checks:
        if c not in THEOREM_IDS:
            raise ParseError(f"unknown theorem id in checks: {c!r}")
    entries = []
    names = set()
    for raw in doc["entries"]:
        name = raw.get("name")
        if not name or name in names:
            raise ParseError(f"entry names must be unique and nonempty: {name!r}")
        names.add(name)
        if "spec" in raw:
            spec = _spec_from_dict(raw["spec"])
        elif "spec_path" in raw:
            path = Path(raw["spec_path"])
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            spec = parse_group_spec(path.read_text())
        else:
            raise ParseError(f"entry {name!r} needs 'spec' or 'spec_path'")
        expected = {str(k): bool(v) for k, v in raw.get("expected", {}).items()}
        for check_id in expected:
            _validate_check_id(check_id)
        entries.append(CatalogEntry(name, spec, expected))
    return CatalogManifest(
        entries=tuple(entries),
        cap=int(conf.get("cap", DEFAULT_ORDER_CAP)),
        jobs=int(conf.get("jobs", 1)),
        checks=checks,
    )


def standard_catalog() -> CatalogManifest:
    """The shipped catalog: the counterexample fixtures plus coverage groups."""
    data = resources.files("permutability").joinpath("data")
    text = data.joinpath("standard_catalog.json").read_text()
    doc = json.loads(text)
    for raw in doc["entries"]:
        if "spec_path" in raw:
            raw["spec"] = json.loads(data.joinpath(raw.pop("spec_path")).read_text())
    return parse_manifest(json.dumps(doc))


def load_builtin_spec(name: str) -> GroupSpec:
    data = resources.files("permutability").joinpath("data/specs")
    return parse_group_spec(data.joinpath(f"{name}.json").read_text())


# ---------------------------------------------------------------------------
# evaluation


def _eval_expected(group: GroupTable, spec: GroupSpec, check_id: str) -> bool | None:
    kind, _, rest = check_id.partition(":")
    if kind == "class":
        return class_verdict_bool(group, rest)
    if kind == "pred":
        pred, _, subject = rest.partition(":")
        ids = resolve_subgroup_words(spec, group, subject)
        h = generated_subgroup(group, ids)
        return evaluate_predicate(pred, group, h).verdict
    if kind == "theorem":
        report = run_check(group, rest, factors=_direct_factors(spec, group))
        return report.passed if report.applicable else None
    raise ParseError(f"unknown expected-check id {check_id!r}")


def _direct_factors(spec: GroupSpec, group: GroupTable,
                    cap: int = DEFAULT_ORDER_CAP) -> list[GroupTable] | None:
    if spec.kind != "direct" or len(spec.factors) < 2:
        return None
    return [build_from_spec(f, cap=cap) for f in spec.factors]


def entry_report(entry: CatalogEntry, checks, cap: int) -> dict:
    """Build one entry, run its checks, compare expected values."""
    try:
        group = build_from_spec(entry.spec, cap=cap)
    except GroupError as exc:
        return {"name": entry.name, "error": f"{type(exc).__name__}: {exc}"}
    lat = all_subgroups(group)
    verdicts = classify(group)
    agreement = []
    for cid in ("PST", "BT", "SST"):
        v = verdicts[cid]
        if v.get("characterization") is not None and \
                v["characterization"] != v["bruteforce"]:
            agreement.append(cid)
    factors = _direct_factors(entry.spec, group, cap)
    reports = [run_check(group, cid, factors=factors) for cid in checks]
    expected = {}
    for check_id in sorted(entry.expected):
        actual = _eval_expected(group, entry.spec, check_id)
        expected[check_id] = {
            "expected": entry.expected[check_id],
            "actual": actual,
            "match": actual == entry.expected[check_id],
        }
    counterexamples = []
    for rep in reports:
        if rep.applicable and not rep.passed:
            counterexamples.append(
                {"theorem_id": rep.theorem_id, "records": list(rep.counterexamples)})
    return {
        "name": entry.name,
        "order": group.order,
        "pi": sorted(pi(group)),
        "subgroup_count": len(lat.masks),
        "class_verdicts": verdicts,
        "class_route_disagreements": agreement,
        "checks": [report_to_dict(r) for r in reports],
        "expected": expected,
        "counterexamples": counterexamples,
    }


def _entry_worker(payload: tuple[dict, tuple[str, ...], int]) -> dict:
    raw, checks, cap = payload
    entry = CatalogEntry(
        raw["name"], _spec_from_dict(raw["spec"]),
        {k: bool(v) for k, v in raw.get("expected", {}).items()})
    return entry_report(entry, checks, cap)


def run_catalog(manifest: CatalogManifest, checks=None, jobs: int | None = None) -> dict:
    """Run every requested check on every entry; deterministic aggregate."""
    checks = tuple(checks if checks is not None else manifest.checks)
    jobs = jobs if jobs is not None else manifest.jobs
    payloads = [
        ({"name": e.name, "spec": _spec_to_dict(e.spec), "expected": e.expected},
         checks, manifest.cap)
        for e in manifest.entries
    ]
    if jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            groups = list(pool.map(_entry_worker, payloads))
    else:
        groups = [_entry_worker(p) for p in payloads]
    errors = sum(1 for g in groups if "error" in g)
    failures = sum(
        1 for g in groups for c in g.get("checks", ())
        if c["applicable"] and not c["pass"])
    mism = sum(
        1 for g in groups for v in g.get("expected", {}).values() if not v["match"])
    disagreements = sum(len(g.get("class_route_disagreements", ())) for g in groups)
    applicable_counts: dict[str, int] = {c: 0 for c in checks}
    for g in groups:
        for c in g.get("checks", ()):
            if c["applicable"]:
                applicable_counts[c["theorem_id"]] += 1
    # the parallelism degree is deliberately not recorded: reports must be
    # byte-identical regardless of how the work was scheduled
    return {
        "tool_version": __version__,
        "config": {"cap": manifest.cap, "checks": list(checks)},
        "groups": groups,
        "summary": {
            "entries": len(groups),
            "build_errors": errors,
            "check_failures": failures,
            "expectation_mismatches": mism,
            "class_route_disagreements": disagreements,
            "applicable_counts": applicable_counts,
            "pass": errors == 0 and failures == 0 and mism == 0 and disagreements == 0,
        },
    }
