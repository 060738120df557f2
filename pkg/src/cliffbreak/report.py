"""Verdict reports: JSON (schema version "1") and plain text."""

from __future__ import annotations

import json
from collections import Counter

import jsonschema

from .claims import STATUSES, ClaimResult, new_details
from .structure import GeneratorReport, format_factor, pseudoscalar_factor

SCHEMA_VERSION = "1"
TOOL = "cliffbreak"

_DETAILS = {
    "type": "object",
    "required": ["ranks", "inertia", "factors", "pseudoscalar_factor", "signatures", "checks", "notes"],
    "additionalProperties": False,
    "properties": {
        "ranks": {"type": "object", "additionalProperties": {"type": "integer"}},
        "inertia": {"type": "object",
                    "additionalProperties": {"type": "array", "items": {"type": "integer"}}},
        "factors": {"type": "object", "additionalProperties": {"type": "string"}},
        "pseudoscalar_factor": {"type": "object", "additionalProperties": {"type": "string"}},
        "signatures": {"type": "object", "additionalProperties": {"type": "string"}},
        "checks": {"type": "object", "additionalProperties": {"type": "boolean"}},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "tool", "version", "algebra_context", "seed", "summary", "entries"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "tool": {"const": TOOL},
        "version": {"type": "string"},
        "algebra_context": {"type": "string"},
        "seed": {"type": ["integer", "null"]},
        "summary": {
            "type": "object",
            "required": list(STATUSES),
            "additionalProperties": False,
            "properties": {s: {"type": "integer", "minimum": 0} for s in STATUSES},
        },
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind", "id", "status", "expected", "description", "paper_ref", "details"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"enum": ["claim", "generators"]},
                    "id": {"type": "string"},
                    "status": {"enum": list(STATUSES)},
                    "expected": {"enum": list(STATUSES)},
                    "description": {"type": "string"},
                    "paper_ref": {"type": "string"},
                    "details": _DETAILS,
                },
            },
        },
    },
}


def _version() -> str:
    from . import __version__

    return __version__


def generator_entry(report: GeneratorReport, exprs, context: str) -> dict:
    """Report entry for an ad-hoc generator set (``gens verify``)."""
    d = new_details()
    d["signatures"]["computed"] = "none" if report.signature is None else \
        f"({report.signature.p},{report.signature.q})"
    d["ranks"]["generated"] = report.generated_dimension
    d["ranks"]["ambient"] = report.ambient_dimension
    d["checks"]["anticommute"] = report.pairwise_anticommute
    d["checks"]["squares are +-1"] = "FAIL" not in report.squares
    d["notes"].append(f"squares: {report.squares}")
    d["notes"].append(f"pseudoscalar = {report.pseudoscalar}")
    for a, b in report.failing_pairs:
        d["notes"].append(f"{exprs[a]} and {exprs[b]} do not anticommute")
    desc = report.pseudoscalar.descriptor
    if desc.dirac:
        from .parser import eval_text

        for name in ("g0", "g5"):
            f = pseudoscalar_factor(report.pseudoscalar, eval_text(name, desc))
            if f is not None:
                d["pseudoscalar_factor"][name] = format_factor(f)
    status = "PASS" if report.valid else "FAIL"
    return {"kind": "generators", "id": "gens", "status": status, "expected": "PASS",
            "description": "{" + ", ".join(exprs) + "} in " + context,
            "paper_ref": "", "details": d}


def build_report(entries, algebra_context: str = "per-claim", seed: int | None = None) -> dict:
    dicts = [e.to_dict() if isinstance(e, ClaimResult) else e for e in entries]
    dicts.sort(key=lambda e: e["id"])
    counts = Counter(e["status"] for e in dicts)
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": TOOL,
        "version": _version(),
        "algebra_context": algebra_context,
        "seed": seed,
        "summary": {s: counts.get(s, 0) for s in STATUSES},
        "entries": dicts,
    }


def validate_report(doc: dict) -> None:
    jsonschema.validate(doc, REPORT_SCHEMA)


def to_json(doc: dict) -> str:
    validate_report(doc)
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def from_json(text: str) -> dict:
    doc = json.loads(text)
    validate_report(doc)
    return doc


def claim_results(doc: dict) -> list[ClaimResult]:
    return [ClaimResult.from_dict(e) for e in doc["entries"] if e["kind"] == "claim"]


def _detail_line(details: dict) -> str:
    parts = []
    for key in ("signatures", "ranks", "inertia", "factors", "pseudoscalar_factor"):
        for name, value in details.get(key, {}).items():
            if isinstance(value, list):
                value = "(" + ",".join(map(str, value)) + ")"
            parts.append(f"{name}={value}")
    return "; ".join(parts)


def to_text(doc: dict, verbose: bool = False) -> str:
    lines = []
    width = max((len(e["id"]) for e in doc["entries"]), default=0)
    for e in doc["entries"]:
        mark = "" if e["status"] == e["expected"] else "  [unexpected]"
        lines.append(f"{e['status']:<11} {e['id']:<{width}}  {e['description']}{mark}")
        if verbose or e["status"] != "PASS":
            info = _detail_line(e["details"])
            if info:
                lines.append(f"{'':11} {'':{width}}  {info}")
            failed = [k for k, v in e["details"]["checks"].items() if not v]
            if failed:
                lines.append(f"{'':11} {'':{width}}  failed: {', '.join(failed)}")
            for note in e["details"]["notes"]:
                lines.append(f"{'':11} {'':{width}}  note: {note}")
    s = doc["summary"]
    lines.append(f"{s['PASS']} PASS, {s['FAIL']} FAIL, {s['DISCREPANCY']} DISCREPANCY")
    return "\n".join(lines) + "\n"
