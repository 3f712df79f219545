"""JSON documents and aligned-text renderings of verification runs.

Documents carry no timestamps or paths, so two runs with the same
configuration and seed produce identical bytes.
"""

import functools
import json
import logging
from pathlib import Path

import jsonschema

from spinflux.verify.census import CensusRow, render_table
from spinflux.verify.crosschecks import CrosscheckResult
from spinflux.verify.verifier import VerificationReport

logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).with_name("report.schema.json")
SCHEMA_VERSION = 1


@functools.cache
def load_schema() -> dict:
    with open(SCHEMA_PATH) as f:
        return json.load(f)


def validate(document: dict) -> None:
    """Raises jsonschema.ValidationError if ``document`` is malformed."""
    jsonschema.validate(document, load_schema())


def _unexplained_vacuous(report: VerificationReport) -> bool:
    vacuous = any(r.outcome == "vacuous" for r in report.necessity)
    return vacuous and not report.theorem.note


def verify_document(
    reports: list[VerificationReport],
    crosschecks: list[CrosscheckResult],
    config: dict,
) -> dict:
    unexpected = [r.theorem.id for r in reports if not r.as_expected]
    vacuous = [r.theorem.id for r in reports if _unexplained_vacuous(r)]
    failed_checks = [c.name for c in crosschecks if not c.passed]
    document = {
        "kind": "verify",
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "theorems": [r.to_dict() for r in reports],
        "crosschecks": [c.to_dict() for c in crosschecks],
        "summary": {
            "total": len(reports),
            "as_expected": len(reports) - len(unexpected),
            "unexpected": unexpected,
            "vacuous": vacuous,
            "crosschecks_failed": failed_checks,
            "ok": not (unexpected or vacuous or failed_checks),
        },
    }
    validate(document)
    return document


def census_document(rows: list[CensusRow], config: dict) -> dict:
    document = {
        "kind": "census",
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "rows": [r.to_dict() for r in rows],
        "table": render_table(rows),
    }
    validate(document)
    return document


def document_ok(document: dict) -> bool:
    if document["kind"] == "verify":
        return document["summary"]["ok"]
    return True


def _columns(lines: list[tuple[str, ...]]) -> str:
    widths = [max(len(r[k]) for r in lines) for k in range(len(lines[0]))]
    return "\n".join(
        "  ".join(c.ljust(w) for c, w in zip(r, widths, strict=True)).rstrip()
        for r in lines
    )


def _necessity_text(theorem: dict) -> str:
    outcomes = [r["outcome"] for r in theorem["necessity"]]
    if not outcomes:
        return "-"
    return ",".join(sorted(set(outcomes)))


def render_verify(document: dict) -> str:
    lines = [("theorem", "class", "status", "expected", "dim", "necessity")]
    for t in document["theorems"]:
        spec = t["theorem"]
        lines.append(
            (
                spec["id"],
                spec["class_id"],
                t["status"],
                spec["expect"],
                str(t["subbundle_dim"]),
                _necessity_text(t),
            )
        )
    out = [_columns(lines), ""]
    for c in document["crosschecks"]:
        result = "pass" if c["passed"] else "FAIL"
        out.append(f"crosscheck {c['name']}: {result}")
    summary = document["summary"]
    out.append(
        f"{summary['as_expected']}/{summary['total']} theorem records as "
        "expected"
    )
    for key in ("unexpected", "vacuous", "crosschecks_failed"):
        if summary[key]:
            out.append(f"{key}: {', '.join(summary[key])}")
    return "\n".join(out) + "\n"


def render(document: dict) -> str:
    """Human-readable form of a verify or census document."""
    if document["kind"] == "verify":
        return render_verify(document)
    if document["kind"] == "census":
        return document["table"]
    raise ValueError(f"Unknown document kind: {document['kind']}")
