"""Report rendering: an aligned text table, a JSON-ready document, and CSV rows."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Sequence

from .cd import CDReport
from .group import FiniteGroup, center
from .lattice import SubgroupLattice, subgroup_counts
from .verify import ClaimResult

REPORT_FORMAT = "cdreport"
REPORT_VERSION = 1


@dataclass(frozen=True)
class GroupSummary:
    label: str
    order: int
    lattice: int
    cd: int
    delta: int
    m_star: int
    center: int
    counts: tuple = ()
    axioms: dict = field(default_factory=dict, compare=False)

    def row(self) -> dict:
        out = {
            "label": self.label,
            "order": self.order,
            "lattice": self.lattice,
            "cd": self.cd,
            "delta": self.delta,
            "m_star": self.m_star,
            "center": self.center,
        }
        if self.counts:
            out["counts"] = list(self.counts)
        if self.axioms:
            failed = [name for name, ok in self.axioms.items() if not ok]
            out["axioms"] = "fail: " + ",".join(failed) if failed else "pass"
        return out


def summarize(label: str, g: FiniteGroup, lattice: SubgroupLattice, report: CDReport,
              counts: bool = False) -> GroupSummary:
    s = ()
    if counts and g.order > 1 and g.prime is not None:
        s = tuple(subgroup_counts(lattice, g.prime))
    axioms = {name: r.passed for name, r in report.axiom_results.items()}
    return GroupSummary(label, g.order, len(lattice), len(report.cd_members), report.delta,
                        report.m_star, center(g).size, s, axioms)


def _plain(value):
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if hasattr(value, "item"):
        return value.item()
    return str(value)


def claim_row(c: ClaimResult) -> dict:
    out = {
        "claim_id": c.claim_id,
        "group": c.group_label,
        "expected": _plain(c.expected),
        "actual": _plain(c.actual),
        "pass": c.passed,
        "skipped": c.skipped,
        "note": c.note,
    }
    if c.details:
        out["details"] = _plain(c.details)
    return out


def _rows(records) -> list[dict]:
    rows = []
    for r in records:
        rows.append(claim_row(r) if isinstance(r, ClaimResult) else r.row())
    return rows


def _cell(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return " ".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return ",".join(f"{k}={_cell(v)}" for k, v in value.items())
    return str(value)


def _table(rows: list[dict]) -> str:
    if not rows:
        return "(no rows)\n"
    columns: list[str] = []
    for r in rows:
        for k in r:
            if k not in columns and k != "details":
                columns.append(k)
    cells = [[_cell(r.get(c, "")) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def serialize_report(records: Sequence, title: str | None = None,
                     sort: bool = False) -> tuple[str, dict]:
    """Return ``(text, document)`` for a list of ClaimResult or GroupSummary records.

    With ``sort`` the claims are ordered by ``(claim_id, group_label)``.
    """
    records = list(records)
    if sort:
        records.sort(key=lambda r: (r.claim_id, r.group_label) if isinstance(r, ClaimResult)
                     else ("", r.label))
    rows = _rows(records)
    claims = [r for r in records if isinstance(r, ClaimResult)]
    failed = sum(1 for c in claims if not c.passed)
    summary = {
        "records": len(rows),
        "claims": len(claims),
        "passed": len(claims) - failed,
        "failed": failed,
        "skipped": sum(1 for c in claims if c.skipped),
    }
    doc = {"format": REPORT_FORMAT, "version": REPORT_VERSION, "title": title or "",
           "records": rows, "summary": summary}
    head = f"{title}\n\n" if title else ""
    tail = ""
    if claims:
        tail = f"\n{summary['passed']}/{len(claims)} claims passed"
        tail += f" ({summary['skipped']} skipped as not applicable)\n" if summary["skipped"] else "\n"
    return head + _table(rows) + tail, doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def to_csv(doc: dict) -> str:
    """The document's records as CSV; nested values are flattened to text."""
    rows = doc["records"]
    buf = io.StringIO(newline="")
    if not rows:
        return ""
    columns: list[str] = []
    for r in rows:
        for k in r:
            if k not in columns:
                columns.append(k)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_cell(r.get(c, "")) for c in columns])
    return buf.getvalue()
