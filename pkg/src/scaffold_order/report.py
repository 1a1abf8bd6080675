"""Report documents and their table / JSON / CSV renderings."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

SCHEMA_VERSION = "1.0"
FORMATS = ("table", "json", "csv")


@dataclass
class ReportDocument:
    command: str
    parameters: dict
    rows: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "parameters": self.parameters,
            "rows": self.rows,
            "summary": self.summary,
        }

    def render(self, fmt: str = "table") -> str:
        if fmt == "json":
            return to_json(self)
        if fmt == "csv":
            return to_csv(self)
        if fmt == "table":
            return to_table(self)
        raise ValueError(f"unknown format {fmt!r}")


def to_json(doc: ReportDocument) -> str:
    # sort_keys keeps repeated runs byte-identical
    return json.dumps(doc.to_dict(), sort_keys=True, indent=2) + "\n"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


def _columns(rows) -> list:
    cols = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    return cols


def to_csv(doc: ReportDocument) -> str:
    buf = io.StringIO()
    cols = _columns(doc.rows)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in doc.rows:
        w.writerow([_cell(r.get(c)) for c in cols])
    return buf.getvalue()


def to_table(doc: ReportDocument) -> str:
    lines = [f"# {doc.command} " + " ".join(f"{k}={_cell(v)}" for k, v in doc.parameters.items())]
    cols = _columns(doc.rows)
    if cols:
        cells = [[_cell(r.get(c)) for c in cols] for r in doc.rows]
        widths = [max(len(c), *(len(row[k]) for row in cells)) for k, c in enumerate(cols)]
        lines.append("  ".join(c.rjust(wd) for c, wd in zip(cols, widths)))
        lines.append("  ".join("-" * wd for wd in widths))
        lines.extend("  ".join(x.rjust(wd) for x, wd in zip(row, widths)) for row in cells)
    for k, v in doc.summary.items():
        lines.append(f"{k}: {_cell(v)}")
    return "\n".join(lines) + "\n"
