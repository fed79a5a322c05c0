"""Check reports and their deterministic serialization.

CSV columns are fixed (check_name, status, value, reference, tolerance) and
the JSON-lines format mirrors the same five fields.  Floats are written with
repr (shortest round-trip), keys sorted, no timestamps: re-running a check
with the same config reproduces the bytes exactly.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from ..errors import IoFailure

__all__ = [
    "CheckReport",
    "FROZEN_DISCREPANCY_CHECKS",
    "emit_report",
    "parse_report",
    "has_failures",
]

PASS = "pass"
FAIL = "fail"
DISCREPANCY = "discrepancy-logged"

# Checks that document a recorded discrepancy.  This set is part of the
# report schema: such a check must never silently flip to pass/fail.
FROZEN_DISCREPANCY_CHECKS = frozenset({
    "k0_ledger",
    "gamma_formula_ledger",
    "thm41_exactness",
    "prop61_fundamental",
})


@dataclass
class CheckReport:
    check_name: str
    status: str
    values: dict = field(default_factory=dict)
    reference: str = ""
    tolerances: dict = field(default_factory=dict)

    def headline(self) -> str:
        vals = ", ".join(f"{k}={_fmt(v)}" for k, v in sorted(self.values.items())[:4])
        return f"{self.check_name}: {self.status} ({vals})"


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def _pack(d: dict) -> str:
    return ";".join(f"{k}={_fmt(v)}" for k, v in sorted(d.items()))


def _unpack(s: str) -> dict:
    out = {}
    if not s:
        return out
    for item in s.split(";"):
        k, _, v = item.partition("=")
        out[k] = v
    return out


def _validate(reports) -> None:
    for r in reports:
        if r.status not in (PASS, FAIL, DISCREPANCY):
            raise IoFailure(f"unknown status {r.status!r} on {r.check_name}")
        frozen = r.check_name in FROZEN_DISCREPANCY_CHECKS
        if frozen and r.status == PASS:
            raise IoFailure(
                f"{r.check_name} is a frozen discrepancy check; it must not "
                f"silently report {r.status!r}")
        if r.status == DISCREPANCY and not frozen:
            raise IoFailure(
                f"{r.check_name} is not in the frozen discrepancy ledger")


def render_report(reports, fmt: str = "csv") -> str:
    reports = list(reports)
    _validate(reports)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check_name", "status", "value", "reference", "tolerance"])
        for r in reports:
            w.writerow([r.check_name, r.status, _pack(r.values), r.reference,
                        _pack(r.tolerances)])
        return buf.getvalue()
    if fmt in ("jsonl", "json-lines"):
        lines = []
        for r in reports:
            lines.append(json.dumps(
                {"check_name": r.check_name, "status": r.status,
                 "value": {k: _fmt(v) for k, v in r.values.items()},
                 "reference": r.reference,
                 "tolerance": {k: _fmt(v) for k, v in r.tolerances.items()}},
                sort_keys=True, separators=(",", ":")))
        return "\n".join(lines) + ("\n" if lines else "")
    raise IoFailure(f"unknown report format {fmt!r}")


def emit_report(reports, path, fmt: str = "csv") -> str:
    """Write reports to ``path``; returns the rendered text."""
    text = render_report(reports, fmt)
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as err:
        raise IoFailure(str(err)) from err
    return text


def parse_report(path, fmt: str = "csv"):
    """Re-parse an emitted report; values come back as strings and survive a
    render round trip byte for byte."""
    reports = []
    with open(path) as fh:
        if fmt == "csv":
            rows = list(csv.reader(fh))
            for row in rows[1:]:
                name, status, value, reference, tolerance = row
                reports.append(CheckReport(check_name=name, status=status,
                                           values=_unpack(value),
                                           reference=reference,
                                           tolerances=_unpack(tolerance)))
        elif fmt in ("jsonl", "json-lines"):
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                d = json.loads(line)
                reports.append(CheckReport(check_name=d["check_name"],
                                           status=d["status"],
                                           values=d["value"],
                                           reference=d["reference"],
                                           tolerances=d["tolerance"]))
        else:
            raise IoFailure(f"unknown report format {fmt!r}")
    return reports


def has_failures(reports) -> bool:
    return any(r.status == FAIL for r in reports)
