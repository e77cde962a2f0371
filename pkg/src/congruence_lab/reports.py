"""Deterministic report writers: CSV primary, JSON mirror, metadata sidecar.

CSV cells are UTF-8 with '.' decimals and no thousands separators; floats
are written with repr (shortest round-trip), so identical rows always
produce identical bytes.  Timestamps and timings live only in the sidecar.
"""

from __future__ import annotations

import csv
import json
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any

__all__ = ["format_cell", "write_csv", "write_json_mirror", "write_meta"]


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def write_csv(path: Path, columns: list[str], rows: list[dict[str, Any]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(row.get(col)) for col in columns])


def write_json_mirror(
    path: Path,
    suite: str,
    columns: list[str],
    rows: list[dict[str, Any]],
    row_errors: list[dict[str, Any]],
    config_echo: dict[str, Any],
) -> None:
    payload = {
        "suite": suite,
        "columns": columns,
        "rows": [{col: _jsonable(row.get(col)) for col in columns} for row in rows],
        "row_errors": row_errors,
        "config": config_echo,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, allow_nan=True)
        fh.write("\n")


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float) and (value != value or value in (float("inf"), float("-inf"))):
        return repr(value)
    return value


def write_meta(path: Path, suite: str, started: datetime, timings_ms: list[dict]) -> None:
    payload = {
        "suite": suite,
        "started_utc": started.astimezone(timezone.utc).isoformat(),
        "finished_utc": datetime.now(timezone.utc).isoformat(),
        "row_timings_ms": timings_ms,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
