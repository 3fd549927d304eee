"""Tabular output shared by the CLI subcommands."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

FORMATS = ("csv", "json")


def format_value(value) -> str:
    """Render one CSV cell; floats use 17 significant digits so they round-trip."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    return "" if value is None else str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if hasattr(value, "item"):  # numpy scalars
        return value.item()
    return value


def render(rows, fmt: str = "csv", columns=None) -> str:
    rows = list(rows)
    if columns is None:
        if not rows:
            raise ValueError("columns are required to render an empty table")
        columns = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(_json_value(row.get(c))) for c in columns])
        return buf.getvalue()
    if fmt == "json":
        payload = [{c: _json_value(row.get(c)) for c in columns} for row in rows]
        return json.dumps(payload, indent=1) + "\n"
    raise ValueError(f"unknown output format {fmt!r}")


def write_output(rows, fmt: str = "csv", destination="-", columns=None) -> None:
    """Write rows to ``destination`` ("-" is stdout); files are replaced atomically."""
    text = render(rows, fmt, columns)
    if destination in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(destination)
    tmp = None
    try:
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        if tmp is not None and os.path.exists(tmp):
            os.unlink(tmp)
        raise OSError(f"cannot write {path}: {exc}") from exc


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))
