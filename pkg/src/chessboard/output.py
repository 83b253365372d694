"""Machine-readable output records for the CLI.

A record is ``{schema_version, command, inputs, rows[, meta]}``.  CSV output
carries only the rows; JSON carries the full record.  Floats are written with
17 significant digits (``'.16e'``) so every value round-trips exactly, and
integers are written exactly however large.  Column layouts are listed in
``COLUMNS`` and documented in ``docs/output_format.md``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import jsonschema

SCHEMA_VERSION = "1"

COLUMNS = {
    "count": ["start", "end", "R", "count", "oracle_count", "match"],
    "sum": ["N", "P", "Q", "realized_x", "re", "im", "closed_form_re", "closed_form_im",
            "abs_error", "status", "oracle_re", "oracle_im"],
    "converge": ["kind", "N", "P", "Q", "realized_x", "re", "im", "ref_re", "ref_im",
                 "abs_error", "order"],
    "verify": ["kind", "solution", "h", "max_abs", "rms", "sample_count", "order",
               "det_min", "passed"],
    "field": ["x", "t", "re", "im"],
}

# JSON types per column; every column may also be null
_TYPES = {
    "start": "string", "end": "string", "status": "string", "kind": "string",
    "R": "integer", "count": "integer", "oracle_count": "integer", "N": "integer",
    "P": "integer", "Q": "integer", "solution": "integer", "sample_count": "integer",
    "match": "boolean", "passed": "boolean",
}


def _column_schema(name):
    return {"type": [_TYPES.get(name, "number"), "null"]}


def record_schema(command: str) -> dict:
    cols = COLUMNS[command]
    return {
        "type": "object",
        "required": ["schema_version", "command", "inputs", "rows"],
        "additionalProperties": False,
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "command": {"const": command},
            "inputs": {"type": "object"},
            "meta": {"type": "object"},
            "rows": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": cols,
                    "additionalProperties": False,
                    "properties": {c: _column_schema(c) for c in cols},
                },
            },
        },
    }


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    rows: list[dict] = field(default_factory=list)
    meta: dict | None = None
    schema_version: str = SCHEMA_VERSION

    def add(self, **values):
        cols = COLUMNS[self.command]
        unknown = set(values) - set(cols)
        if unknown:
            raise KeyError(f"unknown columns for {self.command}: {sorted(unknown)}")
        self.rows.append({c: values.get(c) for c in cols})

    def as_dict(self) -> dict:
        out = {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "rows": self.rows,
        }
        if self.meta is not None:
            out["meta"] = self.meta
        return out


def format_float(value: float) -> str:
    if math.isnan(value) or math.isinf(value):
        raise ValueError(f"non-finite value {value} in output")
    return format(value, ".16e")


def _dump(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_dump(v)}" for k, v in obj.items()) + "}"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_json(record: OutputRecord) -> str:
    return _dump(record.as_dict()) + "\n"


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def to_csv(record: OutputRecord) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = COLUMNS[record.command]
    writer.writerow(cols)
    for row in record.rows:
        writer.writerow([_cell(row[c]) for c in cols])
    return buf.getvalue()


def render(record: OutputRecord, fmt: str) -> str:
    return to_json(record) if fmt == "json" else to_csv(record)


def read_json(text: str) -> dict:
    """Parse a JSON record and validate it against its command's schema."""
    data = json.loads(text)
    command = data.get("command")
    if command not in COLUMNS:
        raise jsonschema.ValidationError(f"unknown command {command!r}")
    jsonschema.validate(data, record_schema(command))
    return data


def _parse_cell(text, column):
    if text == "":
        return None
    kind = _TYPES.get(column, "number")
    if kind == "integer":
        return int(text)
    if kind == "boolean":
        if text not in ("true", "false"):
            raise ValueError(f"bad boolean {text!r} in column {column}")
        return text == "true"
    if kind == "string":
        return text
    return float(text)


def read_csv(text: str, command: str) -> list[dict]:
    """Parse CSV rows back into typed dicts, checking the header."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != COLUMNS[command]:
        raise ValueError(f"unexpected header {header} for {command}")
    return [{c: _parse_cell(v, c) for c, v in zip(header, row)} for row in reader]
