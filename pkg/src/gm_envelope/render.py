"""Serialization of command results (JSON, CSV, text).

Floats are written with 17 significant digits so that every value
round-trips exactly.  Non-finite floats become the strings "inf", "-inf"
and "nan" in JSON, which has no literal for them.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any

FORMAT_VERSION = 1


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _scalar(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_float(value)
    return str(value)


def to_json(value: Any, indent: int = 2, _level: int = 0) -> str:
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isfinite(value):
            return fmt_float(value)
        return json.dumps(fmt_float(value))
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [pad + to_json(v, indent, _level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def envelope(command: str, inputs: dict, result: dict) -> dict:
    return {
        "command": command,
        "format_version": FORMAT_VERSION,
        "inputs_echo": inputs,
        "result": result,
    }


def _flatten(record: dict, prefix: str = "") -> list[tuple[str, Any]]:
    out = []
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.extend(_flatten(value, name + "."))
        elif isinstance(value, (list, tuple)):
            for k, item in enumerate(value):
                if isinstance(item, dict):
                    out.extend(_flatten(item, f"{name}.{k}."))
                else:
                    out.append((f"{name}.{k}", item))
        else:
            out.append((name, value))
    return out


def to_csv(env: dict) -> str:
    """Tables (a ``rows`` list in the result) become CSV tables; anything
    else becomes ``key,value`` lines."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rows = env["result"].get("rows")
    if rows:
        columns = list(rows[0])
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_scalar(row[c]) for c in columns])
    else:
        writer.writerow(["key", "value"])
        for key, value in _flatten(env["result"]):
            writer.writerow([key, _scalar(value)])
    return buf.getvalue()


def to_text(env: dict) -> str:
    lines = [f"{env['command']}"]
    for key, value in _flatten(env["inputs_echo"]):
        lines.append(f"  {key} = {_scalar(value)}")
    result = dict(env["result"])
    rows = result.pop("rows", None)
    flat = _flatten(result)
    width = max((len(k) for k, _ in flat), default=0)
    for key, value in flat:
        lines.append(f"{key.ljust(width)}  {_scalar(value)}")
    if rows:
        columns = list(rows[0])
        cells = [[_scalar(r[c]) for c in columns] for r in rows]
        widths = [max(len(c), *(len(row[k]) for row in cells)) for k, c in enumerate(columns)]
        lines.append("  ".join(c.rjust(w) for c, w in zip(columns, widths)))
        for row in cells:
            lines.append("  ".join(v.rjust(w) for v, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def render(env: dict, fmt: str) -> str:
    if fmt == "json":
        return to_json(env) + "\n"
    if fmt == "csv":
        return to_csv(env)
    if fmt == "text":
        return to_text(env)
    raise ValueError(f"unknown format {fmt!r}")
