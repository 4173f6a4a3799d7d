"""CSV / JSON table writers with round-trip-exact floats."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from pathlib import Path

OUTPUT_DIR_ENV = "WEYLPATH_OUTPUT_DIR"


def fmt_real(x) -> str:
    if hasattr(x, "item"):  # numpy scalar
        x = x.item()
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, str)):
        return str(x)
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return repr(x)
    return f"{x:.17g}"


def _jsonable(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return x.item()
    return x


def resolve_path(path: str | None) -> Path | None:
    """``None`` or ``-`` means stdout; relative paths go under ``$WEYLPATH_OUTPUT_DIR``."""
    if path in (None, "-"):
        return None
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def render_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(rows[0]))
    for row in rows:
        writer.writerow([fmt_real(v) for v in row.values()])
    return buf.getvalue()


def render_json(doc) -> str:
    return json.dumps(_jsonable(doc), indent=2) + "\n"


def emit(text: str, path: str | None, stream) -> None:
    target = resolve_path(path)
    if target is None:
        stream.write(text)
    else:
        target.write_text(text)
