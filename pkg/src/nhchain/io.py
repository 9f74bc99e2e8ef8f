"""Delimited output with embedded run metadata.

Every produced file carries the full resolved config in '# key: json' header
lines so any row can be traced back to the run that produced it. Floats are
written with 17 significant digits for bit-exact reproducibility.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(path, rows, fieldnames, metadata: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        for key, value in metadata.items():
            fh.write(f"# {key}: {json.dumps(value, sort_keys=True)}\n")
        fh.write(",".join(fieldnames) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row[name]) for name in fieldnames) + "\n")


def read_csv(path) -> tuple[dict, list[dict]]:
    """Parse a metadata-headed CSV back into (metadata, rows-of-strings)."""
    metadata, rows, fields = {}, [], None
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("# "):
                key, _, raw = line[2:].partition(": ")
                metadata[key] = json.loads(raw)
            elif fields is None:
                fields = line.split(",")
            elif line:
                rows.append(dict(zip(fields, line.split(","))))
    return metadata, rows


def write_json(path, payload: dict, metadata: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump({"metadata": metadata, **payload}, fh, indent=2, sort_keys=True)
        fh.write("\n")


def row_checksum(path) -> str:
    """SHA-256 over the non-comment lines of a delimited file."""
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for line in fh:
            if not line.startswith(b"# "):
                h.update(line)
    return h.hexdigest()
