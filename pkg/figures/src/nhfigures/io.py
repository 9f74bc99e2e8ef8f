"""Readers for the simulation output formats.

This package talks to the simulation package only through its files: CSVs with
'# key: json' metadata header lines, and JSON reports with a 'metadata' block.
Nothing here imports the simulation code.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path


class SchemaError(ValueError):
    """Input file does not match the expected recipe or column layout."""


@dataclass(frozen=True)
class Table:
    """One parsed CSV: run metadata, column names, string-valued rows and the
    checksum of the data lines (everything except the metadata header)."""

    path: Path
    metadata: dict
    columns: tuple
    rows: list
    checksum: str

    @property
    def recipe(self) -> str:
        return self.metadata.get("recipe", "")

    def column(self, name: str, cast=float) -> list:
        if name not in self.columns:
            raise SchemaError(
                f"{self.path}: missing column {name!r}; found {list(self.columns)}")
        return [cast(row[name]) for row in self.rows]


def read_table(path) -> Table:
    path = Path(path)
    metadata, rows, columns = {}, [], None
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for raw in fh:
            line = raw.decode().rstrip("\n")
            if line.startswith("# "):
                key, _, rest = line[2:].partition(": ")
                try:
                    metadata[key] = json.loads(rest)
                except json.JSONDecodeError as exc:
                    raise SchemaError(f"{path}: bad metadata line {line!r}") from exc
                continue
            digest.update(raw)
            if columns is None:
                columns = tuple(line.split(","))
            elif line:
                values = line.split(",")
                if len(values) != len(columns):
                    raise SchemaError(
                        f"{path}: row has {len(values)} fields, expected {len(columns)}")
                rows.append(dict(zip(columns, values)))
    if columns is None:
        raise SchemaError(f"{path}: no header row")
    return Table(path=path, metadata=metadata, columns=columns, rows=rows,
                 checksum=digest.hexdigest())


def read_report(path) -> tuple[dict, dict, str]:
    """JSON report: (metadata, payload, checksum of the whole file)."""
    path = Path(path)
    raw = path.read_bytes()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON") from exc
    metadata = data.pop("metadata", {})
    return metadata, data, hashlib.sha256(raw).hexdigest()
