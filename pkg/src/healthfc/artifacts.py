"""Self-describing JSON-lines artifacts passed between pipeline stages.

Every artifact starts with a header line carrying the artifact kind and
a schema_version that readers check, so stale or foreign files fail
loudly instead of half-parsing.
"""

import json
from pathlib import Path
from typing import Iterable, Iterator

SCHEMA_VERSION = 1


class ArtifactError(Exception):
    """Raised for missing, malformed or wrong-schema stage artifacts."""


def dumps(obj) -> str:
    """Deterministic JSON encoding: sorted keys, no ASCII escaping."""
    return json.dumps(obj, ensure_ascii=False, sort_keys=True)


def write_artifact(path: str | Path, kind: str, records: Iterable[dict]) -> int:
    """Write a header line plus one JSON object per record. Returns the count."""
    n = 0
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps({"artifact": kind, "schema_version": SCHEMA_VERSION}) + "\n")
        for rec in records:
            f.write(dumps(rec) + "\n")
            n += 1
    return n


def read_artifact(path: str | Path, kind: str) -> Iterator[dict]:
    """Yield records from an artifact, checking kind and schema_version."""
    path = Path(path)
    if not path.exists():
        raise ArtifactError(f"MissingInput: {kind} artifact not found at {path}")
    with open(path, encoding="utf-8") as f:
        header_line = f.readline().strip()
        if not header_line:
            raise ArtifactError(f"empty {kind} artifact at {path}")
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as e:
            raise ArtifactError(f"unreadable header in {path}: {e}") from e
        if header.get("artifact") != kind:
            raise ArtifactError(
                f"expected {kind!r} artifact, found {header.get('artifact')!r} in {path}"
            )
        if header.get("schema_version") != SCHEMA_VERSION:
            raise ArtifactError(
                f"schema_version {header.get('schema_version')!r} in {path}, "
                f"expected {SCHEMA_VERSION}"
            )
        for line in f:
            line = line.strip()
            if line:
                yield json.loads(line)


def write_report(path: str | Path, payload: dict) -> None:
    """Write a JSON report document with schema_version, deterministically."""
    doc = {"schema_version": SCHEMA_VERSION, **payload}
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2) + "\n")
