"""Self-describing JSONL records: {"type": ..., "version": 1, "payload": ...}."""

from __future__ import annotations

import json

VERSION = 1


def dumps_record(kind: str, payload: dict) -> str:
    return json.dumps({"type": kind, "version": VERSION, "payload": payload},
                      sort_keys=True, separators=(",", ":"))


def loads_record(line: str) -> tuple[str, dict]:
    data = json.loads(line)
    if not isinstance(data, dict) or set(data) != {"type", "version", "payload"}:
        raise ValueError("not a record")
    if data["version"] != VERSION:
        raise ValueError(f"unsupported record version {data['version']}")
    return data["type"], data["payload"]
