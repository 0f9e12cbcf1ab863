"""Persistent cache of forb values, one JSON object per line.

Keys are (m, r, digest) where the digest is the SHA-256 of the canonical
text of the family's distinct members.  Exact entries are never replaced by
formula entries.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path

from .matrix import RMatrix, config_canonical, to_text

log = logging.getLogger(__name__)

METHODS = ("exact", "formula")


def family_digest(m: int, r: int, members) -> str:
    """Stable digest of a family as seen on m rows over r symbols."""
    texts = sorted({to_text(config_canonical(F.with_alphabet(r))) for F in members if F.rows <= m})
    h = hashlib.sha256()
    for t in texts:
        h.update(t.encode())
        h.update(b"\x00")
    return h.hexdigest()


def _rank(entry: dict) -> int:
    return 1 if entry.get("method") == "exact" else 0


def _merge(old: dict | None, new: dict) -> dict:
    if old is not None and _rank(old) > _rank(new):
        return old
    return new


class ForbCache:
    def __init__(self, path: str | os.PathLike | None = None, timestamps: bool = True):
        self.path = Path(path) if path is not None else None
        self.timestamps = timestamps
        self.entries: dict[tuple[int, int, str], dict] = {}
        if self.path is not None and self.path.exists():
            self.entries = self._read(self.path)

    @staticmethod
    def _read(path: Path) -> dict:
        out: dict[tuple[int, int, str], dict] = {}
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    e = json.loads(line)
                    key = (int(e["m"]), int(e["r"]), str(e["digest"]))
                    if e.get("method") not in METHODS or not isinstance(e.get("value"), int):
                        raise ValueError("bad method or value")
                except (ValueError, KeyError, TypeError) as exc:
                    log.warning("%s:%d: skipping corrupt cache line (%s)", path, lineno, exc)
                    continue
                out[key] = _merge(out.get(key), e)
        return out

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, m: int, r: int, members) -> dict | None:
        return self.entries.get((m, r, family_digest(m, r, members)))

    def record(self, m: int, r: int, members, value: int, method: str = "exact",
               witness: RMatrix | None = None) -> dict:
        if method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        key = (m, r, family_digest(m, r, members))
        entry = {"m": m, "r": r, "digest": key[2], "value": int(value), "method": method}
        if witness is not None:
            entry["witness"] = [list(c) for c in witness.columns]
        if self.timestamps:
            entry["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        kept = _merge(self.entries.get(key), entry)
        self.entries[key] = kept
        return kept

    def save(self, path: str | os.PathLike | None = None) -> None:
        """Merge with whatever is on disk now, then rewrite atomically."""
        target = Path(path) if path is not None else self.path
        if target is None:
            raise ValueError("no cache path")
        merged = self._read(target) if target.exists() else {}
        for key, e in self.entries.items():
            merged[key] = _merge(merged.get(key), e)
        self.entries = merged
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=target.name, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            for key in sorted(merged):
                fh.write(json.dumps(merged[key], sort_keys=True) + "\n")
        os.replace(tmp, target)


__all__ = ["ForbCache", "family_digest", "METHODS"]
