"""Append-only JSON-lines store of exact invariant values."""

from __future__ import annotations

import fcntl
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .problem import ProblemSpec, canonical_key

__all__ = [
    "CACHE_VERSION",
    "CacheLockError",
    "CacheRecord",
    "ExactCache",
    "format_rational",
    "parse_rational",
]

log = logging.getLogger(__name__)

CACHE_VERSION = 1


class CacheLockError(RuntimeError):
    """Another process holds the cache file."""


def format_rational(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise ValueError(f"exact values are stored as strings, got {text!r}")
    return Fraction(text)


@dataclass(frozen=True)
class CacheRecord:
    key: str
    value: Fraction
    version: int = CACHE_VERSION

    def to_line(self) -> str:
        return json.dumps(
            {"key": self.key, "value": format_rational(self.value), "version": self.version},
            ensure_ascii=False,
        )

    @classmethod
    def from_line(cls, line: str) -> "CacheRecord":
        raw = json.loads(line)
        return cls(str(raw["key"]), parse_rational(raw["value"]), int(raw["version"]))


class ExactCache:
    """Persistent exact-value cache; the latest record for a key wins.

    The file is held under an exclusive, non-blocking lock for the lifetime
    of the object, so a second process fails fast.
    """

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self.hits = 0
        self.misses = 0
        self._index: dict[str, Fraction] = {}
        self._fh = open(self.path, "a+", encoding="utf-8")
        try:
            fcntl.flock(self._fh.fileno(), fcntl.LOCK_EX | fcntl.LOCK_NB)
        except BlockingIOError:
            self._fh.close()
            raise CacheLockError(f"cache {self.path} is locked by another process") from None
        self._load()

    def _load(self) -> None:
        self._fh.seek(0)
        lines = self._fh.read().splitlines()
        for lineno, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                record = CacheRecord.from_line(line)
            except (ValueError, KeyError, TypeError, ZeroDivisionError):
                log.warning("%s:%d: skipping corrupt cache line", self.path, lineno)
                continue
            if record.version != CACHE_VERSION:
                continue
            self._index[record.key] = record.value
        # a torn final write leaves no newline; start the next record cleanly
        self._fh.seek(0, 2)
        if self._fh.tell() and not self._ends_with_newline():
            self._fh.write("\n")

    def _ends_with_newline(self) -> bool:
        with open(self.path, "rb") as raw:
            raw.seek(-1, 2)
            return raw.read(1) == b"\n"

    def close(self) -> None:
        if not self._fh.closed:
            self._fh.flush()
            fcntl.flock(self._fh.fileno(), fcntl.LOCK_UN)
            self._fh.close()

    def __enter__(self) -> "ExactCache":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def __len__(self) -> int:
        return len(self._index)

    def get(self, key: str | bytes) -> Fraction | None:
        if isinstance(key, bytes):
            key = key.decode("utf-8")
        value = self._index.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, record: CacheRecord) -> None:
        self._fh.seek(0, 2)
        self._fh.write(record.to_line() + "\n")
        self._fh.flush()
        self._index[record.key] = record.value

    def get_invariant(self, kind: str, spec: ProblemSpec, **params: int) -> Fraction | None:
        return self.get(canonical_key(spec, kind, **params))

    def put_invariant(self, kind: str, spec: ProblemSpec, value, **params: int) -> None:
        key = canonical_key(spec, kind, **params).decode("utf-8")
        self.put(CacheRecord(key, Fraction(value)))

    def stats(self) -> dict[str, int]:
        return {"hits": self.hits, "misses": self.misses}
