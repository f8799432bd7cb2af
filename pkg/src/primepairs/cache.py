"""On-disk CSV cache of computed constants.

One row per constant, keyed by (kind, k, q, P, schema_version). Rows from
other schema versions are ignored on load. New rows are appended with a
single write under an exclusive lock.
"""
from __future__ import annotations

import csv
import fcntl
import io
import os
from pathlib import Path

from .constants import EulerProductEstimate, odd_primes_upto

SCHEMA_VERSION = 1
FIELDS = ("kind", "k", "q", "P", "value", "vanished", "reducible", "schema_version")
ENV_VAR = "PRIMEPAIR_CACHE_DIR"
FILENAME = "constants.csv"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "primepairs"


class ConstantCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.path = self.directory / FILENAME
        self._rows: dict[tuple, tuple[float, bool, bool]] = {}
        self.load()

    def __len__(self):
        return len(self._rows)

    def load(self):
        self._rows.clear()
        if not self.path.exists():
            return
        with open(self.path, newline="") as fh:
            for row in csv.DictReader(fh):
                try:
                    if int(row["schema_version"]) != SCHEMA_VERSION:
                        continue
                    key = (row["kind"], int(row["k"]), int(row["q"]), int(row["P"]))
                    self._rows[key] = (
                        float(row["value"]),
                        row["vanished"] == "1",
                        row["reducible"] == "1",
                    )
                except (KeyError, TypeError, ValueError):
                    continue  # torn or foreign row

    def get(self, kind: str, k: int, q: int, P: int) -> EulerProductEstimate | None:
        hit = self._rows.get((kind, k, q, P))
        if hit is None:
            return None
        value, vanished, reducible = hit
        used = 0 if reducible else len(odd_primes_upto(P))
        return EulerProductEstimate(value, P, used, vanished, reducible)

    def put(self, kind: str, k: int, q: int, P: int, est: EulerProductEstimate):
        key = (kind, k, q, P)
        if key in self._rows:
            return
        self._rows[key] = (est.value, est.vanished, est.reducible)
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow(
            [kind, k, q, P, repr(est.value), int(est.vanished), int(est.reducible), SCHEMA_VERSION]
        )
        self.directory.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", newline="") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                # decide on the header under the lock so two writers never both add one
                if os.fstat(fh.fileno()).st_size == 0:
                    fh.write(",".join(FIELDS) + "\n")
                fh.write(buf.getvalue())
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def get_or_compute(self, kind, k, q, P, compute) -> EulerProductEstimate:
        est = self.get(kind, k, q, P)
        if est is None:
            est = compute()
            self.put(kind, k, q, P, est)
        return est

    def clear(self):
        self._rows.clear()
        if self.path.exists():
            self.path.unlink()
