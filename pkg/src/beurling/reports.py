"""Deterministic CSV report writing.

Every derived report opens with a `# table=<fingerprint>` line tying it to
the element table it was computed from; loaders refuse mismatched artifacts.
Floats are written with repr (shortest round-trip form), line endings are LF,
encoding UTF-8, so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import csv
from pathlib import Path


def fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_report(path, fingerprint: str, header: list[str], rows) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if fingerprint:
            fh.write(f"# table={fingerprint}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def read_report(path, expect_fingerprint: str | None = None):
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline().rstrip("\n")
        fingerprint = None
        if first.startswith("# table="):
            fingerprint = first.removeprefix("# table=")
            rows = list(csv.reader(fh))
        else:
            rows = list(csv.reader([first])) + list(csv.reader(fh))
    if expect_fingerprint is not None and fingerprint != expect_fingerprint:
        raise StaleArtifactError(
            f"{path}: fingerprint {fingerprint} does not match table {expect_fingerprint}"
        )
    return rows[0], rows[1:]


class StaleArtifactError(RuntimeError):
    """A derived report does not match the element table on disk."""
