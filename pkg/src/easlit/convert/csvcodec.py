"""Tabular item codec: RFC-4180 CSV with pipe-separated multi-value cells.

Pipes inside values are escaped as ``\\|`` and backslashes as ``\\\\``. The
format is deliberately lossy (extension quads are dropped); the JSON-LD
export is the lossless path.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

from ..rdf import is_absolute_iri
from ..vocab import BLOOM_IRIS, BLOOM_LEVEL_BY_IRI

COLUMNS = ["id", "stem", "answers", "correct", "points",
           "bloom_level", "domain_uris", "outcome_uris", "version"]

META_PREFIX = "#!"


class CsvFormatError(ValueError):
    pass


def escape_value(value: str) -> str:
    return value.replace("\\", "\\\\").replace("|", "\\|")


def unescape_value(value: str) -> str:
    out = []
    i = 0
    while i < len(value):
        if value[i] == "\\" and i + 1 < len(value):
            out.append(value[i + 1])
            i += 2
        else:
            out.append(value[i])
            i += 1
    return "".join(out)


def join_multi(values: list[str]) -> str:
    return "|".join(escape_value(v) for v in values)


def split_multi(cell: str) -> list[str]:
    """Split on unescaped pipes; an empty cell carries no values."""
    if cell == "":
        return []
    parts = []
    current = []
    i = 0
    while i < len(cell):
        ch = cell[i]
        if ch == "\\" and i + 1 < len(cell):
            current.append(ch)
            current.append(cell[i + 1])
            i += 2
        elif ch == "|":
            parts.append("".join(current))
            current = []
            i += 1
        else:
            current.append(ch)
            i += 1
    parts.append("".join(current))
    return [unescape_value(p) for p in parts]


@dataclass
class CsvRow:
    id: str = ""  # empty = new item
    stem: str = ""
    answers: list[str] = field(default_factory=list)
    correct: list[bool] = field(default_factory=list)
    points: str = "0"
    bloom_level: str | None = None  # short level name
    domain_uris: list[str] = field(default_factory=list)
    outcome_uris: list[str] = field(default_factory=list)
    version: int | None = None

    def validate(self) -> None:
        if self.id and not is_absolute_iri(self.id):
            raise CsvFormatError(f"id must be empty or an absolute IRI: {self.id!r}")
        if len(self.answers) != len(self.correct):
            raise CsvFormatError(
                f"answers ({len(self.answers)}) and correct ({len(self.correct)}) "
                "must have equal multiplicity")
        try:
            if Decimal(self.points) < 0:
                raise CsvFormatError(f"points must be non-negative: {self.points!r}")
        except InvalidOperation:
            raise CsvFormatError(f"points does not parse as decimal: {self.points!r}")
        if self.bloom_level is not None and self.bloom_level not in BLOOM_IRIS:
            raise CsvFormatError(f"unknown bloom_level: {self.bloom_level!r}")
        if self.version is not None and self.version < 1:
            raise CsvFormatError(f"version must be positive: {self.version}")

    def to_cells(self) -> list[str]:
        return [
            self.id,
            self.stem,
            join_multi(self.answers),
            join_multi(["1" if c else "0" for c in self.correct]),
            self.points,
            self.bloom_level or "",
            join_multi(sorted(self.domain_uris)),
            join_multi(sorted(self.outcome_uris)),
            str(self.version) if self.version is not None else "",
        ]

    @classmethod
    def from_cells(cls, cells: list[str]) -> "CsvRow":
        if len(cells) != len(COLUMNS):
            raise CsvFormatError(f"expected {len(COLUMNS)} cells, got {len(cells)}")
        corrects = []
        for flag in split_multi(cells[3]):
            if flag not in ("0", "1"):
                raise CsvFormatError(f"correct entries must be 0 or 1, got {flag!r}")
            corrects.append(flag == "1")
        version = None
        if cells[8].strip():
            try:
                version = int(cells[8])
            except ValueError:
                raise CsvFormatError(f"version does not parse: {cells[8]!r}")
        row = cls(
            id=cells[0],
            stem=cells[1],
            answers=split_multi(cells[2]),
            correct=corrects,
            points=cells[4] or "0",
            bloom_level=cells[5] or None,
            domain_uris=split_multi(cells[6]),
            outcome_uris=split_multi(cells[7]),
            version=version,
        )
        row.validate()
        return row


def encode_csv(rows: list[CsvRow], instance_base: str, exported_at: str,
               errors: list[str] | None = None, sort_rows: bool = True) -> str:
    out = io.StringIO()
    out.write(f"{META_PREFIX} easlit-instance: {instance_base}\n")
    out.write(f"{META_PREFIX} exported-at: {exported_at}\n")
    out.write(f"{META_PREFIX} lossy: extensions-omitted\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in sorted(rows, key=lambda r: r.id) if sort_rows else rows:
        writer.writerow(row.to_cells())
    for message in errors or []:
        out.write(f"{META_PREFIX} error: {message}\n")
    return out.getvalue()


@dataclass
class DecodedCsv:
    metadata: dict[str, str]
    rows: list[tuple[int, CsvRow]]  # (1-based data-row number, row)
    row_errors: list[tuple[int, str]]
    total_rows: int = 0


def decode_csv(text: str) -> DecodedCsv:
    """Strict header check; per-row failures are collected, not fatal."""
    text = text.replace("\r\n", "\n")
    metadata: dict[str, str] = {}
    body_lines = []
    for line in text.split("\n"):
        if line.startswith(META_PREFIX):
            payload = line[len(META_PREFIX):].strip()
            if payload.startswith("error:"):
                continue
            if ":" in payload:
                key, _, value = payload.partition(":")
                metadata[key.strip()] = value.strip()
        else:
            body_lines.append(line)
    reader = csv.reader(io.StringIO("\n".join(body_lines)))
    records = [r for r in reader if r]
    if not records or records[0] != COLUMNS:
        raise CsvFormatError(
            f"header row must be exactly {','.join(COLUMNS)}")
    decoded = DecodedCsv(metadata=metadata, rows=[], row_errors=[],
                         total_rows=len(records) - 1)
    for number, cells in enumerate(records[1:], start=1):
        try:
            decoded.rows.append((number, CsvRow.from_cells(cells)))
        except CsvFormatError as exc:
            decoded.row_errors.append((number, str(exc)))
    return decoded


def bloom_name(iri: str | None) -> str | None:
    return BLOOM_LEVEL_BY_IRI.get(iri) if iri else None
