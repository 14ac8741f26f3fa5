"""Batch editing core: fetch/transform/push over the conversion service."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from decimal import Decimal, InvalidOperation
from pathlib import Path

from ..convert.csvcodec import COLUMNS, CsvFormatError, CsvRow, decode_csv, encode_csv

DEFAULT_CONFIG_PATH = Path.home() / ".easlit-batch.json"

EXIT_OK = 0
EXIT_ERRORS = 1
EXIT_GUARD = 2


class BatchError(Exception):
    def __init__(self, message: str, exit_code: int = EXIT_ERRORS) -> None:
        super().__init__(message)
        self.exit_code = exit_code


@dataclass(frozen=True)
class InstanceReference:
    item_service_url: str
    convert_service_url: str
    api_token: str = ""

    @classmethod
    def load(cls, path: Path | str | None = None,
             environ=os.environ) -> "InstanceReference":
        path = Path(path or environ.get("EASLIT_BATCH_CONFIG", DEFAULT_CONFIG_PATH))
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise BatchError(f"no instance configuration at {path}")
        except json.JSONDecodeError as exc:
            raise BatchError(f"unreadable instance configuration {path}: {exc.msg}")
        try:
            return cls(
                item_service_url=raw["itemServiceUrl"].rstrip("/"),
                convert_service_url=raw["convertServiceUrl"].rstrip("/"),
                api_token=raw.get("apiToken", ""),
            )
        except KeyError as exc:
            raise BatchError(f"instance configuration missing key {exc}")


# -- fetch -------------------------------------------------------------------


def fetch_csv(convert_http, out_path: Path, ids: str | None = None) -> int:
    """Writes the export atomically (temp + rename); returns the row count."""
    params = {"ids": ids} if ids else {}
    try:
        r = convert_http.get("/export/items.csv", params=params)
    except Exception as exc:  # connection-level failure
        raise BatchError(f"export request failed: {exc}")
    if r.status_code != 200:
        raise BatchError(f"export failed with status {r.status_code}: {r.text.strip()}")
    decoded = decode_csv(r.text)  # sanity-check before touching disk
    tmp = out_path.with_name(out_path.name + ".tmp")
    tmp.write_text(r.text, encoding="utf-8")
    os.replace(tmp, out_path)
    return decoded.total_rows


# -- transform ---------------------------------------------------------------


@dataclass
class TransformOptions:
    points_delta: Decimal | None = None
    replace_text: tuple[str, str] | None = None
    duplicate: int | None = None
    where: tuple[str, str] | None = None  # (column, value), exact cell match
    rows: tuple[int, int] | None = None  # 1-based inclusive data-row range
    clamp: bool = False


def parse_where(spec: str) -> tuple[str, str]:
    column, sep, value = spec.partition("=")
    if not sep or column not in COLUMNS:
        raise BatchError(f"--where expects column=value with column in {COLUMNS}")
    return column, value


def parse_rows(spec: str) -> tuple[int, int]:
    try:
        first, _, last = spec.partition("..")
        bounds = (int(first), int(last))
    except ValueError:
        raise BatchError("--rows expects a range like 2..5")
    if bounds[0] < 1 or bounds[1] < bounds[0]:
        raise BatchError(f"--rows range out of order: {spec}")
    return bounds


def _selected(number: int, row: CsvRow, opts: TransformOptions) -> bool:
    if opts.rows is not None and not opts.rows[0] <= number <= opts.rows[1]:
        return False
    if opts.where is not None:
        column, value = opts.where
        cell = row.to_cells()[COLUMNS.index(column)]
        if cell != value:
            return False
    return True


def transform_csv(text: str, opts: TransformOptions) -> tuple[str, int]:
    """Pure over file contents; returns (output text, touched-row count)."""
    try:
        decoded = decode_csv(text)
    except CsvFormatError as exc:
        raise BatchError(f"input does not parse: {exc}")
    if decoded.row_errors:
        number, message = decoded.row_errors[0]
        raise BatchError(f"input row {number} does not parse: {message}")
    output: list[CsvRow] = []
    duplicates: list[CsvRow] = []
    touched = 0
    for number, row in decoded.rows:
        if not _selected(number, row, opts):
            output.append(row)
            continue
        touched += 1
        if opts.points_delta is not None:
            try:
                new_points = Decimal(row.points) + opts.points_delta
            except InvalidOperation:
                raise BatchError(f"row {number}: points {row.points!r} not a decimal")
            if new_points < 0:
                if not opts.clamp:
                    raise BatchError(
                        f"row {number}: points would become {new_points}; "
                        "pass --clamp to floor at 0")
                new_points = Decimal(0)
            row = replace(row, points=str(new_points))
        if opts.replace_text is not None:
            old, new = opts.replace_text
            row = replace(row, answers=[a.replace(old, new) for a in row.answers])
        if opts.duplicate:
            for _ in range(opts.duplicate):
                duplicates.append(replace(row, id="", version=None))
        output.append(row)
    out_text = encode_csv(
        output + duplicates,
        decoded.metadata.get("easlit-instance", ""),
        decoded.metadata.get("exported-at", ""),
        sort_rows=False,
    )
    return out_text, touched


# -- push --------------------------------------------------------------------


def current_instance_base(item_http) -> str:
    try:
        r = item_http.get("/healthz")
        r.raise_for_status()
        return r.json()["instanceBase"].rstrip("/")
    except Exception as exc:
        raise BatchError(f"cannot reach item service: {exc}")


def push_csv(convert_http, item_http, text: str, force: bool = False) -> dict:
    try:
        decoded = decode_csv(text)
    except CsvFormatError as exc:
        raise BatchError(f"input does not parse: {exc}")
    file_instance = decoded.metadata.get("easlit-instance", "").rstrip("/")
    if not force:
        live_instance = current_instance_base(item_http)
        if file_instance != live_instance:
            raise BatchError(
                f"file was exported from {file_instance or '(unknown)'} but the "
                f"configured instance is {live_instance}; pass --force to push anyway",
                EXIT_GUARD)
    try:
        r = convert_http.post("/import/items.csv", content=text,
                              headers={"Content-Type": "text/csv"})
    except Exception as exc:
        raise BatchError(f"import request failed: {exc}")
    if r.status_code != 200:
        raise BatchError(f"import failed with status {r.status_code}: {r.text.strip()}")
    return r.json()


def render_report(report: dict) -> str:
    lines = [
        f"{'created':<8} {report['created']['count']}",
        f"{'updated':<8} {report['updated']['count']}",
        f"{'skipped':<8} {report['skipped']}",
        f"{'errors':<8} {len(report['errors'])}",
    ]
    for entry in report["errors"]:
        lines.append(f"  row {entry['row']}: {entry['message']}")
    return "\n".join(lines)
