"""`easlit-batch`: fetch, transform, and push item sets as CSV."""

from __future__ import annotations

import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

import click
import httpx

from .core import (
    EXIT_ERRORS,
    BatchError,
    InstanceReference,
    TransformOptions,
    current_instance_base,
    fetch_csv,
    parse_rows,
    parse_where,
    push_csv,
    render_report,
    transform_csv,
)


def make_clients(ref: InstanceReference):
    """(item client, convert client); replaced wholesale in tests."""
    headers = {"Authorization": f"Bearer {ref.api_token}"} if ref.api_token else {}
    return (
        httpx.Client(base_url=ref.item_service_url, headers=headers, timeout=30),
        httpx.Client(base_url=ref.convert_service_url, headers=headers, timeout=30),
    )


def _fail(exc: BatchError):
    click.echo(str(exc), err=True)
    sys.exit(exc.exit_code)


@click.group()
@click.option("--config", "config_path", type=click.Path(path_type=Path),
              default=None, help="Instance reference file "
              "(default: $EASLIT_BATCH_CONFIG or ~/.easlit-batch.json).")
@click.pass_context
def main(ctx: click.Context, config_path: Path | None) -> None:
    """Batch item editing against a configured instance."""
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path


def _reference(ctx: click.Context) -> InstanceReference:
    try:
        return InstanceReference.load(ctx.obj.get("config_path"))
    except BatchError as exc:
        _fail(exc)


@main.command()
@click.argument("out_path", type=click.Path(path_type=Path))
@click.option("--ids", default=None,
              help="Comma-separated item IRIs; default exports everything.")
@click.pass_context
def fetch(ctx: click.Context, out_path: Path, ids: str | None) -> None:
    """Export items into a CSV file for offline editing."""
    _, convert_http = make_clients(_reference(ctx))
    try:
        count = fetch_csv(convert_http, out_path, ids)
    except BatchError as exc:
        _fail(exc)
    click.echo(f"wrote {count} rows to {out_path}")


@main.command()
@click.argument("in_path", type=click.Path(path_type=Path, exists=True))
@click.argument("out_path", type=click.Path(path_type=Path))
@click.option("--points-delta", default=None,
              help="Add this amount to every selected row's points.")
@click.option("--replace", "replace_text", nargs=2, default=None,
              metavar="FROM TO", help="Literal substitution in answer texts.")
@click.option("--duplicate", type=int, default=None,
              help="Append N copies of selected rows with id/version cleared.")
@click.option("--where", default=None, metavar="COLUMN=VALUE",
              help="Select rows whose cell equals VALUE exactly.")
@click.option("--rows", default=None, metavar="A..B",
              help="Select a 1-based inclusive data-row range.")
@click.option("--clamp", is_flag=True, help="Floor negative points at 0.")
def transform(in_path: Path, out_path: Path, points_delta, replace_text,
              duplicate, where, rows, clamp) -> None:
    """Apply batch edits to a fetched CSV file (no network)."""
    try:
        opts = TransformOptions(
            points_delta=_decimal_or_fail(points_delta),
            replace_text=tuple(replace_text) if replace_text else None,
            duplicate=duplicate,
            where=parse_where(where) if where else None,
            rows=parse_rows(rows) if rows else None,
            clamp=clamp,
        )
        text, touched = transform_csv(in_path.read_text(encoding="utf-8"), opts)
    except BatchError as exc:
        _fail(exc)
    out_path.write_text(text, encoding="utf-8")
    click.echo(f"transformed {touched} rows into {out_path}")


def _decimal_or_fail(value):
    if value is None:
        return None
    try:
        return Decimal(value)
    except InvalidOperation:
        _fail(BatchError(f"--points-delta must be a decimal, got {value!r}"))


@main.command()
@click.argument("in_path", type=click.Path(path_type=Path, exists=True))
@click.option("--force", is_flag=True,
              help="Skip the exported-from-this-instance guard.")
@click.pass_context
def push(ctx: click.Context, in_path: Path, force: bool) -> None:
    """Upload an edited CSV file back to its origin instance."""
    item_http, convert_http = make_clients(_reference(ctx))
    try:
        report = push_csv(convert_http, item_http,
                          in_path.read_text(encoding="utf-8"), force=force)
    except BatchError as exc:
        _fail(exc)
    click.echo(render_report(report))
    if report["errors"]:
        sys.exit(EXIT_ERRORS)


@main.command()
@click.pass_context
def info(ctx: click.Context) -> None:
    """Show the configured instance and its live base IRI."""
    ref = _reference(ctx)
    item_http, _ = make_clients(ref)
    try:
        base = current_instance_base(item_http)
    except BatchError as exc:
        _fail(exc)
    click.echo(f"item service:    {ref.item_service_url}")
    click.echo(f"convert service: {ref.convert_service_url}")
    click.echo(f"instance base:   {base}")


if __name__ == "__main__":
    main()
