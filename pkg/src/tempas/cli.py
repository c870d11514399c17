"""Operator command line: build indexes, inspect them, query, serve.

Every option can also be set through a TEMPAS_-prefixed environment
variable (e.g. TEMPAS_QUERY_INDEX). Exit codes: 0 success, 1 runtime
failure, 2 usage error.
"""

from __future__ import annotations

import json
import re
import shutil
import sys
from pathlib import Path

import click

from . import engine, service
from .index import DEFAULT_MEMORY_CAP, CorruptIndexError, build_index, open_index
from .index.encoding import MANIFEST_NAME, MAPPING_NAMES
from .ingest import IngestStats, parse_path
from .model import Month, Query, TimePeriod

_SIZE_RE = re.compile(r"^(\d+)([kmg]?)$")
_SIZE_FACTORS = {"": 1, "k": 1 << 10, "m": 1 << 20, "g": 1 << 30}


def _parse_size(ctx, param, value: str) -> int:
    m = _SIZE_RE.match(value.strip().lower())
    if not m:
        raise click.BadParameter(f"not a size: {value!r} (use e.g. 512m, 2g)")
    return int(m.group(1)) * _SIZE_FACTORS[m.group(2)]


def _parse_period(from_: str, to: str) -> TimePeriod:
    try:
        start, end = Month.parse(from_), Month.parse(to)
        return TimePeriod(start, end)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None


def _open(index_dir: Path):
    try:
        return open_index(index_dir)
    except CorruptIndexError as exc:
        raise click.ClickException(str(exc)) from None


def _emit_rows(fmt: str, columns: list[str], rows: list[list], payload) -> None:
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2))
    elif fmt == "tsv":
        for row in rows:
            click.echo("\t".join(str(c) for c in row))
    else:
        widths = [
            max(len(col), *(len(str(row[i])) for row in rows)) if rows else len(col)
            for i, col in enumerate(columns)
        ]
        click.echo("  ".join(col.ljust(w) for col, w in zip(columns, widths)))
        for row in rows:
            click.echo("  ".join(str(c).ljust(w) for c, w in zip(row, widths)))


@click.group(context_settings={"auto_envvar_prefix": "TEMPAS"})
def main() -> None:
    """Temporal tag search over social bookmarking dumps."""


@main.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "-o", "out_dir", required=True, type=click.Path(file_okay=False, path_type=Path))
@click.option("--gzip/--no-gzip", "gzip_flag", default=None, help="Force gzip on/off; default sniffs the .gz extension.")
@click.option("--memory-cap", default="1g", show_default=True, callback=_parse_size, envvar="TEMPAS_MEMORY_CAP", help="External sort memory budget.")
def build(input_path: Path, out_dir: Path, gzip_flag: bool | None, memory_cap: int) -> None:
    """Build an index directory from a bookmark dump."""
    stats = IngestStats()
    try:
        reader = build_index(
            parse_path(input_path, gzip=gzip_flag, stats=stats),
            out_dir,
            memory_cap=memory_cap or DEFAULT_MEMORY_CAP,
        )
    except Exception as exc:
        _remove_partial(out_dir)
        raise click.ClickException(f"build failed: {exc}") from None
    with reader:
        for key, value in stats.as_dict().items():
            click.echo(f"{key}: {value}")
        for name, count in reader.entry_counts().items():
            click.echo(f"{name} entries: {count}")


def _remove_partial(out_dir: Path) -> None:
    # Only ever deletes files this tool writes, then the directory if empty.
    if not out_dir.is_dir():
        return
    for name in MAPPING_NAMES:
        (out_dir / f"{name}.bin").unlink(missing_ok=True)
    (out_dir / MANIFEST_NAME).unlink(missing_ok=True)
    if not any(out_dir.iterdir()):
        out_dir.rmdir()


@main.command()
@click.argument("kind", type=click.Choice(["tags", "sites", "versions", "explore"]))
@click.option("--index", "index_dir", required=True, type=click.Path(exists=True, file_okay=False, path_type=Path), envvar="TEMPAS_INDEX")
@click.option("--tags", default="", help="Comma-separated query tags.")
@click.option("--from", "from_", required=True, help="Period start, YYYY-MM.")
@click.option("--to", required=True, help="Period end, YYYY-MM.")
@click.option("--limit", type=int, default=None, help="Result cap (defaults per kind).")
@click.option("--offset", type=int, default=0, help="Pagination offset (sites only).")
@click.option("--url", default=None, help="Site URL (versions only).")
@click.option("--format", "fmt", type=click.Choice(["table", "json", "tsv"]), default="table", show_default=True)
def query(kind, index_dir, tags, from_, to, limit, offset, url, fmt) -> None:
    """Run one ad-hoc query against an index."""
    period = _parse_period(from_, to)
    try:
        query_tags = service.parse_tags(tags)
    except service.ApiError as exc:
        raise click.UsageError(exc.message) from None
    if kind in ("tags", "sites", "versions") and not query_tags:
        raise click.UsageError(f"query {kind} needs --tags")
    if kind == "versions" and not url:
        raise click.UsageError("query versions needs --url")

    with _open(index_dir) as index:
        if kind in ("tags", "explore"):
            n = limit if limit is not None else engine.DEFAULT_TAG_LIMIT
            if kind == "tags":
                ranked = engine.retrieve_tags(index, Query(query_tags, period), n)
            else:
                ranked = engine.explore_tags(index, period, n)
            payload = service.tags_payload(ranked)
            rows = [[r["tag"], r["score"]] for r in payload]
            _emit_rows(fmt, ["tag", "score"], rows, payload)
        elif kind == "sites":
            n = limit if limit is not None else engine.DEFAULT_SITE_LIMIT
            ranked = engine.retrieve_sites(index, Query(query_tags, period), n, offset)
            payload = service.sites_payload(ranked)
            rows = [[r["url"], r["score"], " ".join(r["title"])] for r in payload]
            _emit_rows(fmt, ["url", "score", "title"], rows, payload)
        else:
            if index.url_id(url) is None:
                raise click.ClickException(f"url not indexed: {url}")
            ranked = engine.retrieve_versions(index, url, Query(query_tags, period))
            payload = service.versions_payload(ranked, url)
            rows = [
                [r["timestamp"], r["iso_time"], r["overlap"], ",".join(r["tags"]), r["wayback_url"]]
                for r in payload
            ]
            _emit_rows(fmt, ["timestamp", "iso_time", "overlap", "tags", "wayback_url"], rows, payload)


@main.command()
@click.option("--index", "index_dir", required=True, type=click.Path(exists=True, file_okay=False, path_type=Path), envvar="TEMPAS_INDEX")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table", show_default=True)
def stats(index_dir: Path, fmt: str) -> None:
    """Show corpus counts, month span and per-mapping entry counts."""
    with _open(index_dir) as index:
        payload = dict(service.meta_payload(index))
        payload["entries"] = index.entry_counts()
        if fmt == "json":
            click.echo(json.dumps(payload, indent=2))
            return
        for key in ("record_count", "tag_count", "url_count", "month_min", "month_max"):
            click.echo(f"{key}: {payload[key]}")
        for name, count in payload["entries"].items():
            click.echo(f"{name} entries: {count}")


@main.command()
@click.option("--index", "index_dir", required=True, type=click.Path(exists=True, file_okay=False, path_type=Path), envvar="TEMPAS_INDEX")
@click.option("--host", default="127.0.0.1", show_default=True, envvar="TEMPAS_HOST")
@click.option("--port", default=8887, show_default=True, type=int, envvar="TEMPAS_PORT")
@click.option("--ui", "ui_dir", type=click.Path(exists=True, file_okay=False, path_type=Path), default=None, help="Static UI bundle to serve at /.")
def serve(index_dir: Path, host: str, port: int, ui_dir: Path | None) -> None:
    """Serve the query API (and optionally the UI) until interrupted."""
    import uvicorn

    index = _open(index_dir)
    app = service.create_app(index, ui_dir=ui_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    except OSError as exc:
        raise click.ClickException(f"cannot bind {host}:{port}: {exc}") from None
    finally:
        index.close()


if __name__ == "__main__":
    main()
