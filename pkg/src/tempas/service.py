"""HTTP service over an open index.

Three fetch endpoints mirror the two-step result flow: /api/tags for
suggestion bars, /api/sites for the ranked site list (step one; carries
no version data), and /api/versions for one site's ranked versions
(step two). /api/meta reports corpus bounds for UI controls.

Errors are JSON {code, message} with codes bad_query, bad_period,
not_found, internal mapped to 400/400/404/500.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi import Query as QueryParam
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import engine
from .index import IndexReader
from .ingest import MalformedLine, normalize_tag
from .model import Month, Query, TimePeriod


class ApiError(Exception):
    def __init__(self, code: str, message: str, http_status: int):
        super().__init__(message)
        self.code = code
        self.message = message
        self.http_status = http_status


def bad_query(message: str) -> ApiError:
    return ApiError("bad_query", message, 400)


def bad_period(message: str) -> ApiError:
    return ApiError("bad_period", message, 400)


def not_found(message: str) -> ApiError:
    return ApiError("not_found", message, 404)


def parse_period(from_text: str, to_text: str) -> TimePeriod:
    try:
        start, end = Month.parse(from_text), Month.parse(to_text)
    except ValueError as exc:
        raise bad_period(str(exc)) from None
    if start > end:
        raise bad_period(f"period start {start} after end {end}")
    return TimePeriod(start, end)


def parse_tags(csv: str) -> frozenset[str]:
    tags = set()
    for raw in csv.split(","):
        try:
            tag = normalize_tag(raw)
        except MalformedLine as exc:
            raise bad_query(str(exc)) from None
        if tag is not None:
            tags.add(tag)
    return frozenset(tags)


# -- payload builders (shared with the CLI json/tsv output) ----------------


def meta_payload(index: IndexReader) -> dict:
    return {
        "record_count": index.record_count,
        "tag_count": index.tag_count,
        "url_count": index.url_count,
        "month_min": str(index.month_min) if index.month_min else None,
        "month_max": str(index.month_max) if index.month_max else None,
    }


def tags_payload(ranked: list[engine.RankedTag]) -> list[dict]:
    return [{"tag": r.tag, "score": r.score} for r in ranked]


def sites_payload(ranked: list[engine.RankedSite]) -> list[dict]:
    return [{"url": r.url, "score": r.score, "title": list(r.title)} for r in ranked]


def versions_payload(ranked: list[engine.RankedVersion], url: str) -> list[dict]:
    return [
        {
            "timestamp": v.time,
            "iso_time": engine.iso_utc(v.time),
            "tags": sorted(v.tags),
            "overlap": v.overlap,
            "wayback_url": engine.wayback_url(url, v.time),
        }
        for v in ranked
    ]


def create_app(index: IndexReader, *, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="tempas", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.http_status, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"code": "bad_query", "message": str(exc.errors())}
        )

    @app.exception_handler(Exception)
    async def handle_internal(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500, content={"code": "internal", "message": str(exc)}
        )

    def check_limit(value: int, name: str) -> int:
        if value < 0:
            raise bad_query(f"{name} must be non-negative")
        return value

    @app.get("/api/meta")
    async def meta():
        return meta_payload(index)

    @app.get("/api/tags")
    async def tags(
        tags: str = "",
        from_: str = QueryParam("", alias="from"),
        to: str = "",
        limit: int = engine.DEFAULT_TAG_LIMIT,
    ):
        period = parse_period(from_, to)
        query_tags = parse_tags(tags)
        check_limit(limit, "limit")
        if query_tags:
            ranked = engine.retrieve_tags(index, Query(query_tags, period), limit)
        else:
            ranked = engine.explore_tags(index, period, limit)
        return tags_payload(ranked)

    @app.get("/api/sites")
    async def sites(
        tags: str = "",
        from_: str = QueryParam("", alias="from"),
        to: str = "",
        limit: int = engine.DEFAULT_SITE_LIMIT,
        offset: int = 0,
    ):
        period = parse_period(from_, to)
        query_tags = parse_tags(tags)
        if not query_tags:
            raise bad_query("sites need at least one query tag")
        check_limit(limit, "limit")
        check_limit(offset, "offset")
        ranked = engine.retrieve_sites(index, Query(query_tags, period), limit, offset)
        return sites_payload(ranked)

    @app.get("/api/versions")
    async def versions(
        url: str = "",
        tags: str = "",
        from_: str = QueryParam("", alias="from"),
        to: str = "",
    ):
        period = parse_period(from_, to)
        query_tags = parse_tags(tags)
        if not url:
            raise bad_query("versions need a url")
        if not query_tags:
            raise bad_query("versions need at least one query tag")
        if index.url_id(url) is None:
            raise not_found(f"url not indexed: {url}")
        ranked = engine.retrieve_versions(index, url, Query(query_tags, period))
        return versions_payload(ranked, url)

    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    return app
