#!/usr/bin/env python3
"""Record API responses for the UI replay tests.

Builds the 20-record demo corpus into a throwaway index, walks the
request set the scripted UI session issues (explore bar, obama bar,
obama+election bar, both site lists, versions for every listed site)
through the real service, and saves path->body JSON the mock fetch in
the vitest suite serves verbatim. Query strings use the same canonical
parameter order as the browser client.

Usage: python3 frontend/scripts/record-fixtures.py  (from the repo root)
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path
from urllib.parse import urlencode

REPO_ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(REPO_ROOT / "tests"))

from fastapi.testclient import TestClient

from demo_fixture import DEMO_RECORDS
from tempas.index import build_index
from tempas.service import create_app

PERIOD = {"from": "2005-01", "to": "2008-12"}
PREFIXES = [[], ["obama"], ["obama", "election"]]
OUT_PATH = REPO_ROOT / "frontend" / "tests" / "fixtures" / "api.json"


def tags_url(tags: list[str]) -> str:
    return "/api/tags?" + urlencode([("tags", ",".join(tags)), ("from", PERIOD["from"]), ("to", PERIOD["to"])])


def sites_url(tags: list[str]) -> str:
    return "/api/sites?" + urlencode([("tags", ",".join(tags)), ("from", PERIOD["from"]), ("to", PERIOD["to"])])


def versions_url(url: str, tags: list[str]) -> str:
    return "/api/versions?" + urlencode(
        [("url", url), ("tags", ",".join(tags)), ("from", PERIOD["from"]), ("to", PERIOD["to"])]
    )


def main() -> None:
    fixtures: dict[str, object] = {}
    with tempfile.TemporaryDirectory() as tmp:
        with build_index(DEMO_RECORDS, Path(tmp) / "ix") as index:
            with TestClient(create_app(index)) as client:
                def record(path: str) -> object:
                    resp = client.get(path)
                    assert resp.status_code == 200, f"{path}: {resp.status_code}"
                    fixtures[path] = resp.json()
                    return fixtures[path]

                record("/api/meta")
                for prefix in PREFIXES:
                    record(tags_url(prefix))
                for query in PREFIXES[1:]:
                    sites = record(sites_url(query))
                    for row in sites:  # type: ignore[union-attr]
                        record(versions_url(row["url"], query))

    OUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    OUT_PATH.write_text(json.dumps(fixtures, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {OUT_PATH} ({len(fixtures)} responses)")


if __name__ == "__main__":
    main()
