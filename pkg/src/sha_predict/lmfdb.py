"""LMFDB client and prediction-vs-database comparison.

The comparison is informational only: a mismatch between a predicted order
and the analytic Sha order stored in the database is reported, never treated
as an error.
"""

from __future__ import annotations

import json
import logging
import threading
import time
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Literal

from .config import LmfdbConfig
from .errors import FetchError, ParseError
from .orders import split_discriminant

__all__ = [
    "ComparisonReport",
    "ComparisonRow",
    "CurveRecord",
    "LmfdbClient",
    "canonical_query",
    "compare_report",
    "fetch_cm_curves",
    "replay_transport",
    "urllib_transport",
]

log = logging.getLogger(__name__)

Transport = Callable[[str], str]
CachePolicy = Literal["prefer-cache", "refresh"]

FIELDS = ("lmfdb_label", "cm", "sha")


@dataclass(frozen=True)
class CurveRecord:
    label: str
    cm_disc: int
    analytic_sha: int | None
    source_url: str
    fetched_at: str  # ISO-8601, UTC

    def __post_init__(self):
        if self.cm_disc >= 0:
            raise ValueError(f"{self.label}: CM discriminant must be negative, got {self.cm_disc}")
        if self.analytic_sha is not None and self.analytic_sha < 1:
            raise ValueError(f"{self.label}: analytic Sha must be positive, got {self.analytic_sha}")


def canonical_query(query: dict) -> str:
    """Stable text form of a filter set, used as the cache key."""
    if not query:
        raise ValueError("empty query")
    return "&".join(f"{k}={query[k]}" for k in sorted(query))


def _api_value(v) -> str:
    # the LMFDB API marks integer filters with an "i" prefix
    return f"i{v}" if isinstance(v, int) else str(v)


def _utcnow() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def urllib_transport(timeout: float = 30.0) -> Transport:
    def get(url: str) -> str:
        req = urllib.request.Request(url, headers={"User-Agent": "sha-predict"})
        with urllib.request.urlopen(req, timeout=timeout) as resp:
            return resp.read().decode("utf-8")
    return get


def replay_transport(api_dir) -> Transport:
    """Serve saved API bodies from ``api_dir/<canonical query>.json``.

    A missing file raises ``OSError`` just as an unreachable server would.
    """
    api_dir = Path(api_dir)

    def get(url: str) -> str:
        qs = urllib.parse.parse_qs(urllib.parse.urlparse(url).query)
        query = {k: v[0][1:] if v[0].startswith("i") else v[0]
                 for k, v in qs.items() if not k.startswith("_")}
        path = api_dir / f"{canonical_query(query)}.json"
        if not path.is_file():
            raise OSError(f"no saved response {path.name}")
        return path.read_text()
    return get


class LmfdbClient:
    """Rate-limited fetches of ``ec_curvedata`` with a JSON file cache.

    ``transport`` maps a URL to a response body; tests pass a fake.  In
    ``offline`` mode the transport is never called.
    """

    def __init__(self, config: LmfdbConfig | None = None, transport: Transport | None = None,
                 offline: bool = False, clock: Callable[[], str] = _utcnow):
        self.config = config or LmfdbConfig.load()
        self.transport = transport or urllib_transport(self.config.timeout)
        self.offline = offline
        self.clock = clock
        self._last_request = 0.0
        self._write_lock = threading.Lock()

    # -- cache -------------------------------------------------------------
    def cache_path(self, key: str) -> Path:
        safe = key.replace("&", "__").replace("/", "_")
        return Path(self.config.cache_dir) / f"{safe}.json"

    def read_cache(self, key: str) -> list[CurveRecord] | None:
        path = self.cache_path(key)
        if not path.is_file():
            return None
        text = path.read_text()
        try:
            doc = json.loads(text)
            return [CurveRecord(**r) for r in doc["records"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"corrupt cache file {path}", text[:200]) from exc

    def write_cache(self, key: str, records: list[CurveRecord]) -> Path:
        path = self.cache_path(key)
        doc = {"query": key, "records": [asdict(r) for r in records]}
        with self._write_lock:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(_dump(doc))
            tmp.replace(path)
        return path

    # -- network -----------------------------------------------------------
    def url_for(self, query: dict) -> str:
        params = {k: _api_value(query[k]) for k in sorted(query)}
        params["_format"] = "json"
        params["_fields"] = ",".join(FIELDS)
        base = self.config.base_url.rstrip("/")
        return f"{base}/ec_curvedata/?{urllib.parse.urlencode(params, safe=',')}"

    def _get(self, url: str) -> str:
        wait = self.config.min_interval - (time.monotonic() - self._last_request)
        if wait > 0:
            time.sleep(wait)
        try:
            return self.transport(url)
        except (urllib.error.URLError, OSError, TimeoutError) as exc:
            raise FetchError(f"GET {url} failed: {exc}") from exc
        finally:
            self._last_request = time.monotonic()

    def parse(self, body: str, url: str, fetched_at: str) -> list[CurveRecord]:
        try:
            doc = json.loads(body)
            rows = doc["data"]
            records = []
            for row in rows:
                sha = row.get("sha")
                records.append(CurveRecord(
                    label=str(row["lmfdb_label"]),
                    cm_disc=int(row["cm"]),
                    analytic_sha=None if sha is None else int(sha),
                    source_url=url,
                    fetched_at=fetched_at,
                ))
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"malformed LMFDB response from {url}", body[:200]) from exc
        return records

    def fetch(self, query: dict, cache_policy: CachePolicy = "prefer-cache") -> list[CurveRecord]:
        if cache_policy not in ("prefer-cache", "refresh"):
            raise ValueError(f"unknown cache policy {cache_policy!r}")
        key = canonical_query(query)
        cached = self.read_cache(key)
        if self.offline:
            if cached is None:
                raise FetchError(f"offline and no cache entry for {key!r}")
            return cached
        if cached is not None and cache_policy == "prefer-cache":
            return cached
        url = self.url_for(query)
        try:
            body = self._get(url)
        except FetchError:
            if cached is None:
                raise
            log.warning("refresh of %s failed; serving cached copy", key)
            return cached
        records = self.parse(body, url, self.clock())
        self.write_cache(key, records)
        return records


def fetch_cm_curves(query: dict, cache_policy: CachePolicy = "prefer-cache",
                    client: LmfdbClient | None = None) -> list[CurveRecord]:
    """Curves matching ``query`` (e.g. ``{"cm": -7}``)."""
    return (client or LmfdbClient()).fetch(query, cache_policy)


# --------------------------------------------------------------------------
# comparison
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ComparisonRow:
    label: str | None
    cm_disc: int
    D: int
    f: int
    predicted_order: int
    analytic_order: int | None
    match: Literal["yes", "no", "unknown"]


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[ComparisonRow, ...]
    summary: dict

    def to_dict(self) -> dict:
        return {"rows": [asdict(r) for r in self.rows], "summary": dict(self.summary)}


def _D_f(cm_disc: int) -> tuple[int, int]:
    d_K, f = split_discriminant(cm_disc)
    return (-d_K if d_K % 4 == 1 else -d_K // 4), f


def compare_report(predictions, records) -> ComparisonReport:
    """Join predictions (CMCurveReport) with records on the CM discriminant.

    A prediction without matching records yields one ``unknown`` row.
    """
    by_disc: dict[int, list[CurveRecord]] = {}
    for r in records:
        by_disc.setdefault(r.cm_disc, []).append(r)
    rows = []
    for p in predictions:
        disc = p.R.disc
        D, f = _D_f(disc)
        matched = sorted(by_disc.get(disc, []), key=lambda r: r.label)
        if not matched:
            rows.append(ComparisonRow(None, disc, D, f, p.sha.order, None, "unknown"))
        for r in matched:
            if r.analytic_sha is None:
                verdict = "unknown"
            else:
                verdict = "yes" if r.analytic_sha == p.sha.order else "no"
            rows.append(ComparisonRow(r.label, disc, D, f, p.sha.order, r.analytic_sha, verdict))
    rows.sort(key=lambda r: (r.D, r.f, r.label or ""))
    summary = {k: sum(r.match == k for r in rows) for k in ("yes", "no", "unknown")}
    return ComparisonReport(tuple(rows), summary)
