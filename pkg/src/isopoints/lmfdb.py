"""Rank data for elliptic curves from the LMFDB, behind an on-disk cache.

This is the only module that touches the network.  Records are cached as
JSON files keyed by label; once cached a record is served from disk unless
``refresh`` is requested.  Tests inject a fake ``fetcher``.
"""

from __future__ import annotations

import json
import os
import re
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

from .errors import NotFoundError, OfflineError, PayloadParseError, PreconditionError

API_URL = "https://www.lmfdb.org/api/ec_curvedata/"
CACHE_ENV = "ISOPOINTS_CACHE_DIR"
_LABEL = re.compile(r"^\d+\.[a-z]+\d*$")

Fetcher = Callable[[str], bytes]


@dataclass(frozen=True)
class RankRecord:
    label: str
    rank: int
    torsion_structure: tuple[int, ...]
    generators: tuple = ()
    fetched_at: str = ""
    source_url: str = ""
    provenance: str = field(default="network", compare=False)


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else Path.home() / ".cache" / "isopoints"


def record_url(label: str) -> str:
    query = urllib.parse.urlencode({"lmfdb_label": label, "_format": "json",
                                    "_fields": "lmfdb_label,rank,torsion_structure,gens"})
    return f"{API_URL}?{query}"


def _default_fetcher(url: str) -> bytes:
    req = urllib.request.Request(url, headers={"User-Agent": "isopoints"})
    with urllib.request.urlopen(req, timeout=20) as resp:
        return resp.read()


def parse_payload(label: str, raw: bytes | str, url: str = "") -> RankRecord:
    try:
        payload = json.loads(raw)
    except (ValueError, TypeError) as exc:
        raise PayloadParseError(f"response is not JSON: {exc}", raw) from exc
    if not isinstance(payload, dict) or not isinstance(payload.get("data"), list):
        raise PayloadParseError("response has no 'data' list", raw)
    rows = [r for r in payload["data"] if isinstance(r, dict) and r.get("lmfdb_label", label) == label]
    if not rows:
        raise NotFoundError(f"no LMFDB curve with label {label}")
    row = rows[0]
    try:
        rank = int(row["rank"])
        tors = tuple(int(t) for t in row.get("torsion_structure") or ())
    except (KeyError, TypeError, ValueError) as exc:
        raise PayloadParseError(f"record for {label} lacks a usable rank: {exc}", raw) from exc
    gens = tuple(tuple(g) if isinstance(g, list) else g for g in row.get("gens") or ())
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return RankRecord(label, rank, tors, gens, stamp, url)


def _cache_path(directory: Path, label: str) -> Path:
    return directory / f"ec_{label}.json"


def lmfdb_fetch(label: str, *, offline: bool = False, refresh: bool = False,
                fetcher: Fetcher | None = None, directory: Path | str | None = None) -> RankRecord:
    """Rank record for an elliptic curve label such as ``"37.a1"``."""
    if not _LABEL.match(label):
        raise PreconditionError(f"{label!r} is not an LMFDB elliptic-curve label")
    directory = Path(directory) if directory is not None else cache_dir()
    path = _cache_path(directory, label)
    if path.exists() and not refresh:
        data = json.loads(path.read_text())
        data["torsion_structure"] = tuple(data["torsion_structure"])
        data["generators"] = tuple(tuple(g) if isinstance(g, list) else g for g in data["generators"])
        data["provenance"] = "cache"
        return RankRecord(**data)
    if offline:
        raise OfflineError(f"offline mode and no cached record for {label}")
    url = record_url(label)
    try:
        raw = (fetcher or _default_fetcher)(url)
    except (urllib.error.URLError, OSError, TimeoutError) as exc:
        raise OfflineError(f"could not reach the LMFDB: {exc}") from exc
    record = parse_payload(label, raw, url)
    directory.mkdir(parents=True, exist_ok=True)
    data = asdict(record)
    data.pop("provenance")
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data, indent=2, sort_keys=True))
    tmp.replace(path)
    return record
