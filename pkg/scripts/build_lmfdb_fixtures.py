"""Regenerate tests/fixtures/lmfdb/cache from the API-shaped bodies in
tests/fixtures/lmfdb/api, with a replay transport and a fixed clock."""

from __future__ import annotations

from pathlib import Path

from sha_predict.config import LmfdbConfig
from sha_predict.lmfdb import LmfdbClient, replay_transport

ROOT = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "lmfdb"
FIXED_TIME = "2026-01-01T00:00:00+00:00"


def main():
    cfg = LmfdbConfig(cache_dir=ROOT / "cache", min_interval=0.0)
    client = LmfdbClient(cfg, transport=replay_transport(ROOT / "api"),
                         clock=lambda: FIXED_TIME)
    for body in sorted((ROOT / "api").glob("*.json")):
        key, value = body.stem.split("=")
        records = client.fetch({key: int(value)}, "refresh")
        print(f"{body.stem}: {len(records)} records -> {client.cache_path(body.stem)}")


if __name__ == "__main__":
    main()
