"""Search limits and LMFDB client settings."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path


@dataclass(frozen=True)
class Limits:
    """Bounds that keep every computation finite and reportable."""

    class_number: int = 10**4  # largest class group we build a Cayley table for
    pell_steps: int = 10**6  # continued-fraction steps allowed when finding a unit
    unit_power: int = 10**6  # largest exponent tried for the unit index
    conductor: int = 10**4  # default upper end of the f' search


DEFAULT_LIMITS = Limits()

DEFAULT_BASE_URL = "https://www.lmfdb.org/api"


def _default_cache_dir() -> Path:
    root = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(root) / "sha_predict"


@dataclass(frozen=True)
class LmfdbConfig:
    base_url: str = DEFAULT_BASE_URL
    cache_dir: Path = field(default_factory=_default_cache_dir)
    min_interval: float = 1.0  # seconds between requests
    timeout: float = 30.0

    @classmethod
    def load(cls, path: str | os.PathLike | None = None) -> "LmfdbConfig":
        """Defaults, then the JSON config file, then environment variables.

        The config file is ``$SHA_PREDICT_CONFIG`` if set, else
        ``~/.config/sha_predict/config.json``; a missing file is ignored.
        Recognised keys: ``base_url``, ``cache_dir``, ``min_interval``, ``timeout``.
        """
        cfg = cls()
        if path is None:
            path = os.environ.get("SHA_PREDICT_CONFIG") or (
                Path.home() / ".config" / "sha_predict" / "config.json"
            )
        path = Path(path)
        if path.is_file():
            data = json.loads(path.read_text())
            unknown = set(data) - {"base_url", "cache_dir", "min_interval", "timeout"}
            if unknown:
                raise ValueError(f"unknown keys in {path}: {sorted(unknown)}")
            if "cache_dir" in data:
                data["cache_dir"] = Path(data["cache_dir"]).expanduser()
            cfg = replace(cfg, **data)
        if os.environ.get("LMFDB_BASE_URL"):
            cfg = replace(cfg, base_url=os.environ["LMFDB_BASE_URL"])
        if os.environ.get("SHA_PREDICT_CACHE_DIR"):
            cfg = replace(cfg, cache_dir=Path(os.environ["SHA_PREDICT_CACHE_DIR"]))
        return cfg
