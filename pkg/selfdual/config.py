# selfdual/config.py
import dataclasses
import logging
from dataclasses import dataclass
from pathlib import Path

import yaml

from .errors import ConfigError

# --- CONFIGURATION ---
SIZE_CAP = 2 ** 20              # largest field order we agree to build
MDS_BUDGET = 10 ** 6            # maximal minors checked exhaustively
CODEWORD_BUDGET = 10 ** 7       # messages enumerated by brute-force distance
ORACLE_BUDGET = 10 ** 7         # twists enumerated by the existence oracle
SAMPLE_LIMIT = 10 ** 5          # random k-subsets when over the MDS budget
SAMPLE_SEED = 20190
DLOG_SCAN_LIMIT = 2 ** 16       # subgroup orders up to this are scanned directly
WORKERS = 1
LOG_LEVEL = "WARNING"

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"


@dataclass(frozen=True)
class Settings:
    size_cap: int = SIZE_CAP
    mds_budget: int = MDS_BUDGET
    codeword_budget: int = CODEWORD_BUDGET
    oracle_budget: int = ORACLE_BUDGET
    sample_limit: int = SAMPLE_LIMIT
    sample_seed: int = SAMPLE_SEED
    mds_sampling: bool = True
    dlog_scan_limit: int = DLOG_SCAN_LIMIT
    workers: int = WORKERS
    log_level: str = LOG_LEVEL

    def replace(self, **overrides) -> "Settings":
        """Copy with the non-None overrides applied (CLI flags layer on top)."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def load_settings(path=None) -> Settings:
    if path is None:
        return Settings()

    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text())
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid YAML in {path}: {e}") from e

    if raw is None:
        return Settings()
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a mapping, got {type(raw).__name__}")

    known = {f.name: f.type for f in dataclasses.fields(Settings)}
    unknown = sorted(set(raw) - set(known))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")

    try:
        return Settings().replace(**{k: _coerce(k, v) for k, v in raw.items()})
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad value in {path}: {e}") from e


def _coerce(key: str, value):
    if key == "log_level":
        return str(value).upper()
    if key == "mds_sampling":
        if not isinstance(value, bool):
            raise ValueError(f"{key} must be true/false")
        return value
    if isinstance(value, bool):
        raise ValueError(f"{key} must be an integer")
    value = int(value)
    if value < 0 or (value == 0 and key != "sample_seed"):
        raise ValueError(f"{key} must be positive")
    return value


def setup_logging(level: str = LOG_LEVEL) -> None:
    logging.basicConfig(level=getattr(logging, str(level).upper(), logging.WARNING), format=LOG_FORMAT)
    logging.getLogger().setLevel(getattr(logging, str(level).upper(), logging.WARNING))
