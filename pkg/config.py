from __future__ import annotations
import os
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parent

TOOL_VERSION = "0.3.0"
SCHEMA_VERSION = 1

# ---- graph limits ----
VERTEX_CAP = 64          # one machine word per VertexSet
GRAPH6_MAX_N = 62        # single-byte size form only

# ---- search limits ----
ENUM_SOFT_LIMIT = 11         # enumerate_connected needs force above this
DEFAULT_VERIFY_CEILING = 10  # verify above this needs --long
LABELED_LIMIT = 7            # 2^21 edge masks
CLAIMS_LIMIT = 9

SUBTREE_FACTOR = 8   # subtree seeds >= SUBTREE_FACTOR * workers
MAX_CERTS = 32
MAX_WITNESSES = 16

# ---- anneal schedule ----
ANNEAL_STEPS = 10_000
ANNEAL_RESTARTS = 1
ANNEAL_T0 = 2.0
ANNEAL_T_END = 0.05


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


DEFAULT_JOBS = _env_int("DIST2_JOBS", 1)
VERBOSE = _env_flag("DIST2_VERBOSE")
PROGRESS = _env_flag("DIST2_PROGRESS")
CHECKPOINT_DIR = Path(os.environ.get("DIST2_CHECKPOINT_DIR") or PROJECT_ROOT / "checkpoints")
