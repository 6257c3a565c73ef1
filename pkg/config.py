from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from dotenv import load_dotenv

load_dotenv()


@dataclass(slots=True)
class Settings:
    # None of these change printed results; semantic inputs are CLI flags only.
    log_level: str = os.getenv("POSSDT_LOG_LEVEL", "INFO")
    workers: int = int(os.getenv("POSSDT_WORKERS", "1"))
    strategy_budget: int = int(os.getenv("POSSDT_STRATEGY_BUDGET", "0"))
    fuzz_trials: int = int(os.getenv("POSSDT_FUZZ_TRIALS", "10000"))
    record_runs: bool = os.getenv("POSSDT_RECORD_RUNS", "true").lower() == "true"
    runtime_dir: Path = field(default_factory=lambda: Path(os.getenv("POSSDT_RUNTIME_DIR", "runtime")))


SETTINGS = Settings()


def ensure_runtime_dir() -> Path:
    SETTINGS.runtime_dir.mkdir(parents=True, exist_ok=True)
    return SETTINGS.runtime_dir


def append_jsonl(path: Path, payload: dict[str, Any]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a", encoding="utf-8") as f:
        f.write(json.dumps(payload, ensure_ascii=True) + "\n")
