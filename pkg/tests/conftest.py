from __future__ import annotations

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from criteria.schemas import CriterionId  # noqa: E402
from propcheck.gap import counterexample_tree  # noqa: E402


@pytest.fixture
def demo_dir() -> Path:
    return ROOT / "demo"


@pytest.fixture
def chn_tree():
    return counterexample_tree(CriterionId.CHN)


@pytest.fixture
def chpi_tree():
    return counterexample_tree(CriterionId.CHPI)
