from pathlib import Path

import pytest

from smellprone.metrics import parse_release

FIXTURE = Path(__file__).parent / "fixtures" / "project"
TAGS = ("v1.0", "v1.1", "v1.2")


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE


@pytest.fixture(scope="session")
def fixture_models():
    return [parse_release(FIXTURE / tag, tag) for tag in TAGS]
