from __future__ import annotations

from pathlib import Path

import pytest

from govroom.scenario import Scenario, parse_scenario

REFERENCE_PATH = Path(__file__).resolve().parent.parent / "scenarios" / "reference.json"


@pytest.fixture(scope="session")
def reference_scenario() -> Scenario:
    return parse_scenario(REFERENCE_PATH.read_bytes())


@pytest.fixture(scope="session")
def reference_document() -> dict:
    import json

    return json.loads(REFERENCE_PATH.read_text())


class FakeClock:
    def __init__(self, now: float = 1000.0):
        self.now = now

    def __call__(self) -> float:
        return self.now

    def advance(self, seconds: float) -> None:
        self.now += seconds


@pytest.fixture
def clock() -> FakeClock:
    return FakeClock()
