from pathlib import Path

import pytest

from teamopt.instance import load_instance

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = Path(__file__).resolve().parent / "fixtures"
ROSTER = ROOT / "data" / "underlords.json"

BEST_TEAM = (
    "broodmother",
    "disraptor",
    "dragon knight",
    "lich",
    "medusa",
    "necrophos",
    "sand king",
    "sven",
    "troll warlord",
    "witch doctor",
)


@pytest.fixture(scope="session")
def roster():
    return load_instance(ROSTER)


@pytest.fixture(scope="session")
def best_ids(roster):
    return tuple(sorted(roster.hero_index[name] for name in BEST_TEAM))


@pytest.fixture
def two_hero():
    return load_instance(FIXTURES / "two_hero.json")


@pytest.fixture
def three_hero():
    return load_instance(FIXTURES / "three_hero.json")
