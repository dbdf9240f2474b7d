from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def example_sequences():
    """Resolved ``(fixture, witness, sequence, report)`` for every shipped fixture."""
    from ssideal.cli import sequence_from_fixture
    return {p.stem: sequence_from_fixture(p) for p in sorted(FIXTURES.glob("*.toml"))}
