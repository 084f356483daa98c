import pytest

from darbouxflow import Artifacts, run_suite


@pytest.fixture(scope="session")
def artifacts():
    """Shared acceptance artifacts; building them is the expensive part."""
    return Artifacts(1e-3)


@pytest.fixture(scope="session")
def acceptance_results(artifacts):
    return {r.name: r for r in run_suite(artifacts=artifacts)}
