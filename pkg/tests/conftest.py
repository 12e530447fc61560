import pytest
from hypothesis import settings

from opcat.OpLieModules import projectiveSplitting

settings.register_profile("opcat", derandomize=True, max_examples=50, deadline=None)
settings.load_profile("opcat")


@pytest.fixture(scope="session")
def splitting():
    return projectiveSplitting()
