import pytest


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    """Shared automorphism cache for the whole test session."""
    return tmp_path_factory.mktemp("aut-cache")
