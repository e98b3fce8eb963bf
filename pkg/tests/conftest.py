import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session", autouse=True)
def catalog_cache_dir(tmp_path_factory):
    """Point the on-disk catalog cache at a session-private directory so
    tests neither read nor pollute a user cache."""
    directory = tmp_path_factory.mktemp("catalog-cache")
    previous = os.environ.get("INDSUB_CACHE_DIR")
    os.environ["INDSUB_CACHE_DIR"] = str(directory)
    yield directory
    if previous is None:
        os.environ.pop("INDSUB_CACHE_DIR", None)
    else:
        os.environ["INDSUB_CACHE_DIR"] = previous
