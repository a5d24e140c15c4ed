import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def pytest_addoption(parser):
    parser.addoption("--fast", action="store_true", default=False,
                     help="Run the reduced acceptance profile (subgraph case at size 2).")


@pytest.fixture
def fast(request):
    return request.config.getoption("--fast")
