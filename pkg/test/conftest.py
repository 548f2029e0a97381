# License: BSD-3

import pytest


def pytest_addoption(parser):
    parser.addoption("--seed", action="store", type=int, default=20190813,
                     help="Seed of the randomized tests.")
    parser.addoption("--run-slow", action="store_true", default=False,
                     help="Also run the tests marked slow.")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running numerical checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng_seed(request):
    return request.config.getoption("--seed")
