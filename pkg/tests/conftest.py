import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--run-census9", action="store_true", default=False,
                     help="run the multi-day n=9 census, checkpointed to runs/census9.ckpt")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-census9"):
        return
    skip = pytest.mark.skip(reason="needs --run-census9")
    for item in items:
        if "census9" in item.keywords:
            item.add_marker(skip)
