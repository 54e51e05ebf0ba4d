import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the all-case pipeline tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow; pass --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def ci_record():
    from artifact import acceptance

    return acceptance.ci_record()


@pytest.fixture(scope="session")
def e8():
    from artifact import data

    return data.load_case("w-6-14-21-42")
