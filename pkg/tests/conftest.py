import pytest

from l00p3r.core.green import build_ctable


@pytest.fixture(scope="session")
def small_table():
    return build_ctable(8)


@pytest.fixture(scope="session")
def table():
    return build_ctable(14)
