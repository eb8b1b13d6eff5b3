import pytest

from opetopes import build_fixture


@pytest.fixture(scope="session")
def point_set():
    return build_fixture("point")


@pytest.fixture(scope="session")
def parallel_set():
    return build_fixture("two_parallel_arrows")


@pytest.fixture(scope="session")
def z2_set():
    return build_fixture("z2_monoid")


@pytest.fixture(scope="session")
def z3_set():
    return build_fixture("z3_monoid")


@pytest.fixture(scope="session")
def broken_set():
    return build_fixture("broken_magma")
