import pytest

from selfdual.config import Settings
from selfdual.gf import field_for_order, make_field


@pytest.fixture(scope="session")
def F5():
    return make_field(5)


@pytest.fixture(scope="session")
def F7():
    return make_field(7)


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def F11():
    return make_field(11)


@pytest.fixture(scope="session")
def F13():
    return make_field(13)


@pytest.fixture(scope="session")
def F27():
    return make_field(3, 3)


@pytest.fixture(scope="session")
def F41():
    return make_field(41)


@pytest.fixture(scope="session")
def F169():
    return make_field(13, 2)


@pytest.fixture(scope="session")
def field_of():
    return field_for_order


@pytest.fixture
def default_settings():
    return Settings()
