import pytest

from filmseries import derive, find_roots, load_table1_fixture, reference_params


@pytest.fixture(scope="session")
def params():
    return reference_params()


@pytest.fixture(scope="session")
def d(params):
    return derive(params)


@pytest.fixture(scope="session")
def fixture_roots(d):
    return load_table1_fixture(d)


@pytest.fixture(scope="session")
def solver_roots(d):
    return find_roots(d, 400)


@pytest.fixture(scope="session")
def roots25(d):
    return find_roots(d, 25)


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
