import pytest

from spinlambda.pairdatum import PRESETS, build_preset

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def sl2r():
    return build_preset("sl2r")


@pytest.fixture(scope="session")
def sp4r():
    return build_preset("sp4r")


@pytest.fixture(scope="session")
def g2s():
    return build_preset("g2s")


@pytest.fixture(params=PRESETS, scope="session")
def preset(request):
    return request.param, build_preset(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
