import numpy as np
import pytest

from weightlab.geometry import GridCircle, polar_grid


@pytest.fixture(scope="session")
def circle256():
    return GridCircle(256)


@pytest.fixture(scope="session")
def polar8():
    return polar_grid(8, 256)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one PASS/FAIL line per acceptance criterion."""

    def record(number: int, name: str, passed: bool, detail: str):
        line = f"{'PASS' if passed else 'FAIL'} criterion {number:2d} {name}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
