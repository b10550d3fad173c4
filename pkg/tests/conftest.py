from fractions import Fraction

import pytest

from biquad.core import make_field

H = Fraction(1, 2)

_criteria: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name = marker.args[0]
    if rep.when == "call" or rep.failed:
        prev = _criteria.get(name, "PASS")
        _criteria[name] = "FAIL" if (rep.failed or prev == "FAIL") else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in _criteria.items():
        terminalreporter.write_line(f"{verdict} {name}")


@pytest.fixture(scope="session")
def K23():
    return make_field(2, 3)


@pytest.fixture(scope="session")
def K619():
    return make_field(6, 19)


@pytest.fixture(scope="session")
def named23(K23):
    K = K23
    mu = K(4, Fraction(5, 2), 2, Fraction(3, 2))
    sigma = K(3, 0, 0, 1)
    zeta = K(3, -H, -1, H)
    return {
        "1": K.one,
        "mu": mu,
        "sigma": sigma,
        "sigma/mu": sigma / mu,
        "zeta": zeta,
        "zeta/mu": zeta / mu,
    }


@pytest.fixture(scope="session")
def named619(K619):
    K = K619
    return {
        "alpha1": K(1),
        "alpha2": K(5, 2),
        "alpha3": K(3, 1),
        "alpha4": K(9, 0, 2),
        "alpha5": K(11, 0, 0, 1),
        "alpha6": K(5, 0, 1),
    }
