import random

import pytest
from hypothesis import HealthCheck, settings

from arx.backends import parse_builtin
from arx.exactla import Field, Matrix
from arx.modrep import quiver_representation

settings.register_profile("arx", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("arx")

QQ = Field.rational()


@pytest.fixture(scope="session")
def qq():
    return QQ


@pytest.fixture(scope="session")
def lin8():
    return parse_builtin("linear:8", QQ)


@pytest.fixture(scope="session")
def lin3():
    return parse_builtin("linear:3", QQ)


@pytest.fixture(scope="session")
def star6():
    return parse_builtin("star_ray:6", QQ)


@pytest.fixture(scope="session")
def fi4():
    return parse_builtin("fi:4", QQ)


@pytest.fixture(scope="session")
def fi3():
    return parse_builtin("fi:3", QQ)


@pytest.fixture(scope="session")
def vi22():
    return parse_builtin("vi:2:2", QQ)


def random_representation(cat, seed: int, max_dim: int = 2, density: float = 0.7):
    """A random module over a path category (entries in -2..2)."""
    rng = random.Random(seed)
    f = cat.field
    dims = [rng.randint(0, max_dim) for _ in cat.objects]
    arrows = {}
    for s, t, lab in cat.meta["quiver"].arrows:
        rows = [[f(rng.randint(-2, 2)) if rng.random() < density else f.zero
                 for _ in range(dims[s])] for _ in range(dims[t])]
        arrows[lab] = Matrix(f, rows, dims[s])
    return quiver_representation(cat, dims, arrows)


# -- acceptance summary --------------------------------------------------------------

_ACCEPTANCE: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _ACCEPTANCE[report.nodeid] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (outcome, dur) in sorted(_ACCEPTANCE.items(), key=lambda kv: _crit_key(kv[0])):
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{name:<48} {'PASS' if outcome == 'passed' else 'FAIL'}  {dur:6.2f}s")


def _crit_key(nodeid: str):
    name = nodeid.split("::")[-1]
    digits = "".join(ch for ch in name.split("_")[1] if ch.isdigit()) if "_" in name else ""
    return (int(digits) if digits else 99, name)
