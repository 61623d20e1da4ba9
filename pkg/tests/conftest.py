import functools
import json
import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from siltlab.algebra import parse_algebra  # noqa: E402
from siltlab.complexes import ComplexUniverse  # noqa: E402
from siltlab.universe import enumerate_indecomposable_modules  # noqa: E402

FIXTURES = pathlib.Path(__file__).parents[1] / "src" / "siltlab" / "fixtures"
DATA = pathlib.Path(__file__).parent / "data"


def fixture_path(name):
    return FIXTURES / f"{name}.quiver"


@functools.lru_cache(maxsize=None)
def load(name, bound=8):
    """(algebra, module universe, complex universe) for a bundled fixture."""
    alg = parse_algebra(fixture_path(name).read_text())
    U = enumerate_indecomposable_modules(alg, bound=bound)
    return alg, U, ComplexUniverse(U)


@functools.lru_cache(maxsize=None)
def frozen(name):
    return json.loads((DATA / f"oracle_{name}.json").read_text())


@pytest.fixture(scope="session")
def a3():
    return load("a3")


@pytest.fixture(scope="session")
def square():
    return load("square")


@pytest.fixture(scope="session")
def one_vertex():
    return load("one_vertex")


@pytest.fixture(scope="session")
def d4():
    return load("d4")


@pytest.fixture(scope="session")
def kronecker():
    return load("kronecker", bound=4)


@functools.lru_cache(maxsize=None)
def silting(name):
    from siltlab.silting import enumerate_two_term_silting

    return tuple(enumerate_two_term_silting(load(name)[2]))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
