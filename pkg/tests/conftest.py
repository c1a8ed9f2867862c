import time

import pytest

from ngcenter.centerdata import assemble_center_data
from ngcenter.centersolver import solve_all_triples
from ngcenter.condense import condense, resolve_unknowns
from ngcenter.neargroup import load_instance

ACCEPTANCE: dict[int, tuple[bool, str]] = {}
_CACHE: dict = {}


def cached(key, fn):
    """Compute once per session and remember the wall time of that first run."""
    if key not in _CACHE:
        t0 = time.perf_counter()
        value = fn()
        _CACHE[key] = (value, time.perf_counter() - t0)
    return _CACHE[key]


def elapsed(*key) -> float:
    """Wall time of a cached computation (0 if never computed)."""
    key = key[0] if len(key) == 1 else key
    return _CACHE[key][1] if key in _CACHE else 0.0


def instance(name):
    return cached(("data", name), lambda: load_instance(name))[0]


def triples(name):
    return cached(("triples", name), lambda: solve_all_triples(instance(name)))


def center(name):
    return cached(("center", name), lambda: assemble_center_data(instance(name), triples(name)[0]))[0]


def condensed_j24():
    return cached("condensed", lambda: resolve_unknowns(condense(center("J24_1"), "A(0,2)")))[0]


@pytest.fixture(scope="session")
def data_j6():
    return instance("J6_1")


@pytest.fixture(scope="session")
def data_j24():
    return instance("J24_1")


@pytest.fixture(scope="session")
def triples_j6():
    return triples("J6_1")[0]


@pytest.fixture(scope="session")
def triples_j24():
    return triples("J24_1")[0]


@pytest.fixture(scope="session")
def md_j6():
    return center("J6_1")


@pytest.fixture(scope="session")
def md_j24():
    return center("J24_1")


@pytest.fixture(scope="session")
def cond_j24():
    return condensed_j24()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {msg}")
