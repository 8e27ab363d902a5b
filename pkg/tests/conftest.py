import numpy as np
import pytest

from critlab import catalog
from critlab.algebra import MetricLieAlgebra

_ACCEPTANCE = []


@pytest.fixture
def acceptance():
    """Record one summary line per acceptance criterion."""
    def record(number, name, ok, detail=""):
        _ACCEPTANCE.append((number, name, ok, detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(_ACCEPTANCE):
        line = f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {name}"
        terminalreporter.write_line(f"{line}  ({detail})" if detail else line)


def _structure(brackets, dim=4):
    c = np.zeros((dim, dim, dim))
    for i, j, k, v in brackets:
        c[i - 1, j - 1, k - 1] += v
        c[j - 1, i - 1, k - 1] -= v
    return c


def random_algebra(rng):
    """A random 4-dimensional metric Lie algebra from one of several Lie-by-construction templates."""
    kind = rng.integers(5)
    if kind == 0:
        # R x_M R^3 with an arbitrary 3x3 matrix M
        m = rng.normal(size=(3, 3))
        br = [(j + 1, 4, i + 1, m[i, j]) for i in range(3) for j in range(3)]
    elif kind == 1:
        br = catalog.h_template(*rng.normal(size=6))
    elif kind == 2:
        br = catalog.e_template(*rng.normal(size=6))
    elif kind == 3:
        br = catalog.ns_brackets(*rng.normal(size=6))
    else:
        br = catalog.r_template(*rng.normal(size=6))
    return MetricLieAlgebra(4, _structure(br), f"random-{kind}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
