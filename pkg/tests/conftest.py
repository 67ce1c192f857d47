import math

import numpy as np
import pytest

from circdini.circular import CircularTractrixParams
from circdini.dini import DiniParams

ACCEPTANCE_LINES = []


def record_acceptance(number, title, passed, detail):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title} -- {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def sup_params():
    return CircularTractrixParams.general(2.0, 0.6, 0.8, 0.0)


@pytest.fixture
def unit_params():
    return CircularTractrixParams.general(1.0, None, 1.0, 0.0)


@pytest.fixture
def sub_params():
    return CircularTractrixParams.general(0.5, math.sqrt(2.0), 1.0, 0.0)


@pytest.fixture(params=["sup", "unit", "sub"])
def reference_dini(request):
    """The three reference surfaces, one per regime."""
    return {
        "sup": DiniParams(CircularTractrixParams.general(2.0, 0.6, 0.8), 2.0, 1.0),
        "unit": DiniParams(CircularTractrixParams.general(1.0, None, 1.0), 1.0, 3.0),
        "sub": DiniParams(CircularTractrixParams.general(0.5, math.sqrt(2.0), 1.0), 1.0, 2.0),
    }[request.param]


def general_matrix():
    """Constraint-satisfying constants over r in {0.5, 0.9, 1, 1.1, 2, 5}."""
    mk = CircularTractrixParams.from_c2
    return [
        mk(0.5, 1.0, 0.0),
        mk(0.5, -2.0, 1.3, c1_sign=-1),
        mk(0.9, 0.0, -0.7),
        mk(0.9, 0.4, 2.0),
        mk(1.0, 0.0, 1.0),
        mk(1.0, 1.0, 0.0),
        mk(1.0, -0.3, -2.0),
        mk(1.1, 0.8, 0.1),
        mk(1.1, 0.0, 0.0, c1_sign=-1),
        mk(2.0, 0.8, 0.0),
        mk(2.0, -1.0, 0.5),
        mk(5.0, 0.6, -1.0, c1_sign=-1),
        mk(5.0, 0.0, 0.3),
    ]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
