import random

import pytest

from msreg.geometry import coordinate_ring
from msreg.groebner import ideal


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def twisted_cubic():
    R = coordinate_ring(4)
    return ideal(R, ["x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2"])


def random_homogeneous_ideal(rng, p=32003, max_vars=4, nvars=None, ngens=None):
    """Small random homogeneous ideal: 2..4 generators of degree 1..3, few terms each."""
    n = nvars or rng.randint(2, max_vars)
    R = coordinate_ring(n, p)
    gens = []
    for _ in range(ngens or rng.randint(2, 4)):
        deg = rng.randint(1, 3)
        monos = R.monomials_of_degree(deg)
        picks = rng.sample(monos, min(len(monos), rng.randint(1, 3)))
        f = R.from_mono_dict({m: rng.randrange(1, p) for m in picks})
        if f:
            gens.append(f)
    return ideal(R, gens)


# -- acceptance reporting ------------------------------------------------------------------------

CRITERIA = {}


def record_criterion(number, ok, detail=""):
    """Remember and print one PASS/FAIL line per acceptance criterion."""
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    CRITERIA[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[n])
