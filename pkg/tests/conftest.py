import random

import pytest
from hypothesis import HealthCheck, settings

from isopoints.arith import UniPoly
from isopoints.curve import new_hyperelliptic
from isopoints.errors import InvalidModelError

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_curve(rng: random.Random, g: int, even: bool | None = None, lc_choices=(1, 2, -1, 3, 4)):
    """A random squarefree model of genus g with small integer coefficients."""
    while True:
        deg = 2 * g + (2 if (even if even is not None else rng.random() < 0.5) else 1)
        coeffs = [rng.randint(-4, 4) for _ in range(deg)] + [rng.choice(lc_choices)]
        try:
            return new_hyperelliptic(UniPoly(coeffs))
        except InvalidModelError:
            continue


@pytest.fixture
def rng():
    return random.Random(20240601)


def place_pool(C, rng: random.Random, extra_fibers: int = 4):
    """A varied supply of places: Weierstrass, infinite, fibers over small t, quadratic u."""
    from fractions import Fraction

    from isopoints.arith import factor_q
    from isopoints.curve import decompose_fiber, places_over

    pool = list(C.weierstrass_places()) + list(C.infinite_places())
    seen = set()
    for t in [0, 1, -1, 2, -2, 3, Fraction(1, 2)] + [rng.randint(-9, 9) for _ in range(extra_fibers)]:
        if t in seen:
            continue
        seen.add(t)
        pool += decompose_fiber(C, t)
    for _ in range(2):
        u = UniPoly([rng.randint(-5, 5), rng.randint(-3, 3), 1])
        facs = factor_q(u)
        if len(facs) == 1 and facs[0][1] == 1 and u.degree == 2:
            pool += places_over(C, u)
    out = []
    for P in pool:
        if P not in out:
            out.append(P)
    return out


def random_divisor(C, rng: random.Random, pool, max_abs_degree: int):
    from isopoints.rrspace import Divisor

    while True:
        k = rng.randint(1, 4)
        entries = {}
        for P in rng.sample(pool, min(k, len(pool))):
            entries[P] = entries.get(P, 0) + rng.choice([-2, -1, 1, 1, 2, 3])
        D = Divisor(C, entries.items())
        if abs(D.degree) <= max_abs_degree:
            return D


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("]")[0].strip("["))):
            terminalreporter.write_line(line)
