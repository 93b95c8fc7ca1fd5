import itertools
import random
from math import comb, gcd

import pytest

from isopoints.arith import UniPoly
from isopoints.counting import (
    check_functional_equation,
    closed_point_counts_fq,
    closed_points_fq,
    count_points,
    count_points_naive,
    divisor_counts_from_points,
    divisor_counts_from_zeta,
    effective_divisor_count_fq,
    enumerate_points_fq,
    frobenius_orbits,
    good_primes,
    hasse_weil_ok,
    is_good_prime,
    plane_genus_bound,
    product_genus_bound,
    splitting_spectrum_fq,
    zeta_L_polynomial,
)
from isopoints.curve import new_hyperelliptic
from isopoints.errors import BadReductionError, CapabilityError

from conftest import random_curve

E = new_hyperelliptic([16, -16, 0, 1])
G2_ODD = new_hyperelliptic([1, 2, 0, -1, 0, 1])        # x^5 - x^3 + 2x + 1
G2_EVEN = new_hyperelliptic([3, 1, 0, 0, 0, 0, 1])     # x^6 + x + 3


def literal_effective_divisors(C, p, d):
    """A_d by listing every multiset of explicit closed points of total degree d."""
    points = [P for k in range(1, d + 1) for P in closed_points_fq(C, p, k)]
    total = 0
    for size in range(1, d + 1):
        for combo in itertools.combinations_with_replacement(range(len(points)), size):
            if sum(points[i].degree for i in combo) == d:
                total += 1
    return total


def test_elliptic_count_over_f5():
    # direct listing: x in F_5, y^2 = x^3 - 16x + 16, plus the point at infinity
    direct = 1 + sum(1 for xv in range(5) for yv in range(5) if (yv * yv - (xv ** 3 - 16 * xv + 16)) % 5 == 0)
    assert count_points(E, 5) == direct
    assert abs(direct - 6) <= 4
    z = zeta_L_polynomial(E, 5)
    assert z.picard_order == direct


def test_bad_primes_rejected():
    with pytest.raises(BadReductionError):
        count_points(G2_EVEN, 2)
    bad = new_hyperelliptic([0, -1, 0, 1, 0, 3])
    with pytest.raises(BadReductionError):
        count_points(bad, 3)
    assert not is_good_prime(bad, 3)
    with pytest.raises(CapabilityError):
        count_points(G2_EVEN, 5, 11)


@pytest.mark.parametrize("C", [G2_ODD, G2_EVEN, E], ids=["g2-odd", "g2-even", "elliptic"])
def test_counts_agree_with_naive_and_enumeration(C):
    for p in good_primes(C, 4):
        assert count_points(C, p) == count_points_naive(C, p)
        for k in (1, 2):
            assert count_points(C, p, k) == len(enumerate_points_fq(C, p, k))


def test_random_curves_counts_and_zeta(rng):
    for g in (1, 2, 3):
        for _ in range(4):
            C = random_curve(rng, g)
            for p in good_primes(C, 2):
                if p ** (g + 2) > 10 ** 6:
                    continue
                z = zeta_L_polynomial(C, p)
                assert check_functional_equation(z)
                # predictions beyond the counts used to build L
                for k in (g + 1, g + 2):
                    n = count_points(C, p, k)
                    assert z.count_from_L(k) == n
                    assert hasse_weil_ok(g, p ** k, n)


def test_closed_point_counts():
    p = 3
    N = [count_points(G2_EVEN, p, k) for k in (1, 2, 3)]
    B = closed_point_counts_fq(G2_EVEN, p, 3)
    assert B[0] == N[0]
    assert B[1] == (N[1] - N[0]) // 2
    for d in (1, 2, 3):
        assert B[d - 1] == len(closed_points_fq(G2_EVEN, p, d))
    B5 = closed_point_counts_fq(G2_ODD, 5, 3)
    assert B5[2] == len(closed_points_fq(G2_ODD, 5, 3))


def test_orbits_partition_points():
    orbits = frobenius_orbits(G2_ODD, 3, 4)
    pts = [pt for P in orbits for pt in P.orbit]
    assert len(pts) == len(set(pts)) == count_points(G2_ODD, 3, 4)
    assert all(4 % P.degree == 0 for P in orbits)


@pytest.mark.parametrize("C,p", [(G2_ODD, 3), (G2_EVEN, 5), (G2_ODD, 7)])
def test_effective_divisor_counts(C, p):
    assert effective_divisor_count_fq(C, p, 0) == 1
    assert effective_divisor_count_fq(C, p, 1) == count_points(C, p)
    for d in (1, 2, 3):
        assert effective_divisor_count_fq(C, p, d) == literal_effective_divisors(C, p, d)


def test_divisor_series_agree():
    z = zeta_L_polynomial(G2_EVEN, 5)
    B = closed_point_counts_fq(G2_EVEN, 5, 5, [count_points(G2_EVEN, 5, k) for k in range(1, 6)])
    assert divisor_counts_from_zeta(z, 5) == divisor_counts_from_points(B, 5)
    # above 2g - 2 every class of degree d has q^(d+1-g) - 1 / (q - 1) members
    h = z.picard_order
    for d in (3, 4, 5):
        assert divisor_counts_from_zeta(z, d)[d] == h * (5 ** (d - 1) - 1) // 4


def test_splitting_examples():
    r = splitting_spectrum_fq(G2_EVEN, 5, 2, 2)
    assert r.holds and all(c == (1, 1) for c in r.component_degrees)
    r = splitting_spectrum_fq(G2_EVEN, 5, 3, 2)
    assert r.holds and all(c == (3,) for c in r.component_degrees)
    r = splitting_spectrum_fq(G2_ODD, 3, 4, 2)
    assert r.holds and all(c == (2, 2) for c in r.component_degrees)


def test_splitting_law_random(rng):
    cases = 0
    for _ in range(6):
        C = random_curve(rng, 2)
        p = good_primes(C, 1)[0]
        for d, e in [(2, 3), (4, 6), (3, 3), (4, 2)]:
            if p ** d > 10 ** 5:
                continue
            r = splitting_spectrum_fq(C, p, d, e)
            assert r.expected_components == gcd(d, e)
            assert r.holds
            cases += 1
    assert cases >= 10


def test_genus_bounds():
    assert plane_genus_bound(4) == 3
    assert product_genus_bound(3, 1, 2, 0) == 5
    assert product_genus_bound(1, 2, 3, 1) == 3 + 2
    with pytest.raises(ValueError):
        plane_genus_bound(0)
