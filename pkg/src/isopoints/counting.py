"""Reductions mod p: point counts, zeta L-polynomials, closed points over F_p."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, isqrt

import numpy as np

from .arith import FiniteField, UniPoly, legendre
from .arith.factor import _is_prime
from .curve import HyperCurve
from .errors import BadReductionError, CapabilityError, InternalConsistencyError

MAX_FIELD_SIZE = 10 ** 7
MAX_ZETA_GENUS = 5
CHUNK = 1 << 17


def reduce_model(C: HyperCurve, p: int) -> UniPoly:
    """f mod p, after checking that p is a good prime for the model."""
    if p == 2 or not _is_prime(p):
        raise BadReductionError(f"{p} is not an odd prime")
    f = C.f
    if any(c.denominator % p == 0 for c in f.coeffs):
        raise BadReductionError(f"p = {p} divides a coefficient denominator")
    fp = f.reduce(p)
    if fp.degree != f.degree:
        raise BadReductionError(f"p = {p} divides the leading coefficient")
    if not fp.is_squarefree():
        raise BadReductionError(f"p = {p} divides the discriminant")
    return fp


def is_good_prime(C: HyperCurve, p: int) -> bool:
    try:
        reduce_model(C, p)
    except BadReductionError:
        return False
    return True


def good_primes(C: HyperCurve, count: int, start: int = 3) -> list[int]:
    out = []
    p = start
    while len(out) < count:
        if is_good_prime(C, p):
            out.append(p)
        p += 1
    return out


def _points_at_infinity(fp: UniPoly, k: int) -> int:
    p = fp.modulus
    if fp.degree % 2:
        return 1
    if k % 2 == 0:
        return 2
    return 1 + legendre(fp.lc, p)


def count_points(C: HyperCurve, p: int, k: int = 1) -> int:
    """Number of F_{p^k}-points on the smooth projective model."""
    fp = reduce_model(C, p)
    if p ** k > MAX_FIELD_SIZE:
        raise CapabilityError(f"p^k = {p}^{k} exceeds the counting contract {MAX_FIELD_SIZE}")
    F = FiniteField(p, k)
    coeffs = list(fp.coeffs)
    total = 0
    for start in range(0, F.q, CHUNK):
        codes = np.arange(start, min(start + CHUNK, F.q), dtype=np.int64)
        x = F.codes_to_array(codes)
        val = F.vpoly_eval(coeffs, x)
        chi = F.vquadratic_character(val)
        total += int(codes.size + chi.sum())
    return total + _points_at_infinity(fp, k)


def count_points_naive(C: HyperCurve, p: int) -> int:
    """Prime-field count by direct Legendre symbols; an independent check for k = 1."""
    fp = reduce_model(C, p)
    n = sum(1 + legendre(fp(x), p) for x in range(p))
    return n + _points_at_infinity(fp, 1)


@dataclass(frozen=True)
class ZetaData:
    p: int
    genus: int
    counts: tuple[int, ...]
    L: tuple[int, ...]             # a_0 .. a_2g, L(t) = sum a_i t^i

    @property
    def picard_order(self) -> int:
        return sum(self.L)

    def L_poly(self) -> UniPoly:
        return UniPoly(self.L)

    def count_from_L(self, k: int) -> int:
        """N_k = q^k + 1 - sum alpha_i^k, from the power sums of the inverse roots."""
        return self.p ** k + 1 - power_sums(self.L, k)[k - 1]


def power_sums(L, kmax: int) -> list[int]:
    """s_k = sum alpha_i^k for L(t) = prod (1 - alpha_i t), via Newton's identities."""
    n = len(L) - 1
    e = [(-1) ** i * L[i] for i in range(n + 1)]  # elementary symmetric functions
    s: list[int] = []
    for k in range(1, kmax + 1):
        acc = (-1) ** (k - 1) * k * e[k] if k <= n else 0
        for i in range(1, k):
            if i <= n:
                acc += (-1) ** (i - 1) * e[i] * s[k - i - 1]
        s.append(acc)
    return s


def zeta_L_polynomial(C: HyperCurve, p: int, counts: list[int] | None = None) -> ZetaData:
    """L-polynomial from N_1..N_g and the functional equation."""
    g = C.genus
    if g > MAX_ZETA_GENUS:
        raise CapabilityError(f"genus {g} exceeds the supported {MAX_ZETA_GENUS}")
    reduce_model(C, p)
    if counts is None:
        counts = [count_points(C, p, k) for k in range(1, g + 1)]
    counts = list(counts[:g])
    s = [p ** k + 1 - n for k, n in enumerate(counts, start=1)]
    # a_i = -(1/i) sum_{j=1}^{i} s_j a_{i-j}
    a = [Fraction(1)]
    for i in range(1, g + 1):
        a.append(-sum(s[j - 1] * a[i - j] for j in range(1, i + 1)) / i)
    if any(x.denominator != 1 for x in a):
        raise InternalConsistencyError(f"non-integral L coefficients {a} at p = {p}")
    a = [int(x) for x in a]
    L = a + [p ** (g - i) * a[i] for i in range(g - 1, -1, -1)]
    for i, ai in enumerate(L):
        # |a_i| <= C(2g, i) q^(i/2)
        if ai * ai > comb(2 * g, i) ** 2 * p ** i:
            raise InternalConsistencyError(f"coefficient a_{i} = {ai} violates the Weil bound")
    if sum(L) <= 0:
        raise InternalConsistencyError("L(1) must be positive")
    z = ZetaData(p, g, tuple(counts), tuple(L))
    for k in range(1, g + 1):
        if z.count_from_L(k) != counts[k - 1]:
            raise InternalConsistencyError(f"N_{k} not recovered from L")
    return z


def check_functional_equation(z: ZetaData) -> bool:
    g, q, L = z.genus, z.p, z.L
    return all(L[2 * g - i] == q ** (g - i) * L[i] for i in range(g + 1))


def hasse_weil_ok(g: int, q: int, n: int) -> bool:
    # |N - (q+1)| <= 2g sqrt(q)  <=>  (N - q - 1)^2 <= 4 g^2 q
    return (n - q - 1) ** 2 <= 4 * g * g * q


def _mobius(n: int) -> int:
    res, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            res = -res
        d += 1
    if m > 1:
        res = -res
    return res


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def closed_point_counts_fq(C: HyperCurve, p: int, dmax: int,
                           counts: list[int] | None = None) -> list[int]:
    """B_1..B_dmax, the numbers of closed points of each degree on the reduction."""
    if counts is None:
        counts = [count_points(C, p, d) for d in range(1, dmax + 1)]
    out = []
    for d in range(1, dmax + 1):
        tot = sum(_mobius(d // e) * counts[e - 1] for e in divisors(d))
        if tot % d or tot < 0:
            raise InternalConsistencyError(f"orbit count {tot}/{d} is not a natural number")
        out.append(tot // d)
    for d in range(1, dmax + 1):
        if sum(e * out[e - 1] for e in divisors(d)) != counts[d - 1]:
            raise InternalConsistencyError(f"sum e B_e != N_{d}")
    return out


def _series_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a[:n + 1]):
        if x:
            for j, y in enumerate(b[:n + 1 - i]):
                out[i + j] += x * y
    return out


def divisor_counts_from_zeta(z: ZetaData, dmax: int) -> list[int]:
    """A_0..A_dmax as coefficients of L(t) / ((1 - t)(1 - q t))."""
    geo1 = [1] * (dmax + 1)
    geoq = [z.p ** i for i in range(dmax + 1)]
    return _series_mul(_series_mul(list(z.L), geo1, dmax), geoq, dmax)


def divisor_counts_from_points(B: list[int], dmax: int) -> list[int]:
    """A_0..A_dmax as multiset counts: prod_e (1 - t^e)^(-B_e), i.e. a sum over partitions."""
    series = [1] + [0] * dmax
    for e in range(1, dmax + 1):
        b = B[e - 1]
        # (1 - t^e)^(-b) = sum_m C(b + m - 1, m) t^(e m)
        factor = [0] * (dmax + 1)
        for m in range(dmax // e + 1):
            factor[e * m] = comb(b + m - 1, m) if b else int(m == 0)
        series = _series_mul(series, factor, dmax)
    return series


def effective_divisor_count_fq(C: HyperCurve, p: int, d: int) -> int:
    """A_d computed from the zeta function and from closed-point counts; both must agree."""
    g = C.genus
    if d < 0:
        return 0
    if d > 2 * g + 2:
        raise CapabilityError(f"d = {d} exceeds 2g+2 = {2 * g + 2}")
    if d == 0:
        return 1
    if p ** max(d, g) > MAX_FIELD_SIZE:
        raise CapabilityError("field size exceeds the counting contract")
    counts = [count_points(C, p, k) for k in range(1, max(d, g) + 1)]
    z = zeta_L_polynomial(C, p, counts)
    via_zeta = divisor_counts_from_zeta(z, d)[d]
    B = closed_point_counts_fq(C, p, d, counts)
    via_points = divisor_counts_from_points(B, d)[d]
    if via_zeta != via_points:
        raise InternalConsistencyError(f"A_{d}: zeta gives {via_zeta}, points give {via_points}")
    return via_zeta


# -- explicit points and Frobenius orbits ---------------------------------------

@dataclass(frozen=True)
class ClosedPointFq:
    """A Frobenius orbit in C(F_{p^k}); points are ("aff", xcode, ycode) or ("inf", code)."""

    p: int
    field_degree: int
    representative: tuple
    orbit: tuple = field(compare=False)

    @property
    def degree(self) -> int:
        return len(self.orbit)


def _sqrt_table(F: FiniteField) -> dict[int, list[int]]:
    codes = np.arange(F.q, dtype=np.int64)
    arr = F.codes_to_array(codes)
    sq = F.array_to_codes(F.vmul(arr, arr))
    table: dict[int, list[int]] = {}
    for y, s in zip(codes.tolist(), sq.tolist()):
        table.setdefault(s, []).append(y)
    return table


def enumerate_points_fq(C: HyperCurve, p: int, k: int) -> list[tuple]:
    """Every point of the smooth model over F_{p^k}, explicitly."""
    fp = reduce_model(C, p)
    if p ** k > 10 ** 6:
        raise CapabilityError("explicit enumeration is limited to fields of size 10^6")
    F = FiniteField(p, k)
    roots = _sqrt_table(F)
    codes = np.arange(F.q, dtype=np.int64)
    vals = F.array_to_codes(F.vpoly_eval(list(fp.coeffs), F.codes_to_array(codes)))
    pts = []
    for x, v in zip(codes.tolist(), vals.tolist()):
        for y in roots.get(v, []):
            pts.append(("aff", x, y))
    if fp.degree % 2:
        pts.append(("inf", 0))
    else:
        for s in roots.get(F(fp.lc).code, []):
            pts.append(("inf", s))
    return pts


def _frobenius_point(F: FiniteField, pt: tuple, times: int = 1) -> tuple:
    def fr(code):
        arr = F.codes_to_array(np.array([code]))
        return int(F.array_to_codes(F.vfrobenius(arr, times))[0])
    if pt[0] == "aff":
        return ("aff", fr(pt[1]), fr(pt[2]))
    if pt == ("inf", 0):   # the single point over infinity of an odd model
        return pt
    return ("inf", fr(pt[1]))


def frobenius_orbits(C: HyperCurve, p: int, k: int) -> list[ClosedPointFq]:
    """Partition C(F_{p^k}) into orbits of the p-power Frobenius."""
    F = FiniteField(p, k)
    pts = enumerate_points_fq(C, p, k)
    seen = set()
    out = []
    for pt in pts:
        if pt in seen:
            continue
        orbit = [pt]
        nxt = _frobenius_point(F, pt)
        while nxt != pt:
            orbit.append(nxt)
            nxt = _frobenius_point(F, nxt)
        seen.update(orbit)
        out.append(ClosedPointFq(p, k, pt, tuple(orbit)))
    return out


def closed_points_fq(C: HyperCurve, p: int, d: int) -> list[ClosedPointFq]:
    """Closed points of degree exactly d, found by orbit enumeration in C(F_{p^d})."""
    return [P for P in frobenius_orbits(C, p, d) if P.degree == d]


@dataclass
class SplittingReport:
    p: int
    d: int
    e: int
    points: int
    component_degrees: list[tuple[int, ...]]
    expected_components: int
    expected_degree: int
    holds: bool


def splitting_spectrum_fq(C: HyperCurve, p: int, d: int, e: int) -> SplittingReport:
    """Base change of each degree-d closed point to F_{p^e}, by orbit splitting."""
    if p ** d > MAX_FIELD_SIZE:
        raise CapabilityError("field size exceeds the counting contract")
    F = FiniteField(p, d)
    comps = []
    for P in closed_points_fq(C, p, d):
        # components over F_{p^e} are the orbits of Frobenius^e on the geometric points
        rest = set(P.orbit)
        sizes = []
        while rest:
            start = rest.pop()
            size = 1
            nxt = _frobenius_point(F, start, e)
            while nxt != start:
                rest.discard(nxt)
                size += 1
                nxt = _frobenius_point(F, nxt, e)
            sizes.append(size)
        comps.append(tuple(sorted(sizes)))
    g = gcd(d, e)
    n = d // g
    holds = all(len(c) == g and all(s == n for s in c) for c in comps)
    return SplittingReport(p, d, e, len(comps), comps, g, n, holds)


def plane_genus_bound(d: int) -> int:
    if d < 1:
        raise ValueError("degree must be positive")
    return (d - 1) * (d - 2) // 2


def product_genus_bound(d1: int, g1: int, d2: int, g2: int) -> int:
    if d1 < 1 or d2 < 1 or g1 < 0 or g2 < 0:
        raise ValueError("need d_i >= 1 and g_i >= 0")
    return (d1 - 1) * (d2 - 1) + d1 * g1 + d2 * g2
