"""Degree sets and density degree sets: calculators, filters and samplers.

Everything here returns bounds with witnesses, never certified exact values
of the index or the gonality.  Comparisons against sqrt(g) are done in
Q(sqrt(g)) by squaring, so no verdict depends on floating point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .arith import UniPoly, factor_fp, factor_q
from .arith.linalg import charpoly
from .curve import HyperCurve, Place, PlaceKind, decompose_fiber, is_rational_square, places_over
from .errors import PreconditionError, VerificationFailed


# -- rational enumeration ----------------------------------------------------------

def rationals_by_height(limit: int | None = None) -> Iterator[Fraction]:
    """Rationals ordered by height max(|num|, den), then by value.

    Height 1 is {-1, 0, 1}, height 2 is {-2, -1/2, 1/2, 2}, and so on.
    """
    produced = 0
    h = 1
    while True:
        level = set()
        for q in range(1, h + 1):
            for p in range(-h, h + 1):
                if max(abs(p), q) == h and math.gcd(p, q) == 1:
                    level.add(Fraction(p, q))
        for t in sorted(level):
            if limit is not None and produced >= limit:
                return
            yield t
            produced += 1
        h += 1


# -- index and asymptotic rules ----------------------------------------------------

def index_upper_bound(C: HyperCurve, search_budget: int = 100) -> tuple[int, list[tuple[int, Place]]]:
    """gcd of degrees of closed points found; the true index divides it."""
    witnesses: list[tuple[int, Place]] = []
    for P in C.infinite_places():
        witnesses.append((P.degree, P))
    for P in C.weierstrass_places():
        if P.is_finite:
            witnesses.append((P.degree, P))
    for t in rationals_by_height(search_budget):
        for P in decompose_fiber(C, t):
            witnesses.append((P.degree, P))
    bound = 0
    for d, _ in witnesses:
        bound = math.gcd(bound, d)
    # keep one witness per degree, the first found
    seen: dict[int, tuple[int, Place]] = {}
    for d, P in witnesses:
        seen.setdefault(d, (d, P))
    return bound, sorted(seen.values(), key=lambda w: w[0])


@dataclass(frozen=True)
class DensityRule:
    """For d >= threshold: d is a density degree iff index | d."""

    threshold: int
    index: int

    def __call__(self, d: int) -> bool | None:
        if d < self.threshold:
            return None
        return d % self.index == 0


def asymptotic_density_rule(g: int, index: int) -> DensityRule:
    if g < 0 or index < 1:
        raise PreconditionError("need g >= 0 and index >= 1")
    return DensityRule(max(2 * g, 1), index)


def scalar_closure(S: Iterable[int], cap: int) -> set[int]:
    out = set()
    for s in S:
        if s < 1:
            raise PreconditionError("degrees are positive")
        out.update(range(s, cap + 1, s))
    return out


@dataclass(frozen=True)
class GonalityWindow:
    low: int
    high: int

    def av_allowed(self, d: int) -> bool:
        """A degree d in the AV density set needs gon <= 2d; False rules d out."""
        return self.low <= 2 * d


def gonality_window(gon_lower: int, gon_upper: int) -> GonalityWindow:
    """Interval containing the least density degree: [ceil(gon/2), gon]."""
    if not 1 <= gon_lower <= gon_upper:
        raise PreconditionError("need 1 <= gon_lower <= gon_upper")
    return GonalityWindow(-(-gon_lower // 2), gon_upper)


# -- AV density rule ---------------------------------------------------------------

class Verdict(enum.Enum):
    IN = "in"
    NOT_IN = "not in"
    CONDITIONAL = "conditional"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class RankInput:
    source: str  # "config" or "LMFDB"
    jacobian_rank: int | None
    provenance: str = ""

    def __post_init__(self):
        if self.source not in ("config", "LMFDB"):
            raise PreconditionError(f"unknown rank source {self.source!r}")
        if self.jacobian_rank is not None and self.jacobian_rank < 0:
            raise PreconditionError("rank must be nonnegative")


@dataclass
class AVVerdict:
    verdict: Verdict
    reason: str
    branches: dict[str, Verdict] = field(default_factory=dict)


def av_density_rule(g: int, d: int, degree_witness: bool, rank: RankInput) -> AVVerdict:
    if rank.jacobian_rank == 0:
        return AVVerdict(Verdict.NOT_IN, "rank 0: every point is AV-isolated")
    if g < 1 or d < g:
        return AVVerdict(Verdict.INDETERMINATE, "outside the regime d >= g >= 1")
    if rank.jacobian_rank is None:
        yes = Verdict.IN if degree_witness else Verdict.NOT_IN
        return AVVerdict(Verdict.CONDITIONAL, "rank unknown",
                         {"rank > 0": yes, "rank = 0": Verdict.NOT_IN})
    if degree_witness:
        return AVVerdict(Verdict.IN, f"degree-{d} point and rank {rank.jacobian_rank} > 0")
    return AVVerdict(Verdict.NOT_IN, f"no degree-{d} point")


def is_ueno_by_degree(g: int, d: int) -> bool | None:
    """Closed points of degree >= g are Ueno; below that nothing is decided."""
    return True if d >= g else None


# -- exact arithmetic in Q(sqrt(g)) ------------------------------------------------

@dataclass(frozen=True)
class Surd:
    """r + s*sqrt(n) with rational r, s and a fixed integer n >= 0."""

    r: Fraction
    s: Fraction
    n: int

    @classmethod
    def of(cls, r, n: int, s=0) -> "Surd":
        return cls(Fraction(r), Fraction(s), n)

    def __add__(self, o):
        o = self._lift(o)
        return Surd(self.r + o.r, self.s + o.s, self.n)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.r, -self.s, self.n)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return Surd(self.r * o.r + self.s * o.s * self.n, self.r * o.s + self.s * o.r, self.n)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = Fraction(c)
        return Surd(self.r / c, self.s / c, self.n)

    def _lift(self, o) -> "Surd":
        return o if isinstance(o, Surd) else Surd(Fraction(o), Fraction(0), self.n)

    def sign(self) -> int:
        r, s, n = self.r, self.s, self.n
        if s == 0 or n == 0:
            return (r > 0) - (r < 0)
        if r >= 0 and s >= 0:
            return 1 if (r or s) else 0
        if r <= 0 and s <= 0:
            return -1
        # opposite signs: compare r^2 with s^2 n
        diff = r * r - s * s * n
        if diff == 0:
            return 0
        return (1 if r > 0 else -1) if diff > 0 else (1 if s > 0 else -1)

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __le__(self, o):
        return (self - o).sign() <= 0

    def __float__(self):
        return float(self.r) + float(self.s) * math.sqrt(self.n)

    def __str__(self):
        return f"{self.r} + {self.s}*sqrt({self.n})" if self.s else str(self.r)


def _below_sqrt_plus_one(d: int, g: int) -> bool:
    """d < sqrt(g) + 1, exactly."""
    return d < 1 or (d - 1) ** 2 < g


@dataclass
class CSRow:
    d3: int
    adjunction_bound: Fraction
    relaxed_bound: Surd
    target: Surd
    chain_holds: bool
    excluded: bool


@dataclass
class CSReport:
    hypotheses_met: bool
    message: str
    rows: list[CSRow]


def castelnuovo_severi_step(g: int, d1: int, g1: int, d2: int, g2: int) -> CSReport:
    """Genus-chain table for every proper divisor d3 of gcd(d1, d2)."""
    root = Surd.of(1, g, 1)  # sqrt(g) + 1
    for d, gi in ((d1, g1), (d2, g2)):
        if d < 2 or not _below_sqrt_plus_one(d, g):
            return CSReport(False, f"degree {d} outside [2, sqrt(g)+1)", [])
        lim = (root / d - 1) * (root / d - 1)
        if not Surd.of(gi, g) < lim:
            return CSReport(False, f"genus {gi} not below ((sqrt(g)+1)/{d} - 1)^2", [])
    rows = []
    common = math.gcd(d1, d2)
    for d3 in range(1, common + 1):
        if common % d3 or d3 in (d1, d2):
            continue
        q1, q2 = Fraction(d1, d3), Fraction(d2, d3)
        adj = (q1 - 1) * (q2 - 1) + q1 * g1 + q2 * g2
        relaxed = ((q1 - 1) * (q2 - 1)) + (root / d1 - 1) * (root / d1 - 1) * q1 \
            + (root / d2 - 1) * (root / d2 - 1) * q2
        target = (root / d3 - 1) * (root / d3 - 1)
        holds = Surd.of(adj, g) < relaxed and relaxed < target
        # d3 = 1 would make C -> Y3 birational, but then g(Y3) = g >= target
        excluded = not (target < Surd.of(g, g))
        rows.append(CSRow(d3, adj, relaxed, target, holds, excluded or d3 == 1))
    msg = "factors through some d3 >= 2" if all(r.chain_holds for r in rows) else "chain failed"
    return CSReport(True, msg, rows)


# -- the positivity claim ----------------------------------------------------------

Poly3 = dict[tuple[int, int, int], Fraction]  # exponents of (m, a, eps)


def _p3(terms: dict) -> Poly3:
    return {k: Fraction(v) for k, v in terms.items() if v}


def _p3_add(*ps: Poly3) -> Poly3:
    out: dict = {}
    for p in ps:
        for k, v in p.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _p3_scale(p: Poly3, c) -> Poly3:
    return {k: v * c for k, v in p.items() if v * c}


def _p3_mul(*ps: Poly3) -> Poly3:
    acc: Poly3 = {(0, 0, 0): Fraction(1)}
    for p in ps:
        nxt: dict = {}
        for k1, v1 in acc.items():
            for k2, v2 in p.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                nxt[k] = nxt.get(k, 0) + v1 * v2
        acc = {k: v for k, v in nxt.items() if v}
    return acc


def _p3_eval(p: Poly3, m, a, eps) -> Fraction:
    return sum(v * Fraction(m) ** i * Fraction(a) ** j * Fraction(eps) ** k for (i, j, k), v in p.items())


M3 = _p3({(1, 0, 0): 1})
A3 = _p3({(0, 1, 0): 1})
E3 = _p3({(0, 0, 1): 1})
ONE3 = _p3({(0, 0, 0): 1})


def positivity_polynomial() -> Poly3:
    """f in (m, a, eps), from the inequality after multiplying by d1 d2 / d3^2.

    With A = m + 2, B = m + 2 + a and X = B + eps (X standing for (sqrt(g)+1)/d3):
    f = AB (X-1)^2 - AB (A-1)(B-1) - B (X-A)^2 - A (X-B)^2.
    """
    two = _p3_scale(ONE3, 2)
    A = _p3_add(M3, two)
    B = _p3_add(M3, two, A3)
    X = _p3_add(B, E3)
    neg1 = _p3_scale(ONE3, -1)
    XA = _p3_add(X, _p3_scale(A, -1))
    XB = _p3_add(X, _p3_scale(B, -1))
    return _p3_add(
        _p3_mul(A, B, _p3_add(X, neg1), _p3_add(X, neg1)),
        _p3_scale(_p3_mul(A, B, _p3_add(A, neg1), _p3_add(B, neg1)), -1),
        _p3_scale(_p3_mul(B, XA, XA), -1),
        _p3_scale(_p3_mul(A, XB, XB), -1),
    )


def positivity_closed_form() -> Poly3:
    """eps^2 (am + a + m^2 + 2m) + 2 eps (m+1)(a+m+2)^2 + (m+1) a (a+m+2)^2."""
    am2 = _p3_add(A3, M3, _p3_scale(ONE3, 2))
    m1 = _p3_add(M3, ONE3)
    quad = _p3_add(_p3_mul(A3, M3), A3, _p3_mul(M3, M3), _p3_scale(M3, 2))
    return _p3_add(
        _p3_mul(E3, E3, quad),
        _p3_scale(_p3_mul(E3, m1, am2, am2), 2),
        _p3_mul(m1, A3, am2, am2),
    )


@dataclass
class PositivityRecord:
    monomials: int
    coefficients: dict[tuple[int, int, int], int]
    all_nonnegative: bool
    eps_coefficient_positive: bool
    sweep_points: int
    min_ratio: Fraction  # min f / (8 eps) over the sweep


SWEEP_EPS = (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5))


def _original_f(m: int, a: int, eps: Fraction) -> Fraction:
    # the unexpanded form: A B times (rhs - lhs) of the inequality
    A, B = Fraction(m + 2), Fraction(m + 2 + a)
    X = B + eps
    lhs = (A - 1) * (B - 1) + A * (X / A - 1) ** 2 + B * (X / B - 1) ** 2
    rhs = (X - 1) ** 2
    return A * B * (rhs - lhs)


def positivity_claim_verify(grid: int = 10, eps_values: Sequence[Fraction] = SWEEP_EPS) -> PositivityRecord:
    f = positivity_polynomial()
    closed = positivity_closed_form()
    if f != closed:
        diff = _p3_add(f, _p3_scale(closed, -1))
        raise VerificationFailed(f"expansion differs from the closed form by {diff}")
    if any(v.denominator != 1 for v in f.values()):
        raise VerificationFailed("non-integer coefficient")
    nonneg = all(v >= 0 for v in f.values())
    eps_pos = any(k[2] == 1 and v > 0 for k, v in f.items())
    if not (nonneg and eps_pos):
        raise VerificationFailed("coefficient sign pattern fails")
    count = 0
    min_ratio = None
    for m in range(grid + 1):
        for a in range(grid + 1):
            for eps in eps_values:
                val = _p3_eval(f, m, a, eps)
                if val != _original_f(m, a, eps):
                    raise VerificationFailed(f"expanded and original forms differ at {(m, a, eps)}")
                if val < 8 * eps:
                    raise VerificationFailed(f"f < 8 eps at {(m, a, eps)}")
                ratio = val / (8 * eps)
                min_ratio = ratio if min_ratio is None else min(min_ratio, ratio)
                count += 1
    coeffs = {k: int(v) for k, v in sorted(f.items())}
    return PositivityRecord(len(f), coeffs, nonneg, eps_pos, count, min_ratio)


# -- small formulas ----------------------------------------------------------------

def poincare_degree(g: int, d: int) -> int:
    """Theta-degree of W^d: g! / (g - d)!."""
    if not 0 <= d <= g:
        raise PreconditionError(f"need 0 <= d <= g, got d = {d}, g = {g}")
    return math.perm(g, d)


def single_source_filter(g: int, deg_pi: int, delta_P1_C0: Iterable[int]) -> set[int]:
    """deg_pi * (S ∩ [1, (sqrt(g)+1)/deg_pi)), i.e. products e with (e-1)^2 < g."""
    if deg_pi < 2 or g < 1:
        raise PreconditionError("need deg_pi >= 2 and g >= 1")
    return {deg_pi * s for s in delta_P1_C0 if s >= 1 and (deg_pi * s - 1) ** 2 < g}


# -- fiber sampling ----------------------------------------------------------------

@dataclass(frozen=True)
class MapSpec:
    """The map C -> P^1, P -> psi(x(P)) with psi = num/den; identity by default."""

    num: UniPoly = field(default_factory=UniPoly.x)
    den: UniPoly = field(default_factory=lambda: UniPoly([1]))

    def __post_init__(self):
        if not self.den:
            raise PreconditionError("psi has zero denominator")
        if max(self.num.degree, self.den.degree) < 1:
            raise PreconditionError("psi is constant: every fiber is degenerate")
        from .arith.poly import poly_gcd
        if poly_gcd(self.num, self.den).degree > 0:
            raise PreconditionError("numerator and denominator of psi share a factor")

    @property
    def is_identity(self) -> bool:
        return self.num == UniPoly.x() and self.den == UniPoly([1])

    @property
    def psi_degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def fiber_poly(self, t: Fraction) -> UniPoly | None:
        """num - t den, or None when the fiber meets x = infinity."""
        h = self.num - self.den * t
        if h.degree < self.psi_degree:
            return None
        return h


@dataclass
class FiberSampleReport:
    map_degree: int
    sampled: int
    irreducible: int
    exceptional: list[Fraction]
    skipped: list[Fraction]

    @property
    def irreducible_fraction(self) -> float:
        n = self.sampled - len(self.skipped)
        return self.irreducible / n if n else 0.0


def fiber_is_integral(C: HyperCurve, spec: MapSpec, t: Fraction) -> bool | None:
    """True iff the fiber over t is one reduced closed point of full degree."""
    if spec.is_identity:
        return not is_rational_square(C.f(t))
    h = spec.fiber_poly(t)
    if h is None:
        return None
    facs = factor_q(h)
    if len(facs) != 1 or facs[0][1] != 1:
        return False
    places = places_over(C, facs[0][0])
    return len(places) == 1 and places[0].kind is PlaceKind.INERT


def fiber_sample(C: HyperCurve, spec: MapSpec | None = None, budget: int = 100) -> FiberSampleReport:
    spec = spec or MapSpec()
    irr = 0
    exceptional: list[Fraction] = []
    skipped: list[Fraction] = []
    for t in rationals_by_height(budget):
        ok = fiber_is_integral(C, spec, t)
        if ok is None:
            skipped.append(t)
        elif ok:
            irr += 1
        else:
            exceptional.append(t)
    return FiberSampleReport(2 * spec.psi_degree, budget, irr, exceptional, skipped)


def fiber_y_polynomial(C: HyperCurve, spec: MapSpec, t: Fraction) -> UniPoly:
    """Polynomial in Y whose roots are the y-coordinates of the fiber over t."""
    h = spec.fiber_poly(Fraction(t))
    if h is None:
        raise PreconditionError("fiber meets infinity")
    h = h.monic()
    n = h.degree
    fr = C.f % h
    # multiplication by f on Q[x]/h
    mat = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        col = (fr * UniPoly.monomial(j)) % h
        for i in range(n):
            mat[i][j] = col[i]
    chi = charpoly(mat)
    return chi.compose(UniPoly.monomial(2))


@dataclass
class CycleTypeTable:
    polynomial: UniPoly
    patterns: dict[int, tuple[int, ...]]
    skipped: list[int]

    def distinct_patterns(self) -> set[tuple[int, ...]]:
        return set(self.patterns.values())


def cycle_type_statistics(C: HyperCurve, spec: MapSpec | None, t, primes: Iterable[int]) -> CycleTypeTable:
    """Factor-degree patterns of the fiber polynomial modulo each prime."""
    spec = spec or MapSpec()
    R = fiber_y_polynomial(C, spec, Fraction(t))
    Rz = UniPoly(R.primitive_int())
    patterns: dict[int, tuple[int, ...]] = {}
    skipped = []
    for p in primes:
        if Rz.lc % p == 0:
            skipped.append(p)
            continue
        Rp = Rz.reduce(p)
        if not Rp.is_squarefree():
            skipped.append(p)
            continue
        pat = []
        for g, e in factor_fp(Rp):
            pat += [g.degree] * e
        patterns[p] = tuple(sorted(pat))
    return CycleTypeTable(R, patterns, skipped)


# -- summary report ----------------------------------------------------------------

@dataclass
class DegreeSetReport:
    curve_label: str
    found_degrees: dict[int, Place]
    index_upper_bound: int
    gonality_upper_bound: int
    asymptotic_rule: DensityRule
    notes: list[str] = field(default_factory=list)


def degree_set_report(C: HyperCurve, search_budget: int = 100) -> DegreeSetReport:
    bound, wits = index_upper_bound(C, search_budget)
    found = {d: P for d, P in wits}
    notes = ["index and gonality are upper bounds backed by witnesses, not certified values"]
    # the x-map is a basepoint-free degree-2 system
    return DegreeSetReport(C.label or str(C), found, bound, 2,
                           asymptotic_density_rule(C.genus, bound), notes)
