"""Divisors, valuations and Riemann-Roch spaces on y^2 = f(x).

Functions are written (a(x) + b(x) y) / den(x).  Since f is squarefree,
Q[x] + Q[x] y is the integral closure of Q[x] in the function field, which
makes the Riemann-Roch computation a finite linear-algebra problem: clear
the finite poles with ``den``, bound deg a and deg b from the infinite part
of the divisor, and impose vanishing conditions place by place.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .arith import UniPoly, factor_q, hensel_sqrt, valuation_at
from .arith.linalg import nullspace
from .arith.poly import poly_gcd
from .curve import (
    HyperCurve,
    InfiniteModel,
    Place,
    PlaceKind,
    conjugate,
    decompose_fiber,
    places_over,
)
from .errors import CapabilityError, EmptySystemError, PreconditionError

INF = float("inf")
Z = UniPoly.x()


# -- functions ---------------------------------------------------------------------

@dataclass(frozen=True)
class CurveFunction:
    a: UniPoly
    b: UniPoly
    den: UniPoly = field(default_factory=lambda: UniPoly([1]))

    def __post_init__(self):
        a, b, den = self.a, self.b, self.den
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(poly_gcd(a, b), den) if (a or b) else den.monic()
        if g.degree > 0:
            a, b, den = a // g, b // g, den // g
        s = den.lc
        object.__setattr__(self, "a", a * (1 / s))
        object.__setattr__(self, "b", b * (1 / s))
        object.__setattr__(self, "den", den * (1 / s))

    @classmethod
    def constant(cls, c=1) -> "CurveFunction":
        return cls(UniPoly([c]), UniPoly())

    @classmethod
    def poly(cls, a: UniPoly) -> "CurveFunction":
        return cls(a, UniPoly())

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_constant(self) -> bool:
        return not self.b and self.a.degree <= 0 and self.den.degree == 0

    def __mul__(self, other: "CurveFunction | int | Fraction") -> "CurveFunction":
        raise NotImplementedError("use mul(C, ...) which knows f")

    def scaled(self, c) -> "CurveFunction":
        return CurveFunction(self.a * c, self.b * c, self.den)

    def normalized(self) -> "CurveFunction":
        """Scale so the leading coefficient of a (or of b when a = 0) is 1."""
        lead = self.a.lc if self.a else self.b.lc
        return self.scaled(1 / lead) if lead else self

    def proportional(self, other: "CurveFunction") -> bool:
        """Equal up to a nonzero rational factor."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return (self.a * other.den == other.a * self.den * _ratio(self, other)
                and self.b * other.den == other.b * self.den * _ratio(self, other))

    def to_str(self) -> str:
        num = []
        if self.a:
            num.append(f"({self.a})")
        if self.b:
            num.append(f"({self.b})*y")
        s = " + ".join(num) or "0"
        if self.den.degree > 0:
            s = f"[{s}] / ({self.den})"
        return s

    __str__ = to_str


def _ratio(f: CurveFunction, g: CurveFunction) -> Fraction:
    # f = r g  =>  r = lead(f * g.den) / lead(g * f.den)
    fa, ga = (f.a, g.a) if f.a else (f.b, g.b)
    top = (fa * g.den).lc
    bot = (ga * f.den).lc
    return top / bot if bot else Fraction(0)


def fn_mul(C: HyperCurve, f: CurveFunction, g: CurveFunction) -> CurveFunction:
    a = f.a * g.a + f.b * g.b * C.f
    b = f.a * g.b + f.b * g.a
    return CurveFunction(a, b, f.den * g.den)


def fn_inverse(C: HyperCurve, f: CurveFunction) -> CurveFunction:
    if f.is_zero():
        raise ZeroDivisionError("zero function")
    norm = f.a * f.a - f.b * f.b * C.f
    return CurveFunction(f.den * f.a, -(f.den * f.b), norm)


# -- divisors ----------------------------------------------------------------------

class Divisor:
    """Finite Z-combination of places of one curve; immutable."""

    __slots__ = ("curve", "_entries", "_hash")

    def __init__(self, curve: HyperCurve, entries: Mapping[Place, int] | Iterable = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[Place, int] = {}
        for P, n in items:
            acc[P] = acc.get(P, 0) + int(n)
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "_entries",
                           tuple(sorted(((P, n) for P, n in acc.items() if n), key=lambda t: t[0].sort_key())))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Divisor is immutable")

    @classmethod
    def of(cls, curve: HyperCurve, *places: Place) -> "Divisor":
        return cls(curve, [(P, 1) for P in places])

    @property
    def entries(self) -> dict[Place, int]:
        return dict(self._entries)

    def items(self):
        return iter(self._entries)

    def __getitem__(self, P: Place) -> int:
        for Q, n in self._entries:
            if Q == P:
                return n
        return 0

    def support(self) -> list[Place]:
        return [P for P, _ in self._entries]

    @property
    def degree(self) -> int:
        return sum(n * P.degree for P, n in self._entries)

    def is_effective(self) -> bool:
        return all(n > 0 for _, n in self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(self.curve, list(self._entries) + list(other._entries))

    def __neg__(self) -> "Divisor":
        return Divisor(self.curve, [(P, -n) for P, n in self._entries])

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, k: int) -> "Divisor":
        return Divisor(self.curve, [(P, k * n) for P, n in self._entries])

    __rmul__ = __mul__

    def __le__(self, other: "Divisor") -> bool:
        return (other - self).is_effective() or (other - self).is_zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self.curve == other.curve and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        if not self._entries:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{n}*{P.label()}" for P, n in self._entries) + ")"


# -- valuations --------------------------------------------------------------------

def _local_valuation(kind: PlaceKind, u: UniPoly, v: UniPoly | None, f: UniPoly,
                     a: UniPoly, b: UniPoly) -> float | int:
    """v_P(a + b y) at a finite place of y^2 = f over the prime u."""
    if not a and not b:
        return INF
    if kind is PlaceKind.RAMIFIED:
        return min(2 * valuation_at(a, u), 2 * valuation_at(b, u) + 1)
    if kind is PlaceKind.INERT:
        return min(valuation_at(a, u), valuation_at(b, u))
    if not b:
        return valuation_at(a, u)
    # v_P(a + by) <= v_u(a^2 - b^2 f) because a - by is integral at P
    m = valuation_at(a * a - b * b * f, u) + 1
    V = hensel_sqrt(f, u, m, v)
    w = (a + b * V) % (u ** m)
    return valuation_at(w, u)


def _infinity_data(C: HyperCurve, P: Place):
    model = C.infinite_model
    if model is InfiniteModel.RAMIFIED:
        return PlaceKind.RAMIFIED, None, 2
    if model is InfiniteModel.INERT:
        return PlaceKind.INERT, None, 1
    s = C.lc_sqrt * C.infinity_sign(P)
    return PlaceKind.SPLIT, UniPoly([s]), 1


def _to_infinity(C: HyperCurve, a: UniPoly, b: UniPoly) -> tuple[int, UniPoly, UniPoly]:
    """Rewrite a + b y as z^(-M) (A(z) + B(z) Y) with z = 1/x, Y = y z^(g+1)."""
    g = C.genus
    M = max(a.degree if a else -10 ** 9, b.degree + g + 1 if b else -10 ** 9)
    A = a.reverse(M) if a else UniPoly()
    B = b.reverse(M - g - 1) if b else UniPoly()
    return M, A, B


def poly_valuation(C: HyperCurve, P: Place, a: UniPoly, b: UniPoly) -> float | int:
    """v_P(a + b y) for polynomial a, b."""
    if not a and not b:
        return INF
    if P.is_finite:
        return _local_valuation(P.kind, P.u, P.v, C.f, a, b)
    kind, v, e = _infinity_data(C, P)
    M, A, B = _to_infinity(C, a, b)
    return -M * e + _local_valuation(kind, Z, v, C.reversed_f, A, B)


def valuation(C: HyperCurve, P: Place, phi: CurveFunction) -> float | int:
    """Order of vanishing of phi at P (negative for poles, inf for phi = 0)."""
    if phi.is_zero():
        return INF
    num = poly_valuation(C, P, phi.a, phi.b)
    if P.is_finite:
        return num - P.ramification * valuation_at(phi.den, P.u)
    e = 2 if C.infinite_model is InfiniteModel.RAMIFIED else 1
    return num + e * phi.den.degree


def divisor_of(C: HyperCurve, phi: CurveFunction) -> Divisor:
    """Full principal divisor of a nonzero function (factors the norm over Q)."""
    if phi.is_zero():
        raise ValueError("the zero function has no divisor")
    norm = phi.a * phi.a - phi.b * phi.b * C.f
    primes = {u for u, _ in factor_q(norm)} if norm.degree > 0 else set()
    if phi.den.degree > 0:
        primes |= {u for u, _ in factor_q(phi.den)}
    entries = []
    for u in primes:
        for P in places_over(C, u):
            entries.append((P, valuation(C, P, phi)))
    for P in C.infinite_places():
        entries.append((P, valuation(C, P, phi)))
    return Divisor(C, entries)


# -- Riemann-Roch spaces -----------------------------------------------------------

@dataclass
class RRSpace:
    curve: HyperCurve
    divisor: Divisor
    basis: list[CurveFunction]
    base_locus: Divisor | None = None

    @property
    def h0(self) -> int:
        return len(self.basis)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _condition_rows(kind, u, v, f, r, a_polys, b_polys) -> list[list[Fraction]]:
    """Linear conditions v_P(sum alpha_i a_i + (sum beta_j b_j) y) >= r."""
    if r <= 0:
        return []
    n = u.degree
    if kind is PlaceKind.SPLIT:
        U = u ** r
        V = hensel_sqrt(f, u, r, v)
        imgs = [p % U for p in a_polys] + [(p * V) % U for p in b_polys]
        return [[img[i] for img in imgs] for i in range(r * n)]
    if kind is PlaceKind.RAMIFIED:
        ra, rb = _ceil_div(r, 2), r // 2
    else:
        ra = rb = r
    rows = []
    if ra > 0:
        U = u ** ra
        imgs = [p % U for p in a_polys] + [UniPoly()] * len(b_polys)
        rows += [[img[i] for img in imgs] for i in range(ra * n)]
    if rb > 0:
        U = u ** rb
        imgs = [UniPoly()] * len(a_polys) + [p % U for p in b_polys]
        rows += [[img[i] for img in imgs] for i in range(rb * n)]
    return rows


def _group_by_prime(C: HyperCurve, D: Divisor):
    groups: dict[UniPoly, list[Place]] = {}
    for P, _ in D.items():
        if P.is_finite:
            groups.setdefault(P.u, [])
    out = {}
    for u in groups:
        sample = next(P for P, _ in D.items() if P.is_finite and P.u == u)
        if sample.kind is PlaceKind.SPLIT:
            out[u] = sorted({sample, conjugate(C, sample)})
        else:
            out[u] = [sample]
    return out


def riemann_roch_space(C: HyperCurve, D: Divisor, with_base_locus: bool = True) -> RRSpace:
    """Basis of L(D) = {phi : div(phi) + D >= 0} together with 0."""
    g = C.genus
    deg = D.degree
    if abs(deg) > 6 * g + 6:
        raise CapabilityError(f"|deg D| = {abs(deg)} exceeds the contract 6g+6 = {6 * g + 6}")
    if deg < 0:
        return RRSpace(C, D, [], None)
    # clear finite poles
    den = UniPoly([1])
    finite_conditions = []
    for u, places in _group_by_prime(C, D).items():
        e = places[0].ramification
        k = max(0, max(_ceil_div(D[P], e) for P in places))
        den = den * u ** k
        for P in places:
            finite_conditions.append((P, e * k - D[P]))
    e_inf = 2 if C.infinite_model is InfiniteModel.RAMIFIED else 1
    inf_places = C.infinite_places()
    N = [D[P] + e_inf * den.degree for P in inf_places]
    model = C.infinite_model
    if model is InfiniteModel.RAMIFIED:
        ca, cb = N[0] // 2, (N[0] - 2 * g - 1) // 2
        M = None
    elif model is InfiniteModel.INERT:
        ca, cb = N[0], N[0] - g - 1
        M = None
    else:
        M = max(N)
        ca, cb = M, M - g - 1
    if ca < 0 and cb < 0:
        return RRSpace(C, D, [], None)
    a_polys = [UniPoly.monomial(i) for i in range(ca + 1)]
    b_polys = [UniPoly.monomial(j) for j in range(cb + 1)]
    rows: list[list[Fraction]] = []
    for P, r in finite_conditions:
        rows += _condition_rows(P.kind, P.u, P.v, C.f, r, a_polys, b_polys)
    if M is not None:
        za = [UniPoly.monomial(M - i) for i in range(ca + 1)]
        zb = [UniPoly.monomial(M - g - 1 - j) for j in range(cb + 1)]
        for P, n in zip(inf_places, N):
            kind, v, _ = _infinity_data(C, P)
            rows += _condition_rows(kind, Z, v, C.reversed_f, M - n, za, zb)
    nvars = len(a_polys) + len(b_polys)
    vecs = nullspace(rows, nvars)
    basis = []
    for vec in vecs:
        a = UniPoly(vec[:len(a_polys)])
        b = UniPoly(vec[len(a_polys):])
        basis.append(CurveFunction(a, b, den).normalized())
    space = RRSpace(C, D, basis, None)
    if with_base_locus and D.is_effective() and basis:
        space.base_locus = _base_locus(C, D, basis)
    return space


def h0(C: HyperCurve, D: Divisor) -> int:
    return riemann_roch_space(C, D, with_base_locus=False).h0


def canonical_divisor(C: HyperCurve) -> Divisor:
    """(g - 1) times the pullback of infinity under x, i.e. div(dx / y)."""
    g = C.genus
    places = C.infinite_places()
    if C.infinite_model is InfiniteModel.RAMIFIED:
        K = Divisor(C, [(places[0], 2 * g - 2)])
    else:
        K = Divisor(C, [(P, g - 1) for P in places])
    return K


def _base_locus(C: HyperCurve, D: Divisor, basis: list[CurveFunction]) -> Divisor:
    entries = []
    for P, n in D.items():
        entries.append((P, min(valuation(C, P, phi) for phi in basis) + n))
    return Divisor(C, entries)


def base_locus(C: HyperCurve, D: Divisor) -> Divisor:
    """Largest effective B with B <= div(phi) + D for every phi in L(D).

    For non-effective D the computation moves to the member div(phi0) + D,
    which has the same complete linear system.
    """
    space = riemann_roch_space(C, D, with_base_locus=False)
    if not space.basis:
        raise EmptySystemError("h0(D) = 0: the linear system is empty")
    if D.is_effective() or D.is_zero():
        return _base_locus(C, D, space.basis)
    phi0 = space.basis[0]
    D2 = divisor_of(C, phi0) + D
    inv = fn_inverse(C, phi0)
    return _base_locus(C, D2, [fn_mul(C, phi, inv) for phi in space.basis])


def basepoint_free_certificate(C: HyperCurve, D: Divisor, seed: int = 0, tries: int = 200):
    """Two members of |D| with disjoint supports, or None when none was found.

    Returns ``(phi1, phi2)`` with phi1 = 1 (member D itself) and div(phi2) + D
    supported away from supp D.
    """
    if not D.is_effective():
        raise PreconditionError("expects an effective divisor")
    space = riemann_roch_space(C, D, with_base_locus=False)
    supp = D.support()

    def avoids(phi):
        return all(valuation(C, P, phi) == -n for P, n in D.items())

    for phi in space.basis:
        if avoids(phi):
            return CurveFunction.constant(1), phi
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [rng.randint(-5, 5) for _ in space.basis]
        phi = _combine(space.basis, coeffs)
        if phi is not None and avoids(phi):
            return CurveFunction.constant(1), phi
    return None if supp else (CurveFunction.constant(1), CurveFunction.constant(1))


def _combine(basis: list[CurveFunction], coeffs) -> CurveFunction | None:
    den = UniPoly([1])
    for phi in basis:
        den = den * phi.den // poly_gcd(den, phi.den)
    a = UniPoly()
    b = UniPoly()
    for c, phi in zip(coeffs, basis):
        m = den // phi.den
        a = a + phi.a * m * c
        b = b + phi.b * m * c
    if not a and not b:
        return None
    return CurveFunction(a, b, den)


def is_principal(C: HyperCurve, D: Divisor) -> CurveFunction | None:
    """phi with div(phi) = D, or None if D is not principal."""
    if D.degree != 0:
        raise PreconditionError(f"is_principal needs degree 0, got {D.degree}")
    space = riemann_roch_space(C, -D, with_base_locus=False)
    if space.h0 == 0:
        return None
    if space.h0 != 1:
        raise AssertionError("a degree-0 divisor has h0 <= 1")
    return space.basis[0]


# -- classification ----------------------------------------------------------------

class PointClass(enum.Enum):
    P1_PARAMETERIZED = "P1-parameterized"
    P1_ISOLATED = "P1-isolated"


@dataclass
class Classification:
    place: Place
    degree: int
    h0: int
    verdict: PointClass
    witness: CurveFunction | None = None

    @property
    def witness_degree(self) -> int | None:
        # the witness has pole divisor exactly the point, so it is a map of degree deg(x)
        return self.degree if self.witness is not None else None


def classify_point(C: HyperCurve, x: Place) -> Classification:
    space = riemann_roch_space(C, Divisor.of(C, x), with_base_locus=False)
    if space.h0 >= 2:
        witness = next(phi for phi in space.basis if not phi.is_constant())
        return Classification(x, x.degree, space.h0, PointClass.P1_PARAMETERIZED, witness)
    return Classification(x, x.degree, space.h0, PointClass.P1_ISOLATED)


@dataclass
class ImageCertificate:
    place: Place
    degree: int
    h0: int
    representative: Divisor
    excluded_splittings: list[tuple[int, int]]
    statement: str


def reducibility_image_test(C: HyperCurve, x: Place,
                            partitions: Iterable[tuple[int, int]] | None = None) -> ImageCertificate:
    """Certify that [x] is not a sum of effective classes of degrees (e, d - e).

    Only valid for P1-isolated points, where h0([x]) = 1 makes x the unique
    effective divisor in its class.
    """
    cls = classify_point(C, x)
    if cls.verdict is not PointClass.P1_ISOLATED:
        raise PreconditionError("the image test only applies to P1-isolated points")
    d = x.degree
    parts = list(partitions) if partitions is not None else [(e, d - e) for e in range(1, d // 2 + 1)]
    for e, e2 in parts:
        if e < 1 or e2 < 1 or e + e2 != d:
            raise PreconditionError(f"({e}, {e2}) is not a splitting of {d}")
    rep = Divisor.of(C, x)
    return ImageCertificate(
        x, d, cls.h0, rep, parts,
        f"h0 = 1, so the only effective divisor in [x] is x itself, which is a single "
        f"closed point of degree {d}; no splitting into effective parts exists")


def fiber_divisor(C: HyperCurve, t) -> Divisor:
    """x^*(t): the divisor of zeros of x - t."""
    return Divisor.of(C, *decompose_fiber(C, t)) if not _ramified(C, t) else \
        Divisor(C, [(decompose_fiber(C, t)[0], 2)])


def _ramified(C: HyperCurve, t) -> bool:
    return C.f(Fraction(t)) == 0


def infinity_divisor(C: HyperCurve) -> Divisor:
    """x^*(infinity)."""
    if C.infinite_model is InfiniteModel.RAMIFIED:
        return Divisor(C, [(C.infinite_places()[0], 2)])
    return Divisor(C, [(P, 1) for P in C.infinite_places()])
