"""Hyperelliptic curves y^2 = f(x) over Q and their closed points (places)."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt, lcm

import numpy as np

from .arith import UniPoly, factor_q, resultant
from .arith.poly import inverse_mod, poly_gcd
from .errors import InvalidModelError, NotAPointError, NotOnCurveError


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Nonnegative rational square root of ``q`` if it exists."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def is_rational_square(q: Fraction) -> bool:
    return rational_sqrt(q) is not None


class InfiniteModel(enum.Enum):
    RAMIFIED = "one ramified place"
    SPLIT = "two rational places"
    INERT = "one degree-2 place"


class PlaceKind(enum.Enum):
    SPLIT = "finite-unramified"
    INERT = "finite-inert"
    RAMIFIED = "finite-ramified"
    INFINITE = "infinite"


@dataclass(frozen=True)
class Place:
    """A closed point of a hyperelliptic curve.

    Finite places lie over a monic irreducible ``u`` in Q[x].  A split place
    carries ``v`` with v^2 = f mod u and has degree deg u; an inert place
    (f not a square modulo u) has degree 2 deg u; a ramified place has
    u | f and v = 0.  Infinite places are numbered by ``index``.
    """

    kind: PlaceKind
    u: UniPoly | None = None
    v: UniPoly | None = None
    index: int = 0
    degree: int = 1

    @property
    def is_finite(self) -> bool:
        return self.kind is not PlaceKind.INFINITE

    @property
    def ramification(self) -> int:
        """Ramification index over the x-line."""
        return 2 if self.kind is PlaceKind.RAMIFIED else 1

    def sort_key(self):
        if self.kind is PlaceKind.INFINITE:
            return (1, 0, (), (), self.index)
        v = self.v.coeffs if self.v is not None else ()
        return (0, self.u.degree, self.u.coeffs, v, 0)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def label(self) -> str:
        if self.kind is PlaceKind.INFINITE:
            return f"inf{self.index}"
        if self.kind is PlaceKind.SPLIT:
            return f"({self.u}, y - ({self.v}))"
        return f"({self.u})" + ("[inert]" if self.kind is PlaceKind.INERT else "[ramified]")


@dataclass(frozen=True)
class HyperCurve:
    """Smooth model y^2 = f(x) of genus g, deg f in {2g+1, 2g+2}."""

    f: UniPoly
    label: str | None = None

    def __post_init__(self):
        f = self.f
        if not isinstance(f, UniPoly) or f.modulus is not None:
            raise InvalidModelError("f must be a polynomial over QQ")
        if f.degree < 3:
            raise InvalidModelError(f"deg f = {f.degree} gives genus 0, which is unsupported")
        if resultant(f, f.derivative()) == 0:
            raise InvalidModelError("f is not squarefree")

    @property
    def genus(self) -> int:
        return (self.f.degree - 1) // 2

    @cached_property
    def infinite_model(self) -> InfiniteModel:
        if self.f.degree % 2:
            return InfiniteModel.RAMIFIED
        if is_rational_square(self.f.lc):
            return InfiniteModel.SPLIT
        return InfiniteModel.INERT

    @cached_property
    def reversed_f(self) -> UniPoly:
        """F(z) = z^(2g+2) f(1/z); the model at infinity is Y^2 = F(z), Y = y z^(g+1)."""
        return self.f.reverse(2 * self.genus + 2)

    @cached_property
    def lc_sqrt(self) -> Fraction | None:
        return rational_sqrt(self.f.lc)

    def infinite_places(self) -> list[Place]:
        model = self.infinite_model
        if model is InfiniteModel.RAMIFIED:
            return [Place(PlaceKind.INFINITE, index=0, degree=1)]
        if model is InfiniteModel.SPLIT:
            return [Place(PlaceKind.INFINITE, index=0, degree=1),
                    Place(PlaceKind.INFINITE, index=1, degree=1)]
        return [Place(PlaceKind.INFINITE, index=0, degree=2)]

    def infinity_sign(self, place: Place) -> int:
        """For split infinity: the sign of lim y/x^(g+1) / sqrt(lc) at ``place``."""
        return 1 if place.index == 0 else -1

    def weierstrass_places(self) -> list[Place]:
        out = [Place(PlaceKind.RAMIFIED, u, UniPoly(), degree=u.degree)
               for u, _ in factor_q(self.f)]
        if self.infinite_model is InfiniteModel.RAMIFIED:
            out += self.infinite_places()
        return out

    def __str__(self) -> str:
        name = f"{self.label}: " if self.label else ""
        return f"{name}y^2 = {self.f}"


def new_hyperelliptic(f, label: str | None = None) -> HyperCurve:
    if not isinstance(f, UniPoly):
        f = UniPoly(f)
    return HyperCurve(f, label)


# -- residue-field square roots ---------------------------------------------------

def _interpolate(xs: list[int], ys: list[Fraction]) -> UniPoly:
    """Newton interpolation through (xs[i], ys[i])."""
    coef = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = UniPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        out = out * UniPoly([-xs[i], 1]) + coef[i]
    return out


def fiber_algebra_charpoly(f: UniPoly, u: UniPoly) -> tuple[UniPoly, int]:
    """Squarefree characteristic polynomial of a primitive element y + c*x.

    Returns ``(chi, c)`` with chi(T) = Res_x(u, (T - c x)^2 - f), computed by
    evaluation at 2 deg u + 1 integers and interpolation.  The irreducible
    factors of ``chi`` over Q are in bijection with the places of y^2 = f
    over the prime ``u`` (u not dividing f), with degrees equal to the
    place degrees.
    """
    n = 2 * u.degree
    xs = list(range(n + 1))
    X = UniPoly.x()
    for c in range(0, 64):
        ys = [Fraction(resultant(u, (UniPoly([t]) - X * c) ** 2 - f)) for t in xs]
        chi = _interpolate(xs, ys)
        if poly_gcd(chi, chi.derivative()).degree == 0:
            return chi, c
    raise AssertionError("no separating primitive element found")


def residue_square_root(f: UniPoly, u: UniPoly) -> UniPoly | None:
    """v with v^2 = f mod u in Q[x]/(u), or None if f is not a square there.

    ``u`` is monic irreducible and coprime to ``f``.
    """
    d = u.degree
    if d == 1:
        s = rational_sqrt(f(-u[0]))
        return None if s is None else UniPoly([s])
    chi, c = fiber_algebra_charpoly(f, u)
    facs = factor_q(chi)
    if len(facs) == 1:
        return None
    g1 = facs[0][0]
    # g1(Y + c x) reduced mod (u, Y^2 - f) is alpha Y + beta; g1 vanishes at
    # exactly one of Y = +-v, so the root is v = -beta / alpha
    fr = f % u
    cx = UniPoly([0, c]) % u
    alpha, beta = UniPoly(), UniPoly()
    for coef in reversed(g1.coeffs):
        # (alpha Y + beta)(Y + cx) = alpha fr + beta cx + (alpha cx + beta) Y
        alpha, beta = (alpha * cx + beta) % u, (alpha * fr + beta * cx + coef) % u
    if not alpha:
        raise AssertionError("square root extraction failed")
    v = (-beta * inverse_mod(alpha, u)) % u
    if (v * v - f) % u:
        raise AssertionError("square root extraction failed")
    return v


# -- constructing places -----------------------------------------------------------

def make_place(C: HyperCurve, u: UniPoly, v: UniPoly | None = None) -> Place:
    """Validate and build the place over ``u``.

    ``v`` selects a split place; ``v = None`` asks for the inert place and
    is rejected when f is a square modulo u.
    """
    if not isinstance(u, UniPoly):
        u = UniPoly(u)
    if v is not None and not isinstance(v, UniPoly):
        v = UniPoly(v)
    if u.degree < 1:
        raise NotAPointError("u must be nonconstant")
    u = u.monic()
    facs = factor_q(u)
    if len(facs) != 1 or facs[0][1] != 1:
        raise NotAPointError(f"u = {u} is reducible over Q; factor it first")
    f = C.f
    if not (f % u):
        if v is not None and (v % u):
            raise NotOnCurveError(f"u divides f, so v must be 0 mod u (got {v})")
        return Place(PlaceKind.RAMIFIED, u, UniPoly(), degree=u.degree)
    if v is None:
        if residue_square_root(f, u) is not None:
            raise NotAPointError(f"f is a square modulo {u}: the fiber splits, give v")
        return Place(PlaceKind.INERT, u, None, degree=2 * u.degree)
    v = v % u
    if (v * v - f) % u:
        raise NotOnCurveError(f"v^2 - f = {(v * v - f) % u} mod u, not 0")
    return Place(PlaceKind.SPLIT, u, v, degree=u.degree)


def places_over(C: HyperCurve, u: UniPoly) -> list[Place]:
    """All places over the monic irreducible ``u`` (sorted)."""
    u = u.monic()
    if not (C.f % u):
        return [Place(PlaceKind.RAMIFIED, u, UniPoly(), degree=u.degree)]
    v = residue_square_root(C.f, u)
    if v is None:
        return [Place(PlaceKind.INERT, u, None, degree=2 * u.degree)]
    return sorted([Place(PlaceKind.SPLIT, u, v, degree=u.degree),
                   Place(PlaceKind.SPLIT, u, (-v) % u, degree=u.degree)])


def conjugate(C: HyperCurve, P: Place) -> Place:
    """Image under the hyperelliptic involution y -> -y."""
    if P.kind is PlaceKind.SPLIT:
        return Place(PlaceKind.SPLIT, P.u, (-P.v) % P.u, degree=P.degree)
    if P.kind is PlaceKind.INFINITE and C.infinite_model is InfiniteModel.SPLIT:
        return Place(PlaceKind.INFINITE, index=1 - P.index, degree=1)
    return P


def decompose_fiber(C: HyperCurve, t) -> list[Place]:
    """Places of the x-map fiber over the rational ``t``."""
    t = Fraction(t)
    u = UniPoly([-t, 1])
    val = C.f(t)
    if val == 0:
        return [Place(PlaceKind.RAMIFIED, u, UniPoly(), degree=1)]
    s = rational_sqrt(val)
    if s is None:
        return [Place(PlaceKind.INERT, u, None, degree=2)]
    return [Place(PlaceKind.SPLIT, u, UniPoly([s]), degree=1),
            Place(PlaceKind.SPLIT, u, UniPoly([-s]), degree=1)]


def rational_points_search(C: HyperCurve, height: int) -> list[tuple]:
    """Rational points with x = n/d, max(|n|, d) <= height, plus rational points at infinity.

    Affine points come back as (x, y) Fractions, infinite ones as ("inf", index).
    No completeness claim is made.
    """
    f = C.f
    den = lcm(*(c.denominator for c in f.coeffs))
    ints = [int(c * den) for c in f.coeffs]
    # homogenize to even degree E so that d^E f(n/d) differs from y^2 by a square
    E = f.degree + (f.degree % 2)
    bound = sum(abs(c) for c in ints) * den * height ** E
    use_numpy = bound < 2 ** 62
    nums = np.arange(-height, height + 1, dtype=np.int64)
    out = []
    for d in range(1, height + 1):
        if use_numpy:
            # Horner in n with the powers of d folded into the coefficients
            val = np.zeros_like(nums)
            for i in range(len(ints) - 1, -1, -1):
                val = val * nums + ints[i] * d ** (E - i)
            w = val * den
            ok = w >= 0
            r = np.sqrt(np.where(ok, w, 0).astype(np.float64)).round().astype(np.int64)
            cand = np.nonzero(ok & (np.abs(r * r - w) <= 4 * r + 4))[0]
            checks = [(int(nums[j]), int(w[j])) for j in cand]
        else:
            checks = []
            for num in range(-height, height + 1):
                val = sum(c * num ** i * d ** (E - i) for i, c in enumerate(ints))
                checks.append((num, val * den))
        for num, w in checks:
            if w < 0 or gcd(num, d) != 1:
                continue
            r = isqrt(w)
            if r * r != w:
                continue
            x = Fraction(num, d)
            y = Fraction(r, den * d ** (E // 2))
            out.append((x, y))
            if y:
                out.append((x, -y))
    for P in C.infinite_places():
        if P.degree == 1:
            out.append(("inf", P.index))
    return out
