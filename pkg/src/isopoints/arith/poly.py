"""Dense univariate polynomials over Q or over a prime field F_p.

Coefficients are stored lowest degree first.  Over Q every coefficient is a
``Fraction``; over F_p (``modulus`` set) every coefficient is an ``int`` in
``range(p)``.  Instances are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

ExactRational = Fraction


def parse_rational(text) -> Fraction:
    """Parse ``"3"``, ``"-3/2"`` or ``"0.25"`` exactly."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise TypeError("floats are not exact; pass a string")
    return Fraction(str(text).strip())


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


class UniPoly:
    __slots__ = ("coeffs", "modulus", "_hash")

    def __init__(self, coeffs: Iterable = (), modulus: int | None = None):
        if modulus is None:
            c = [x if type(x) is Fraction else parse_rational(x) for x in coeffs]
        else:
            c = [int(x) % modulus for x in coeffs]
        object.__setattr__(self, "coeffs", tuple(_trim(c)))
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, coeffs: list, modulus: int | None) -> "UniPoly":
        # trusted constructor: coefficients already normalized
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(_trim(coeffs)))
        object.__setattr__(obj, "modulus", modulus)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def x(cls, modulus: int | None = None) -> "UniPoly":
        return cls([0, 1], modulus)

    @classmethod
    def constant(cls, c, modulus: int | None = None) -> "UniPoly":
        return cls([c], modulus)

    @classmethod
    def monomial(cls, n: int, c=1, modulus: int | None = None) -> "UniPoly":
        return cls([0] * n + [c], modulus)

    @classmethod
    def from_roots(cls, roots: Sequence, modulus: int | None = None) -> "UniPoly":
        p = cls.constant(1, modulus)
        for r in roots:
            p = p * cls([-r if modulus is None else -int(r), 1], modulus)
        return p

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self._zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self._zero()

    def _zero(self):
        return 0 if self.modulus is not None else Fraction(0)

    def _one(self):
        return 1 if self.modulus is not None else Fraction(1)

    def _inv(self, c):
        if self.modulus is not None:
            return pow(c, -1, self.modulus)
        return 1 / c

    def _check(self, other: "UniPoly") -> None:
        if self.modulus != other.modulus:
            raise TypeError(
                f"mixed coefficient fields: {self.field_name()} vs {other.field_name()}")

    def field_name(self) -> str:
        return "QQ" if self.modulus is None else f"GF({self.modulus})"

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other], self.modulus)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.modulus == other.modulus and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other], self.modulus).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.modulus, self.coeffs)))
        return self._hash

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, x in enumerate(b):
            c[i] += x
        if self.modulus is not None:
            c = [x % self.modulus for x in c]
        return UniPoly._raw(c, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        if self.modulus is not None:
            return UniPoly._raw([(-x) % self.modulus for x in self.coeffs], self.modulus)
        return UniPoly._raw([-x for x in self.coeffs], None)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if self.modulus is not None:
                s = int(other) % self.modulus if isinstance(other, int) else \
                    other.numerator * pow(other.denominator, -1, self.modulus) % self.modulus
                return UniPoly._raw([x * s % self.modulus for x in self.coeffs], self.modulus)
            s = Fraction(other)
            return UniPoly._raw([x * s for x in self.coeffs], None)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw([], self.modulus)
        c = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    c[i + j] += x * y
        if self.modulus is not None:
            c = [x % self.modulus for x in c]
        else:
            c = [x if type(x) is Fraction else Fraction(x) for x in c]
        return UniPoly._raw(c, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly([1], self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        inv = self._inv(other.coeffs[-1])
        bc = other.coeffs
        p = self.modulus
        if len(r) - 1 < db:
            return UniPoly._raw([], p), self
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            t = c * inv
            if p is not None:
                t %= p
            q[k - db] = t
            for j in range(db + 1):
                r[k - db + j] -= t * bc[j]
            if p is not None:
                for j in range(db + 1):
                    r[k - db + j] %= p
        r = r[:db]
        return UniPoly._raw(q, p), UniPoly._raw(r, p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def divides(self, other: "UniPoly") -> bool:
        """True when ``self`` divides ``other``."""
        if not self:
            return not other
        return not (other % self)

    # -- evaluation and calculus -------------------------------------------

    def __call__(self, t):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * t + c
        if acc is None:
            return self._zero() if not isinstance(t, UniPoly) else UniPoly._raw([], t.modulus)
        if self.modulus is not None and isinstance(acc, int):
            return acc % self.modulus
        return acc

    def compose(self, g: "UniPoly") -> "UniPoly":
        acc = UniPoly._raw([], g.modulus)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def derivative(self) -> "UniPoly":
        c = [i * x for i, x in enumerate(self.coeffs)][1:]
        return UniPoly(c, self.modulus)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self * self._inv(self.coeffs[-1])

    def reverse(self, n: int | None = None) -> "UniPoly":
        """Return z^n * p(1/z); ``n`` defaults to the degree."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reversal length below degree")
        c = list(self.coeffs) + [self._zero()] * (n + 1 - len(self.coeffs))
        return UniPoly._raw(c[::-1], self.modulus)

    def shift(self, n: int) -> "UniPoly":
        """Multiply by x^n."""
        if not self.coeffs:
            return self
        return UniPoly._raw([self._zero()] * n + list(self.coeffs), self.modulus)

    def truncate(self, n: int) -> "UniPoly":
        """Reduce modulo x^n."""
        return UniPoly._raw(list(self.coeffs[:n]), self.modulus)

    # -- Q <-> Z <-> F_p ----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive integral."""
        if self.modulus is not None:
            raise TypeError("content is defined over QQ only")
        if not self.coeffs:
            return Fraction(0)
        den = lcm(*(c.denominator for c in self.coeffs))
        num = gcd(*(int(c * den) for c in self.coeffs))
        return Fraction(num, den)

    def primitive_int(self) -> list[int]:
        """Integer coefficient list of the primitive part, positive leading term."""
        c = self.content()
        if self.coeffs[-1] < 0:
            c = -c
        return [int(x / c) for x in self.coeffs]

    def reduce(self, p: int) -> "UniPoly":
        """Image in F_p[x]; denominators must be prime to p."""
        if self.modulus is not None:
            raise TypeError("already a prime-field polynomial")
        out = []
        for c in self.coeffs:
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            out.append(c.numerator * pow(c.denominator, -1, p) % p)
        return UniPoly._raw(out, p)

    def lift(self, symmetric: bool = True) -> "UniPoly":
        """Integer lift to QQ[x] of an F_p polynomial."""
        p = self.modulus
        if p is None:
            return self
        half = p // 2
        return UniPoly([(c - p if symmetric and c > half else c) for c in self.coeffs])

    def is_squarefree(self) -> bool:
        if not self.coeffs:
            return False
        return poly_gcd(self, self.derivative()).degree == 0

    # -- printing -----------------------------------------------------------

    def __repr__(self) -> str:
        mod = "" if self.modulus is None else f", modulus={self.modulus}"
        return f"UniPoly([{', '.join(str(c) for c in self.coeffs)}]{mod})"

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                mono = ""
            elif i == 1:
                mono = var
            else:
                mono = f"{var}^{i}"
            neg = self.modulus is None and c < 0
            a = -c if neg else c
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{a}*{mono}"
            else:
                body = str(a)
            terms.append(("- " if neg else "+ ") + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __str__ = to_str


def _prim(c: list[int]) -> list[int]:
    g = gcd(*c)
    if c[-1] < 0:
        g = -g
    return [x // g for x in c]


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j in range(db + 1):
            r[shift + j] -= c * b[j]
        _trim(r)
    return r


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    a._check(b)
    if a.modulus is not None:
        while b:
            a, b = b, a % b
        return a.monic()
    if not a or not b:
        return (a or b).monic()
    # primitive remainder sequence keeps coefficient growth in check over Z
    x, y = _prim(a.primitive_int()), _prim(b.primitive_int())
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _int_prem(x, y)
        x, y = y, (_prim(r) if r else r)
    return UniPoly(x).monic()


def poly_xgcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    a._check(b)
    m = a.modulus
    r0, r1 = a, b
    s0, s1 = UniPoly([1], m), UniPoly([], m)
    t0, t1 = UniPoly([], m), UniPoly([1], m)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = r0._inv(r0.lc)
    return r0 * inv, s0 * inv, t0 * inv


def poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    if not a or not b:
        return UniPoly([], a.modulus)
    return (a * b // poly_gcd(a, b)).monic()


def inverse_mod(a: UniPoly, m: UniPoly) -> UniPoly:
    g, s, _ = poly_xgcd(a % m, m)
    if g.degree != 0:
        raise ZeroDivisionError("not invertible modulo the given polynomial")
    return s % m


def resultant(a: UniPoly, b: UniPoly):
    """Resultant via the Euclidean remainder sequence.

    Uses res(A, B) = lc(A)^deg B * prod_{A(r)=0} B(r).
    """
    a._check(b)
    zero, one = a._zero(), a._one()
    if not a or not b:
        return zero
    p = a.modulus
    result = one
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            r = result * b.lc ** da
            return r % p if p is not None else r
        if da == 0:
            r = result * a.lc ** db
            return r % p if p is not None else r
        # res(A, B) = (-1)^{da db} res(B, A) = (-1)^{da db} lc(B)^{da - deg R} res(B, R)
        rem = a % b
        if not rem:
            return zero
        sign = -1 if (da * db) % 2 else 1
        result = result * sign * b.lc ** (da - rem.degree)
        if p is not None:
            result %= p
        a, b = b, rem


def discriminant(f: UniPoly):
    n = f.degree
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    if f.modulus is not None:
        return sign * r * pow(f.lc, -1, f.modulus) % f.modulus
    return sign * r / f.lc


def valuation_at(f: UniPoly, u: UniPoly) -> float | int:
    """Largest k with u^k dividing f (``inf`` for f = 0)."""
    if not f:
        return float("inf")
    k = 0
    while True:
        q, r = divmod(f, u)
        if r:
            return k
        f = q
        k += 1


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm in characteristic zero; returns monic (g_i, i) with i ascending."""
    if f.modulus is not None:
        raise TypeError("use the prime-field routine for GF(p)")
    if f.degree < 1:
        return []
    f = f.monic()
    out = []
    a0 = poly_gcd(f, f.derivative())
    b = f // a0
    c = f.derivative() // a0
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b // a
        c = d // a
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
    return out
