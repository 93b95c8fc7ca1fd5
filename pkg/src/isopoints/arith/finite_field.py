"""Extension fields F_{p^k} and batched arithmetic over them.

An element is a polynomial over F_p of degree < k modulo a fixed defining
polynomial, the least monic irreducible in the order of its integer
encoding ``sum(c_i * p**i)``.  Elements also have an integer code with the
same encoding, which is what the batched routines enumerate.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .factor import is_irreducible_fp
from .poly import UniPoly


@lru_cache(maxsize=None)
def defining_polynomial(p: int, k: int) -> UniPoly:
    for idx in range(p ** k):
        c = []
        n = idx
        for _ in range(k):
            c.append(n % p)
            n //= p
        g = UniPoly(c + [1], p)
        if is_irreducible_fp(g):
            return g
    raise AssertionError("no irreducible polynomial found")


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


class FiniteField:
    """F_{p^k} for an odd or even prime p."""

    def __init__(self, p: int, k: int = 1):
        if k < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = defining_polynomial(p, k)
        m = list(self.modulus.coeffs)
        # x^k = -sum(m_j x^j)
        self._red = np.array([(-c) % p for c in m[:k]], dtype=np.int64)
        self._frob = None

    def __repr__(self) -> str:
        return f"FiniteField({self.p}, {self.k})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    # -- scalar elements ----------------------------------------------------

    def __call__(self, value) -> "FqElement":
        if isinstance(value, FqElement):
            return value
        if isinstance(value, UniPoly):
            r = (value if value.modulus == self.p else value.reduce(self.p)) % self.modulus
            return FqElement(self, r.coeffs)
        return FqElement(self, (int(value) % self.p,))

    def gen(self) -> "FqElement":
        return self(UniPoly.x(self.p))

    def from_code(self, code: int) -> "FqElement":
        c = []
        for _ in range(self.k):
            c.append(code % self.p)
            code //= self.p
        return FqElement(self, tuple(c))

    def elements(self):
        for code in range(self.q):
            yield self.from_code(code)

    def embed_poly(self, f: UniPoly) -> list["FqElement"]:
        return [self(c) for c in f.reduce(self.p).coeffs] if f.modulus is None else \
            [self(c) for c in f.coeffs]

    # -- batched arithmetic: arrays of shape (k, N) -------------------------

    def codes_to_array(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        out = np.empty((self.k, codes.size), dtype=np.int64)
        n = codes.copy()
        for i in range(self.k):
            out[i] = n % self.p
            n //= self.p
        return out

    def array_to_codes(self, arr: np.ndarray) -> np.ndarray:
        codes = np.zeros(arr.shape[1], dtype=np.int64)
        for i in range(self.k - 1, -1, -1):
            codes = codes * self.p + arr[i]
        return codes

    def constant_array(self, c: int, n: int) -> np.ndarray:
        out = np.zeros((self.k, n), dtype=np.int64)
        out[0] = c % self.p
        return out

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        k, p = self.k, self.p
        if k == 1:
            return (a * b) % p
        prod = np.zeros((2 * k - 1, a.shape[1]), dtype=np.int64)
        for i in range(k):
            prod[i:i + k] += a[i] * b
        prod %= p
        for i in range(2 * k - 2, k - 1, -1):
            top = prod[i]
            prod[i - k:i] += np.outer(self._red, top)
            prod[i - k:i] %= p
        return prod[:k].copy()

    def vpoly_eval(self, coeffs: list[int], x: np.ndarray) -> np.ndarray:
        """Horner evaluation of an F_p[x] polynomial at every column of ``x``."""
        n = x.shape[1]
        acc = self.constant_array(coeffs[-1] if coeffs else 0, n)
        for c in reversed(coeffs[:-1]):
            acc = self.vmul(acc, x)
            acc[0] = (acc[0] + c) % self.p
        return acc

    def frobenius_matrix(self) -> np.ndarray:
        if self._frob is None:
            k, p = self.k, self.p
            mat = np.zeros((k, k), dtype=np.int64)
            xp = UniPoly.monomial(p, 1, p) % self.modulus
            col = UniPoly([1], p)
            for j in range(k):
                for i, c in enumerate(col.coeffs):
                    mat[i, j] = c
                col = col * xp % self.modulus
            self._frob = mat
        return self._frob

    def vfrobenius(self, a: np.ndarray, times: int = 1) -> np.ndarray:
        mat = self.frobenius_matrix()
        for _ in range(times % self.k if self.k > 1 else 0):
            a = (mat @ a) % self.p
        return a

    def vnorm(self, a: np.ndarray) -> np.ndarray:
        """Norm to F_p of each column, returned as a 1-d int array."""
        if self.k == 1:
            return a[0] % self.p
        acc = a
        conj = a
        for _ in range(self.k - 1):
            conj = self.vfrobenius(conj)
            acc = self.vmul(acc, conj)
        if np.any(acc[1:]):
            raise AssertionError("norm landed outside the prime field")
        return acc[0]

    def vquadratic_character(self, a: np.ndarray) -> np.ndarray:
        table = np.array([legendre(i, self.p) for i in range(self.p)], dtype=np.int64)
        return table[self.vnorm(a)]


class FqElement:
    __slots__ = ("field", "c")

    def __init__(self, field: FiniteField, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "c", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("FqElement is immutable")

    def _poly(self) -> UniPoly:
        return UniPoly._raw(list(self.c), self.field.p)

    def _wrap(self, poly: UniPoly) -> "FqElement":
        return FqElement(self.field, (poly % self.field.modulus).coeffs)

    def _other(self, other) -> "FqElement":
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise TypeError("elements of different fields")
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._other(other)
        return self._wrap(self._poly() + o._poly())

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return self._wrap(self._poly() - o._poly())

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return self._wrap(-self._poly())

    def __mul__(self, other):
        o = self._other(other)
        return self._wrap(self._poly() * o._poly())

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "FqElement":
        if not self.c:
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def frobenius(self, times: int = 1) -> "FqElement":
        return self ** (self.field.p ** times)

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def is_square(self) -> bool:
        if not self.c:
            return True
        return self ** ((self.field.q - 1) // 2) == self.field(1) if self.field.p != 2 else True

    @property
    def code(self) -> int:
        code = 0
        for c in reversed(self.c):
            code = code * self.field.p + c
        return code

    def __eq__(self, other) -> bool:
        if isinstance(other, FqElement):
            return self.field == other.field and self.c == other.c
        if isinstance(other, int):
            return self.c == self.field(other).c
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.c))

    def __repr__(self) -> str:
        return f"FqElement({self._poly().to_str('a')} in GF({self.field.p}^{self.field.k}))"
