"""Factorization over prime fields and over Q.

Over F_p: square-free decomposition, distinct-degree and equal-degree
splitting (Cantor-Zassenhaus).  Over Q: factor at a good prime, Hensel lift
to a power of that prime past the Mignotte bound, then recombine subsets of
the lifted factors by trial division.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import comb, isqrt, prod

from ..errors import CapabilityError, DomainError
from .poly import UniPoly, poly_gcd, squarefree_decomposition

MAX_Q_DEGREE = 64
DEFAULT_SEED = 20240601


def _sort_key(item):
    g, m = item
    return (g.degree, g.coeffs, m)


def powmod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    result = UniPoly([1], base.modulus)
    base = base % mod
    while e:
        if e & 1:
            result = result * base % mod
        e >>= 1
        if e:
            base = base * base % mod
    return result


def _pth_root(f: UniPoly) -> UniPoly:
    # f has only exponents divisible by p; F_p elements are their own p-th roots
    p = f.modulus
    return UniPoly(f.coeffs[::p], p)


def squarefree_fp(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Square-free decomposition of a monic polynomial over F_p."""
    p = f.modulus
    out: dict[int, UniPoly] = {}

    def rec(f: UniPoly, mult: int) -> None:
        if f.degree < 1:
            return
        df = f.derivative()
        if not df:
            rec(_pth_root(f), mult * p)
            return
        c = poly_gcd(f, df)
        w = f // c
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            z = w // y
            if z.degree > 0:
                key = i * mult
                out[key] = out[key] * z if key in out else z
            i += 1
            w = y
            c = c // y
        if c.degree > 0:
            rec(_pth_root(c), mult * p)

    rec(f.monic(), 1)
    return sorted(((g.monic(), m) for m, g in out.items()), key=lambda t: t[1])


def distinct_degree(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Split a monic square-free polynomial into products of equal-degree irreducibles."""
    p = f.modulus
    x = UniPoly.x(p)
    out = []
    h = x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def equal_degree(g: UniPoly, d: int, rng: random.Random) -> list[UniPoly]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    p = g.modulus
    n = g.degree
    if n == d:
        return [g.monic()]
    while True:
        a = UniPoly([rng.randrange(p) for _ in range(n)], p)
        if a.degree < 1:
            continue
        if p == 2:
            t = a
            b = a
            for _ in range(d - 1):
                b = b * b % g
                t = t + b
        else:
            t = powmod(a, (p ** d - 1) // 2, g) - 1
        h = poly_gcd(g, t)
        if 0 < h.degree < n:
            return equal_degree(h, d, rng) + equal_degree(g // h, d, rng)


def factor_fp(f: UniPoly, seed: int = DEFAULT_SEED) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors with multiplicities; the leading unit is ``f.lc``."""
    if f.modulus is None:
        raise TypeError("factor_fp expects a polynomial over GF(p)")
    if not f:
        raise DomainError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for sqf, m in squarefree_fp(f):
        for g, d in distinct_degree(sqf):
            for h in equal_degree(g, d, rng):
                out.append((h, m))
    out.sort(key=_sort_key)
    return out


def is_irreducible_fp(f: UniPoly) -> bool:
    if f.degree < 1:
        return False
    f = f.monic()
    if not f.is_squarefree():
        return False
    parts = distinct_degree(f)
    return len(parts) == 1 and parts[0][1] == f.degree


def factor_pattern_fp(f: UniPoly) -> tuple[int, ...]:
    """Sorted degrees of irreducible factors, with multiplicity."""
    out = []
    for g, m in factor_fp(f):
        out.extend([g.degree] * m)
    return tuple(sorted(out))


# -- integer polynomial helpers (lists, lowest degree first) --------------------

def _ztrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _zmul(a, b):
    if not a or not b:
        return []
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return c


def _zsym(a, m):
    h = m // 2
    return _ztrim([(x % m) - m if x % m > h else x % m for x in a])


def _zdivexact(a, b):
    """Exact division in Z[x]; returns None when it fails."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        return None if any(a) else []
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c == 0:
            continue
        if c % lb:
            return None
        t = c // lb
        q[k - db] = t
        for j in range(db + 1):
            a[k - db + j] -= t * b[j]
    if any(a[:db]):
        return None
    return q


def _to_fp(a, p):
    return UniPoly([x % p for x in a], p)


def _hensel_step_pair(F, g, h, p, k):
    """Lift F = g*h (g monic) from mod p to mod p^k.

    ``F`` is an integer list; ``g`` and ``h`` are F_p polynomials.  Returns
    integer lists G, H with F = G*H mod p^k, G monic of the same degree as g.
    """
    gp, hp = g, h
    one, s, t = _xgcd_fp(gp, hp)
    G = list(g.coeffs)
    H = list(h.coeffs)
    pj = p
    for _ in range(1, k):
        diff = [a - b for a, b in _zip_long(F, _zmul(G, H))]
        if any(x % pj for x in diff):
            raise AssertionError("Hensel invariant broken")
        e = _to_fp([x // pj for x in diff], p)
        if e:
            q, r = divmod(t * e, gp)
            dg = r
            dh = s * e + q * hp
            G = [a + pj * b for a, b in _zip_long(G, list(dg.coeffs))]
            H = [a + pj * b for a, b in _zip_long(H, list(dh.coeffs))]
        pj *= p
        G = [x % pj for x in G]
        H = [x % pj for x in H]
    return _ztrim(G), _ztrim(H)


def _zip_long(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


def _xgcd_fp(a, b):
    from .poly import poly_xgcd
    g, s, t = poly_xgcd(a, b)
    if g.degree != 0:
        raise AssertionError("factors not coprime modulo p")
    return g, s, t


def _multi_lift(F, factors, p, k):
    """Lift monic F_p factors of F (lc(F) a unit mod p) to p^k; returns monic integer lists."""
    M = p ** k
    if len(factors) == 1:
        inv = pow(F[-1], -1, M)
        return [[x * inv % M for x in F]]
    half = len(factors) // 2
    A, B = factors[:half], factors[half:]
    gA = prod(A[1:], start=A[0])
    gB = prod(B[1:], start=B[0]) * (F[-1] % p)
    GA, GB = _hensel_step_pair(F, gA, gB, p, k)
    return _multi_lift(GA, A, p, k) + _multi_lift(GB, B, p, k)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes(start=3):
    n = start
    while True:
        if _is_prime(n):
            yield n
        n += 1


def _factor_squarefree_int(F: list[int]) -> list[list[int]]:
    """Irreducible factors over Z of a primitive square-free polynomial, lc > 0."""
    n = len(F) - 1
    if n <= 1:
        return [F]
    lc = F[-1]
    best = None
    tried = 0
    for p in _primes(3):
        if lc % p == 0:
            continue
        fp = _to_fp(F, p)
        if not fp.is_squarefree():
            continue
        facs = [g for g, _ in factor_fp(fp)]
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if len(facs) == 1 or tried >= 5:
            break
    p, facs = best
    if len(facs) == 1:
        return [F]
    norm = isqrt(sum(c * c for c in F)) + 1
    bound = 2 * abs(lc) * max(comb(n, j) for j in range(n + 1)) * norm
    k = 1
    while p ** k <= 2 * bound:
        k += 1
    M = p ** k
    lifted = _multi_lift(F, facs, p, k)
    found = []
    remaining = list(range(len(lifted)))
    f_cur = list(F)
    s = 1
    while 2 * s <= len(remaining):
        hit = False
        for S in combinations(remaining, s):
            lcur = f_cur[-1]
            cand = [lcur % M]
            for i in S:
                cand = [x % M for x in _zmul(cand, lifted[i])]
            cand = _zsym(cand, M)
            cont = 0
            for c in cand:
                cont = _gcd(cont, c)
            cand = [c // cont for c in cand]
            if cand[-1] < 0:
                cand = [-c for c in cand]
            q = _zdivexact(f_cur, cand)
            if q is not None:
                found.append(cand)
                f_cur = q
                remaining = [i for i in remaining if i not in S]
                hit = True
                break
        if not hit:
            s += 1
    found.append(f_cur)
    return found


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def factor_q(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors over Q with multiplicities.

    Ordered by degree, then lexicographically on coefficients.  The leading
    unit is ``f.lc``.
    """
    if f.modulus is not None:
        raise TypeError("factor_q expects a polynomial over QQ")
    if not f:
        raise DomainError("cannot factor the zero polynomial")
    if f.degree > MAX_Q_DEGREE:
        raise CapabilityError(f"degree {f.degree} exceeds the supported {MAX_Q_DEGREE}")
    out = []
    for g, m in squarefree_decomposition(f):
        for h in _factor_squarefree_int(g.primitive_int()):
            out.append((UniPoly(h).monic(), m))
    out.sort(key=_sort_key)
    return out


def is_irreducible_q(f: UniPoly) -> bool:
    if f.degree < 1:
        return False
    facs = factor_q(f)
    return len(facs) == 1 and facs[0][1] == 1
