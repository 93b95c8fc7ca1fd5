"""Square roots of a polynomial modulo powers of an irreducible polynomial."""

from __future__ import annotations

from ..errors import DomainError, PreconditionError
from .poly import UniPoly, inverse_mod


def hensel_sqrt(f: UniPoly, p: UniPoly, m: int, v0: UniPoly) -> UniPoly:
    """Lift ``v0`` (with v0^2 = f mod p) to v with v^2 = f mod p^m.

    Newton iteration doubling the precision each step.  The lift is the
    unique one congruent to ``v0`` modulo ``p``, of degree below m*deg(p).
    """
    if m < 1:
        raise PreconditionError("precision must be at least 1")
    if not (f % p):
        raise DomainError("p divides f: ramified place, use the ramified formulas")
    v = v0 % p
    if (v * v - f) % p:
        raise PreconditionError("v0 is not a square root of f modulo p")
    if not v:
        raise PreconditionError("2*v0 is not invertible modulo p")
    prec = 1
    while prec < m:
        prec = min(2 * prec, m)
        mod = p ** prec
        inv = inverse_mod(v * 2, mod)
        v = (v - (v * v - f) * inv) % mod
    return v
