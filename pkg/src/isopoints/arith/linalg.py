"""Exact linear algebra over Q on lists of Fractions."""

from __future__ import annotations

from fractions import Fraction

from .poly import UniPoly


def rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                t = m[i][c]
                ri = m[i]
                rr = m[r]
                m[i] = [a - t * b for a, b in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : A v = 0}, one vector per free column, in column order."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def rank(rows: list[list[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def charpoly(mat: list[list[Fraction]]) -> UniPoly:
    """Characteristic polynomial det(xI - M) by the Faddeev-LeVerrier recursion."""
    n = len(mat)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    mk = [row[:] for row in ident]
    prev = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k)/k
        if k == 1:
            mk = ident
        else:
            mk = [[sum(mat[i][t] * prev[t][j] for t in range(n)) + (coeffs[n - k + 1] if i == j else 0)
                   for j in range(n)] for i in range(n)]
        am = [[sum(mat[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
        prev = mk
    return UniPoly(coeffs)


def det(mat: list[list[Fraction]]) -> Fraction:
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                t = m[i][c] * inv
                m[i] = [a - t * b for a, b in zip(m[i], m[c])]
    return d
