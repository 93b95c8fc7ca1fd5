"""Finitely generated abelian groups in Smith coordinates.

A group B = Z/d_1 x ... x Z/d_s x Z^r (d_1 | d_2 | ... , each d_i >= 2) is
stored by its invariants.  Elements are integer vectors of length s + r,
torsion coordinates first.  A subgroup H is kept as the lattice L in Z^(s+r)
generated by its generators together with the relation rows d_i e_i, so
that B/H = Z^(s+r)/L and [B : H] = [Z^(s+r) : L].
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import HypothesisViolation, InternalConsistencyError, PreconditionError

Matrix = list[list[int]]
Vector = tuple[int, ...]


# -- integer matrices --------------------------------------------------------------

def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(cols)] for i in range(len(A))]


def vec_mat(x: Sequence[int], M: Matrix, ncols: int | None = None) -> list[int]:
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    return [sum(x[i] * M[i][j] for i in range(len(M))) for j in range(n)]


def det(M: Matrix) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int) -> Matrix:
    """Row-style HNF of the lattice spanned by ``rows`` with zero rows dropped.

    Pivots are positive, entries above a pivot lie in [0, pivot).
    """
    A = [list(r) for r in rows if any(r)]
    out: Matrix = []
    col = 0
    while A and col < ncols:
        nz = [r for r in A if r[col]]
        if not nz:
            col += 1
            continue
        # gcd-reduce column ``col`` to a single nonzero row
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(col, ncols):
                    r[j] -= q * piv[j]
            nz = [r for r in nz if r[col]]
        piv = nz[0]
        if piv[col] < 0:
            for j in range(ncols):
                piv[j] = -piv[j]
        A = [r for r in A if r is not piv and any(r)]
        out.append(piv)
        col += 1
    # reduce above pivots
    for i, row in enumerate(out):
        c = next(j for j in range(ncols) if row[j])
        for k in range(i):
            q = out[k][c] // row[c]
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], row)]
    return out


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """(U, S, V) with U M V = S diagonal, d_1 | d_2 | ..., U and V unimodular."""
    m = len(M)
    n = len(M[0]) if m else 0
    S = [list(r) for r in M]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst -= q row src
        S[dst] = [a - q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst -= q col src
        for r in S:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    add_row(i, t, q)
                    if S[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    add_col(j, t, q)
                    if S[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % S[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, S, V


def inverse_unimodular(V: Matrix) -> Matrix:
    """Exact inverse of a unimodular integer matrix."""
    n = len(V)
    A = [list(V[i]) + _identity(n)[i] for i in range(n)]
    H = hermite_normal_form(A, 2 * n)
    if len(H) != n or any(H[i][i] != 1 for i in range(n)):
        raise PreconditionError("matrix is not unimodular")
    return [row[n:] for row in H]


# -- groups ------------------------------------------------------------------------

class FgAbGroup:
    """Z/d_1 x ... x Z/d_s x Z^r with d_1 | ... | d_s, each d_i >= 2."""

    def __init__(self, torsion: Sequence[int] = (), rank: int = 0):
        tors = tuple(int(d) for d in torsion)
        if any(d < 2 for d in tors):
            raise PreconditionError("torsion invariants must be >= 2")
        if any(tors[i + 1] % tors[i] for i in range(len(tors) - 1)):
            raise PreconditionError(f"{tors} is not a divisibility chain")
        if rank < 0:
            raise PreconditionError("rank must be nonnegative")
        self.torsion = tors
        self.rank = int(rank)

    @classmethod
    def from_invariants(cls, orders: Iterable[int], rank: int = 0) -> "FgAbGroup":
        """Canonical form of Z/n_1 x ... x Z/n_k x Z^rank (any n_i >= 1)."""
        orders = [int(n) for n in orders]
        if not orders:
            return cls((), rank)
        _, S, _ = smith_normal_form([[n if i == j else 0 for j in range(len(orders))]
                                     for i, n in enumerate(orders)])
        diag = [S[i][i] for i in range(len(orders))]
        return cls(tuple(d for d in diag if d > 1), rank + sum(1 for d in diag if d == 0))

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.rank

    @property
    def order(self) -> float | int:
        return math.prod(self.torsion) if self.rank == 0 else math.inf

    def is_finite(self) -> bool:
        return self.rank == 0

    def relations(self) -> Matrix:
        n = self.ngens
        return [[d if j == i else 0 for j in range(n)] for i, d in enumerate(self.torsion)]

    def element(self, x: Sequence[int]) -> Vector:
        if len(x) != self.ngens:
            raise PreconditionError(f"expected {self.ngens} coordinates, got {len(x)}")
        s = len(self.torsion)
        return tuple(int(c) % self.torsion[i] if i < s else int(c) for i, c in enumerate(x))

    def zero(self) -> Vector:
        return (0,) * self.ngens

    def add(self, a: Sequence[int], b: Sequence[int]) -> Vector:
        return self.element([p + q for p, q in zip(a, b)])

    def neg(self, a: Sequence[int]) -> Vector:
        return self.element([-p for p in a])

    def sub(self, a: Sequence[int], b: Sequence[int]) -> Vector:
        return self.element([p - q for p, q in zip(a, b)])

    def scale(self, m: int, a: Sequence[int]) -> Vector:
        return self.element([m * p for p in a])

    def elements(self):
        if self.rank:
            raise PreconditionError("cannot enumerate an infinite group")
        for x in itertools.product(*(range(d) for d in self.torsion)):
            yield tuple(x)

    def random_element(self, rng: random.Random, bound: int = 10) -> Vector:
        return self.element([rng.randrange(d) for d in self.torsion]
                            + [rng.randint(-bound, bound) for _ in range(self.rank)])

    def __eq__(self, other) -> bool:
        return isinstance(other, FgAbGroup) and (self.torsion, self.rank) == (other.torsion, other.rank)

    def __hash__(self) -> int:
        return hash((self.torsion, self.rank))

    def __repr__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + (["Z^%d" % self.rank] if self.rank else [])
        return "FgAbGroup(" + (" x ".join(parts) or "0") + ")"


class Subgroup:
    """Subgroup of an FgAbGroup, stored as a Hermite-reduced lattice."""

    def __init__(self, parent: FgAbGroup, gens: Iterable[Sequence[int]] = ()):
        self.parent = parent
        n = parent.ngens
        gl = [list(parent.element(g)) for g in gens]
        self.lattice = hermite_normal_form(gl + parent.relations(), n)

    @classmethod
    def whole(cls, B: FgAbGroup) -> "Subgroup":
        return cls(B, _identity(B.ngens))

    @classmethod
    def trivial(cls, B: FgAbGroup) -> "Subgroup":
        return cls(B, [])

    @property
    def generators(self) -> list[Vector]:
        """Hermite-form generators, relation rows removed when redundant."""
        out = []
        for row in self.lattice:
            v = self.parent.element(row)
            if any(v):
                out.append(v)
        return out

    def __contains__(self, x: Sequence[int]) -> bool:
        return membership(self, x)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.parent == other.parent and self.lattice == other.lattice

    def __hash__(self) -> int:
        return hash((self.parent, tuple(map(tuple, self.lattice))))

    def __repr__(self) -> str:
        return f"Subgroup({self.parent!r}, gens={self.generators})"


def membership(H: Subgroup, x: Sequence[int]) -> bool:
    n = H.parent.ngens
    r = list(H.parent.element(x))
    for row in H.lattice:
        c = next(j for j in range(n) if row[j])
        if r[c] % row[c]:
            return False
        q = r[c] // row[c]
        r = [a - q * b for a, b in zip(r, row)]
    return not any(r)


def index(H: Subgroup) -> float | int:
    n = H.parent.ngens
    if len(H.lattice) < n:
        return math.inf
    return math.prod(H.lattice[i][i] for i in range(n))


def subgroup_sum(H1: Subgroup, H2: Subgroup) -> Subgroup:
    _same_parent(H1, H2)
    return Subgroup(H1.parent, H1.lattice + H2.lattice)


def multiple_subgroup(B: FgAbGroup, m: int) -> Subgroup:
    """mB."""
    return Subgroup(B, [[m * int(i == j) for j in range(B.ngens)] for i in range(B.ngens)])


def intersection(H1: Subgroup, H2: Subgroup) -> Subgroup:
    """H1 ∩ H2 via the Zassenhaus block trick on [[L1, L1], [L2, 0]]."""
    _same_parent(H1, H2)
    n = H1.parent.ngens
    rows = [list(r) + list(r) for r in H1.lattice] + [list(r) + [0] * n for r in H2.lattice]
    H = hermite_normal_form(rows, 2 * n)
    inter = [row[n:] for row in H if not any(row[:n])]
    return Subgroup(H1.parent, inter)


def _same_parent(H1: Subgroup, H2: Subgroup) -> None:
    if H1.parent != H2.parent:
        raise PreconditionError("subgroups of different groups")


@dataclass
class Quotient:
    group: FgAbGroup
    source: FgAbGroup
    _V: Matrix
    _Vinv: Matrix
    _cols: list[tuple[int, int]]  # (column of V, modulus or 0 for free)

    def project(self, x: Sequence[int]) -> Vector:
        y = vec_mat(list(self.source.element(x)), self._V, len(self._V))
        return self.group.element([y[c] for c, _ in self._cols])

    __call__ = project

    def lift(self, q: Sequence[int]) -> Vector:
        n = self.source.ngens
        y = [0] * n
        for (c, _), val in zip(self._cols, self.group.element(q)):
            y[c] = val
        return self.source.element(vec_mat(y, self._Vinv, n))


def quotient(B: FgAbGroup, H: Subgroup) -> Quotient:
    if H.parent != B:
        raise PreconditionError("H is not a subgroup of B")
    n = B.ngens
    L = H.lattice or [[0] * n]
    _, S, V = smith_normal_form(L)
    diag = [S[i][i] if i < len(S) else 0 for i in range(n)]
    tors = [(i, d) for i, d in enumerate(diag) if d > 1]
    free = [(i, 0) for i, d in enumerate(diag) if d == 0]
    Q = FgAbGroup(tuple(d for _, d in tors), len(free))
    return Quotient(Q, B, V, inverse_unimodular(V), tors + free)


def coset_representatives(H: Subgroup) -> list[Vector]:
    """One element of B per coset of H (H must have finite index)."""
    q = quotient(H.parent, H)
    if q.group.rank:
        raise PreconditionError("H has infinite index")
    return [q.lift(e) for e in q.group.elements()]


@dataclass(frozen=True)
class Coset:
    rep: Vector
    subgroup: Subgroup

    def __contains__(self, x: Sequence[int]) -> bool:
        return membership(self.subgroup, self.subgroup.parent.sub(x, self.rep))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Coset) and self.subgroup == other.subgroup
                and other.rep in self)

    def __hash__(self) -> int:
        return hash(self.subgroup)

    def meets(self, other: "Coset") -> bool:
        # x + H meets y + K iff x - y in H + K
        B = self.subgroup.parent
        return membership(subgroup_sum(self.subgroup, other.subgroup), B.sub(self.rep, other.rep))


def avoid_cosets(B: FgAbGroup, x: Sequence[int],
                 cosets: Sequence[tuple[Sequence[int], Subgroup]],
                 on_step: Callable[[int, int], None] | None = None) -> Subgroup:
    """A finite-index H with (x + H) disjoint from every y_i + H_i.

    For each i, z_i = x - y_i is nonzero in B/H_i; pick the least m_i >= 2 with
    z_i outside m_i (B/H_i) and take H = intersection of the preimages
    H_i + m_i B.
    """
    x = B.element(x)
    for i, (y, Hi) in enumerate(cosets):
        if Hi.parent != B:
            raise PreconditionError(f"coset {i} lives in a different group")
        if membership(Hi, B.sub(x, y)):
            raise HypothesisViolation(f"x lies in coset {i}", i)
    H = Subgroup.whole(B)
    for i, (y, Hi) in enumerate(cosets):
        z = B.sub(x, y)
        m = _least_multiplier(B, Hi, z)
        if on_step is not None:
            on_step(i, m)
        H = intersection(H, subgroup_sum(Hi, multiple_subgroup(B, m)))
    if index(H) == math.inf:
        raise InternalConsistencyError("avoid_cosets produced an infinite-index subgroup")
    target = Coset(x, H)
    for i, (y, Hi) in enumerate(cosets):
        if target.meets(Coset(B.element(y), Hi)):
            raise InternalConsistencyError(f"output meets coset {i}")
    return H


def _least_multiplier(B: FgAbGroup, Hi: Subgroup, z: Vector) -> int:
    q = quotient(B, Hi)
    w = q.project(z)
    s = len(q.group.torsion)
    # a guaranteed witness bounds the search
    bound = 2
    for k, c in enumerate(w):
        if c:
            bound = max(bound, q.group.torsion[k] if k < s else abs(c) + 1)
    for m in range(2, bound + 1):
        if not _in_multiple(q.group, w, m):
            return m
    raise InternalConsistencyError("no multiplier found below the guaranteed bound")


def _in_multiple(Q: FgAbGroup, w: Vector, m: int) -> bool:
    """w in mQ, coordinatewise: Z/d component needs gcd(m, d) | w, Z needs m | w."""
    s = len(Q.torsion)
    for k, c in enumerate(w):
        mod = math.gcd(m, Q.torsion[k]) if k < s else m
        if c % mod:
            return False
    return True
