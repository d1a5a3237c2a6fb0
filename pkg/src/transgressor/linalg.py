"""Exact linear algebra over Z and Z/n.

``smith_normal_form`` works over the integers with Python ints and returns
unimodular transforms.  The routines ending in ``_mod`` diagonalise over
the ring Z/n directly (int64, vectorised row and column operations); they
back the coboundary solver and the cohomology computation, where the
integer lift would only be reduced mod n afterwards.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd

import numpy as np


def xgcd(a, b):
    """``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


# -- integers --------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """``U @ M @ V == D`` with ``D`` diagonal, ``d_1 | d_2 | ...``."""

    U: np.ndarray
    V: np.ndarray
    D: np.ndarray
    diagonal: tuple

    @property
    def rank(self):
        return len(self.diagonal)

    @property
    def invariant_factors(self):
        """Nonzero diagonal entries, units included."""
        return self.diagonal


def _as_object_matrix(M):
    A = np.array(M, dtype=object)
    if A.ndim == 1 and A.size == 0:
        A = A.reshape(0, 0)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return A


def _identity_object(n):
    I = np.zeros((n, n), dtype=object)
    for i in range(n):
        I[i, i] = 1
    return I


def _matmul_object(A, B):
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=object)
    return A.dot(B)


def smith_normal_form(M):
    """Smith normal form of an integer matrix, verified before returning."""
    A = _as_object_matrix(M).copy()
    m, c = A.shape
    U, V = _identity_object(m), _identity_object(c)
    t = 0
    while t < min(m, c):
        sub = A[t:, t:]
        nz = np.argwhere(sub != 0)
        if nz.size == 0:
            break
        absvals = np.array([abs(sub[i, j]) for i, j in nz], dtype=object)
        i, j = nz[int(np.argmin(absvals))]
        _swap_rows(A, U, t, t + i)
        _swap_cols(A, V, t, t + j)
        while True:
            p = A[t, t]
            col = A[t + 1:, t]
            if any(col):
                q = np.array([v // p for v in col], dtype=object)
                A[t + 1:] -= np.outer(q, A[t])
                U[t + 1:] -= np.outer(q, U[t])
                if any(A[t + 1:, t]):
                    _move_min_to_pivot(A, U, V, t, axis=0)
                    continue
            row = A[t, t + 1:]
            if any(row):
                q = np.array([v // p for v in row], dtype=object)
                A[:, t + 1:] -= np.outer(A[:, t], q)
                V[:, t + 1:] -= np.outer(V[:, t], q)
                if any(A[t, t + 1:]):
                    _move_min_to_pivot(A, U, V, t, axis=1)
                    continue
            bad = np.argwhere(np.vectorize(lambda v: v % p != 0, otypes=[bool])(A[t + 1:, t + 1:])) \
                if A[t + 1:, t + 1:].size else np.empty((0, 2))
            if len(bad):
                r = t + 1 + int(bad[0][0])
                A[t] += A[r]
                U[t] += U[r]
                continue
            break
        if A[t, t] < 0:
            A[t] = -A[t]
            U[t] = -U[t]
        t += 1
    diag = tuple(int(A[i, i]) for i in range(t))
    D = np.zeros((m, c), dtype=object)
    for i, d in enumerate(diag):
        D[i, i] = d
    if not np.array_equal(_matmul_object(_matmul_object(U, _as_object_matrix(M)), V), D):
        raise AssertionError("Smith form verification failed")
    return SmithForm(U, V, D, diag)


def _swap_rows(A, U, a, b):
    if a != b:
        A[[a, b]] = A[[b, a]]
        U[[a, b]] = U[[b, a]]


def _swap_cols(A, V, a, b):
    if a != b:
        A[:, [a, b]] = A[:, [b, a]]
        V[:, [a, b]] = V[:, [b, a]]


def _move_min_to_pivot(A, U, V, t, axis):
    if axis == 0:
        vals = A[t:, t]
        cand = [(abs(v), i) for i, v in enumerate(vals) if v != 0]
        _swap_rows(A, U, t, t + min(cand)[1])
    else:
        vals = A[t, t:]
        cand = [(abs(v), i) for i, v in enumerate(vals) if v != 0]
        _swap_cols(A, V, t, t + min(cand)[1])


# -- Z/n -------------------------------------------------------------------

def _unit_scaling(a, n):
    """A unit ``u`` mod ``n`` with ``a*u = gcd(a, n) (mod n)``."""
    g = gcd(a, n)
    m = n // g
    u = pow(a // g, -1, m) if m > 1 else 1
    while gcd(u, n) != 1:
        u += m
    return u % n


@dataclass
class ModularSmith:
    """``R @ A @ V = diag(pivots)`` over Z/n (``R`` kept only on request).

    ``rhs`` holds ``R @ rhs_in``.  Pivots divide n but need not form a
    divisibility chain.
    """

    n: int
    shape: tuple
    pivots: list
    V: np.ndarray
    rhs: np.ndarray
    R: np.ndarray = None

    @property
    def rank(self):
        return len(self.pivots)


def smith_mod(A, n, rhs=None, track_rows=False):
    """Diagonalise ``A`` over Z/n by unimodular row and column operations."""
    A = np.mod(np.array(A, dtype=np.int64), n)
    m, c = A.shape
    V = np.eye(c, dtype=np.int64)
    rhs = np.zeros((m, 0), dtype=np.int64) if rhs is None else np.mod(np.array(rhs, dtype=np.int64).reshape(m, -1), n)
    R = np.eye(m, dtype=np.int64) if track_rows else None
    gtab = np.array([gcd(v, n) for v in range(n)], dtype=np.int64)   # gcd(0, n) = n
    pivots = []

    def row_op(i, j, s, t, u, v):
        # (row_i, row_j) <- (s row_i + t row_j, u row_i + v row_j)
        for M in (A, rhs, R):
            if M is None:
                continue
            ri, rj = M[i].copy(), M[j].copy()
            M[i] = (s * ri + t * rj) % n
            M[j] = (u * ri + v * rj) % n

    def col_op(i, j, s, t, u, v):
        for M in (A, V):
            ci, cj = M[:, i].copy(), M[:, j].copy()
            M[:, i] = (s * ci + t * cj) % n
            M[:, j] = (u * ci + v * cj) % n

    def scale_row(i, u):
        for M in (A, rhs, R):
            if M is not None:
                M[i] = (M[i] * u) % n

    def swap_rows(i, j):
        if i != j:
            for M in (A, rhs, R):
                if M is not None:
                    M[[i, j]] = M[[j, i]]

    def swap_cols(i, j):
        if i != j:
            for M in (A, V):
                M[:, [i, j]] = M[:, [j, i]]

    # Columns that vanish below the pivot rows stay zero for good; they are
    # parked past ``end`` so each pivot search only scans one column.
    end, t = c, 0
    while t < min(m, end):
        col = gtab[A[t:, t]]
        i = int(np.argmin(col))
        if col[i] == n:
            end -= 1
            swap_cols(t, end)
            continue
        swap_rows(t, t + i)
        while True:
            scale_row(t, _unit_scaling(int(A[t, t]), n))
            g = int(A[t, t])
            bad_r = np.flatnonzero(A[t + 1:, t] % g)
            if bad_r.size:
                r = t + 1 + int(bad_r[0])
                b = int(A[r, t])
                d, s, tt = xgcd(g, b)
                row_op(t, r, s, tt, -(b // d), g // d)
                continue
            bad_c = np.flatnonzero(A[t, t + 1:] % g)
            if bad_c.size:
                r = t + 1 + int(bad_c[0])
                b = int(A[t, r])
                d, s, tt = xgcd(g, b)
                col_op(t, r, s, tt, -(b // d), g // d)
                continue
            break
        rows = t + 1 + np.flatnonzero(A[t + 1:, t])
        if rows.size:
            q = A[rows, t] // g
            A[rows, t:] = (A[rows, t:] - np.outer(q, A[t, t:])) % n
            rhs[rows] = (rhs[rows] - np.outer(q, rhs[t])) % n
            if R is not None:
                R[rows] = (R[rows] - np.outer(q, R[t])) % n
        cols = t + 1 + np.flatnonzero(A[t, t + 1:])
        if cols.size:
            q = A[t, cols] // g
            A[t, cols] = 0
            V[:, cols] = (V[:, cols] - np.outer(V[:, t], q)) % n
        pivots.append(g)
        t += 1
    return ModularSmith(n, (m, c), pivots, V, rhs, R)


@dataclass
class ModSolution:
    solvable: bool
    x: np.ndarray = None
    certificate: np.ndarray = None   # w with w A = 0 and w y != 0 (mod n)


def solve_mod(A, y, n, certify=True):
    """Solve ``A x = y`` over Z/n; certify unsolvability with a dual vector."""
    A = np.asarray(A, dtype=np.int64)
    y = np.mod(np.asarray(y, dtype=np.int64).reshape(-1), n)
    m, c = A.shape
    sf = smith_mod(A, n, rhs=y)
    yp = sf.rhs[:, 0]
    z = np.zeros(c, dtype=np.int64)
    bad = None
    for t, g in enumerate(sf.pivots):
        if yp[t] % g:
            bad = t
            break
        z[t] = yp[t] // g
    if bad is None:
        rest = np.flatnonzero(yp[sf.rank:])
        if rest.size:
            bad = sf.rank + int(rest[0])
    if bad is None:
        x = (sf.V @ z) % n
        return ModSolution(True, x=x)
    if not certify:
        return ModSolution(False)
    full = smith_mod(A, n, rhs=y, track_rows=True)
    w = full.R[bad].copy()
    if bad < full.rank:
        w = (w * (n // full.pivots[bad])) % n
    return ModSolution(False, certificate=w)


def kernel_mod(A, n):
    """Generators (as columns) of ``{x : A x = 0}`` over Z/n."""
    A = np.asarray(A, dtype=np.int64)
    sf = smith_mod(A, n)
    cols = [(sf.V[:, t] * (n // g)) % n for t, g in enumerate(sf.pivots) if g != 1]
    cols += [sf.V[:, j] for j in range(sf.rank, A.shape[1])]
    if not cols:
        return np.zeros((A.shape[1], 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def kernel_order_mod(A, n):
    """``|ker A|`` over Z/n."""
    sf = smith_mod(A, n)
    out = n ** (sf.shape[1] - sf.rank)
    for g in sf.pivots:
        out *= g
    return out


# -- finite abelian groups ---------------------------------------------------

def _prime_powers(m):
    out, p = [], 2
    while p * p <= m:
        if m % p == 0:
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            out.append((p, q))
        p += 1
    if m > 1:
        out.append((m, m))
    return out


def invariant_factors(cyclic_orders, extra=Counter()):
    """Invariant factors of ``(+) Z/m`` over ``cyclic_orders`` with the
    multiplicities in ``extra`` (order -> count, possibly negative, applied
    after splitting into prime powers; finite abelian groups cancel)."""
    elem = Counter()
    for m in cyclic_orders:
        for pq in _prime_powers(int(m)):
            elem[pq] += 1
    for m, cnt in extra.items():
        for pq in _prime_powers(int(m)):
            elem[pq] += cnt
    if any(v < 0 for v in elem.values()):
        raise ValueError("negative multiplicity: inconsistent group data")
    by_prime = {}
    for (p, q), cnt in elem.items():
        by_prime.setdefault(p, []).extend([q] * cnt)
    for qs in by_prime.values():
        qs.sort(reverse=True)
    length = max((len(qs) for qs in by_prime.values()), default=0)
    factors = []
    for i in range(length):
        f = 1
        for qs in by_prime.values():
            if i < len(qs):
                f *= qs[i]
        factors.append(f)
    return tuple(sorted(factors))
