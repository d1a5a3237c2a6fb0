"""Shuffles, the transgression maps T_k, the explicit T_1 and the tau map."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .cochains import Cochain, SimplexSpace, d_gamma, d_n
from .words import EMPTY, Delta2Morphism, MonotoneMap, pullback_indices


@dataclass(frozen=True)
class Shuffle:
    """A (k, l)-shuffle; ``perm[i-1] = sigma(i)``, black set ``sigma({1..k})``."""

    k: int
    l: int
    perm: tuple

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        object.__setattr__(self, "perm", perm)
        if sorted(perm) != list(range(1, self.k + self.l + 1)):
            raise ValueError(f"{perm} is not a permutation of 1..{self.k + self.l}")
        black, white = perm[:self.k], perm[self.k:]
        if list(black) != sorted(black) or list(white) != sorted(white):
            raise ValueError(f"{perm} is not a ({self.k},{self.l})-shuffle")

    @property
    def black(self):
        return frozenset(self.perm[:self.k])

    @property
    def white(self):
        return frozenset(self.perm[self.k:])

    @property
    def sign(self):
        return -1 if sum(p - i for i, p in enumerate(self.perm[:self.k], 1)) % 2 else 1

    def inversions(self):
        return sum(1 for i, j in itertools.combinations(range(len(self.perm)), 2)
                   if self.perm[i] > self.perm[j])


def enumerate_shuffles(k, l):
    """All (k, l)-shuffles, in lexicographic order of the black set."""
    if k < 0 or l < 0:
        raise ValueError("k and l must be non-negative")
    total = range(1, k + l + 1)
    for black in itertools.combinations(total, k):
        white = tuple(i for i in total if i not in black)
        yield Shuffle(k, l, black + white)


def shuffle_morphism(sigma):
    """``f_sigma = (EMPTY, b, c): (0, k+l) -> (k, l)`` with prefix counts."""
    k, l = sigma.k, sigma.l
    black = sigma.black
    b = [sum(1 for j in range(1, i + 1) if j in black) for i in range(k + l + 1)]
    c = [i - bi for i, bi in enumerate(b)]
    return Delta2Morphism((0, k + l), (k, l), EMPTY,
                          MonotoneMap(k + l, k, b), MonotoneMap(k + l, l, c))


def f_sigma_explicit(sigma, cm, s):
    """Closed form of ``f~_sigma(x; g)``: white slot -> the next ``g``,
    black slot -> ``phi(x_i)`` conjugated by the product of earlier whites.

    Uses only the tables of Gamma and ``phi``, not the action on N.
    """
    xs, gs = tuple(s[0]), tuple(s[1])
    if len(xs) != sigma.k or len(gs) != sigma.l:
        raise ValueError(f"simplex shape {(len(xs), len(gs))} does not match "
                         f"({sigma.k}, {sigma.l})")
    G = cm.Gamma
    out, prod, bi, wi = [], G.identity, 0, 0
    for slot in range(1, sigma.k + sigma.l + 1):
        if slot in sigma.black:
            out.append(G.conj(int(cm.phi[xs[bi]]), prod))
            bi += 1
        else:
            out.append(gs[wi])
            prod = G.mul(prod, gs[wi])
            wi += 1
    return tuple(out)


def _gamma_only(omega):
    if omega.shape[0] != 0:
        raise ValueError(f"expected a cochain on Gamma_p (shape (0, p)), got {omega.shape}")
    return omega.shape[1]


def transgress(omega, k):
    """``T_k omega = sum_sigma sign(sigma) f~_sigma^* omega`` on shape (k, p-k)."""
    p = _gamma_only(omega)
    if not 0 <= k <= p:
        raise ValueError(f"cannot transgress degree {p} to N-degree {k}")
    cm = omega.space.cm
    target = SimplexSpace(cm, k, p - k)
    total = np.zeros(target.size, dtype=np.int64)
    for sigma in enumerate_shuffles(k, p - k):
        idx = pullback_indices(shuffle_morphism(sigma), cm)
        total += sigma.sign * omega.values[idx]
    return Cochain(target, omega.coeffs, total)


def transgress_T1_explicit(omega):
    """``T_1`` by inserting ``phi(x)^(g_1...g_i)`` after slot ``i``, vectorised."""
    p = _gamma_only(omega)
    if p == 0:
        raise ValueError("T_1 needs degree p >= 1")
    cm = omega.space.cm
    G = cm.Gamma
    target = SimplexSpace(cm, 1, p - 1)
    comps = target.components()
    x, gs = comps[0], list(comps[1:])
    px = cm.phi[x]
    prod = np.full(target.size, G.identity, dtype=np.int64)
    total = np.zeros(target.size, dtype=np.int64)
    for i in range(p):
        if i:
            prod = G.table[prod, gs[i - 1]]
        inserted = G.table[G.table[G.inverse[prod], px], prod]
        slots = gs[:i] + [inserted] + gs[i:]
        idx = np.ravel_multi_index(tuple(slots), (G.order,) * p)
        total += (-1) ** i * omega.values[idx]
    return Cochain(target, omega.coeffs, total)


def tau_map(c, check=True):
    """``tau(c)(x, g) = c(g, phi(x)^g) - c(phi(x), g)`` for a 2-cocycle ``c``."""
    if _gamma_only(c) != 2:
        raise ValueError("tau expects a 2-cochain on Gamma")
    cm = c.space.cm
    if len(np.unique(cm.phi)) != cm.N.order:
        raise ValueError("tau needs phi to be injective")
    if check:
        dc = d_gamma(c)
        if not dc.is_zero():
            raise ValueError(f"input is not a cocycle; d c is nonzero at {dc.witness()}")
    G = cm.Gamma
    target = SimplexSpace(cm, 1, 1)
    x, g = target.components()
    px = cm.phi[x]
    conj = G.table[G.table[G.inverse[g], px], g]
    vals = c.values[g * G.order + conj] - c.values[px * G.order + g]
    return Cochain(target, c.coeffs, vals)


def check_chain_identity(omega, k):
    """Residual ``d' T_k w - T_(k+1) d w - (-1)^k d T_(k+1) w``.

    ``T_(k+1) w`` is read as zero when ``k + 1`` exceeds the degree of ``w``.
    """
    p = _gamma_only(omega)
    if not 0 <= k <= p:
        raise ValueError(f"k={k} outside 0..{p}")
    res = d_n(transgress(omega, k)) - transgress(d_gamma(omega), k + 1)
    if k + 1 <= p:
        term = d_gamma(transgress(omega, k + 1))
        res = res - term if k % 2 == 0 else res + term
    return res


def check_T1_anticommutes(omega):
    """Residual ``T_1 d w + d T_1 w`` (zero for every ``w`` of degree >= 1)."""
    return transgress(d_gamma(omega), 1) + d_gamma(transgress(omega, 1))


def shuffle_count(k, l):
    return comb(k + l, k)
