"""Cohomology over Z/n, coboundary solving, multiplicators and r-multiplicativity."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .algebra import CyclicCoefficients, cyclic_group
from .algebra import trivial_crossed_module
from .cochains import Cochain, Direction, SimplexSpace, d_gamma, d_n
from .linalg import invariant_factors, kernel_mod, smith_mod, smith_normal_form, solve_mod
from .transgression import transgress
from .words import gamma_face, n_face, pullback_indices


def coboundary_matrix(cm, k, l, direction):
    """Integer matrix of the differential leaving the (k, l) cochains."""
    src = SimplexSpace(cm, k, l)
    if direction is Direction.GAMMA:
        faces = [gamma_face(k, l, i) for i in range(l + 2)]
        tgt = SimplexSpace(cm, k, l + 1)
    else:
        faces = [n_face(k, l, i) for i in range(k + 2)]
        tgt = SimplexSpace(cm, k + 1, l)
    M = np.zeros((tgt.size, src.size), dtype=np.int64)
    rows = np.arange(tgt.size)
    for i, f in enumerate(faces):
        np.add.at(M, (rows, pullback_indices(f, cm)), -1 if i % 2 else 1)
    return M


def _coeffs(n):
    return n if isinstance(n, CyclicCoefficients) else CyclicCoefficients(int(n))


# -- cohomology groups ------------------------------------------------------

@dataclass(frozen=True)
class CohomologyGroup:
    """``H^degree`` of the complex ``(C(k, .), d)`` over Z/n, as invariant factors."""

    degree: int
    k: int
    n: int
    factors: tuple
    method: str = "integer"

    @property
    def order(self):
        out = 1
        for f in self.factors:
            out *= f
        return out

    def is_trivial(self):
        return not self.factors

    def __str__(self):
        if not self.factors:
            return "0"
        return " + ".join(f"Z/{f}" for f in self.factors)


INTEGER_SNF_LIMIT = 40_000


def cohomology_group(cm, k, p, n, method="auto"):
    """``H^p`` of ``l -> C(k, l)`` with Z/n coefficients.

    ``method="integer"`` diagonalises the integer lifts and applies the
    universal coefficient formula; ``"modular"`` diagonalises over Z/n.
    ``"auto"`` uses the integer route when both matrices have at most
    ``INTEGER_SNF_LIMIT`` entries.
    """
    n = _coeffs(n).n
    if p < 0:
        raise ValueError("degree must be >= 0")
    m_p = SimplexSpace(cm, k, p).size
    B = coboundary_matrix(cm, k, p, Direction.GAMMA)
    A = coboundary_matrix(cm, k, p - 1, Direction.GAMMA) if p > 0 else np.zeros((m_p, 0), dtype=np.int64)
    if method == "auto":
        method = "integer" if max(A.size, B.size) <= INTEGER_SNF_LIMIT else "modular"
    if method == "integer":
        dA = smith_normal_form(A).diagonal
        dB = smith_normal_form(B).diagonal
        torsion = [gcd(d, n) for d in dA + dB]
        free = m_p - len(dA) - len(dB)
    elif method == "modular":
        gA = smith_mod(A, n).pivots
        gB = smith_mod(B, n).pivots
        torsion = list(gA) + list(gB)
        free = m_p - len(gA) - len(gB)
    else:
        raise ValueError(f"unknown method {method!r}")
    factors = invariant_factors([t for t in torsion if t > 1], Counter({n: free}))
    return CohomologyGroup(p, k, n, factors, method)


def cocycle_basis(cm, k, p, n):
    """Generators of the cocycles ``Z(k, p)`` over Z/n (kernel of d)."""
    coeffs = _coeffs(n)
    K = kernel_mod(coboundary_matrix(cm, k, p, Direction.GAMMA), coeffs.n)
    space = SimplexSpace(cm, k, p)
    return [Cochain(space, coeffs, col) for col in K.T]


def random_cocycle(cm, k, p, n, seed):
    """A random Z/n-combination of :func:`cocycle_basis` (seeded)."""
    coeffs = _coeffs(n)
    K = kernel_mod(coboundary_matrix(cm, k, p, Direction.GAMMA), coeffs.n)
    rng = np.random.default_rng(seed)
    return Cochain(SimplexSpace(cm, k, p), coeffs, K @ rng.integers(0, coeffs.n, K.shape[1]))


def standard_cyclic_3cocycle(n, q, cm=None):
    """``e_q(a, b, c) = q a floor((b + c) / n)`` on ``(Z/n)^3``.

    Lives on the (0, 3) cells of ``cm`` (whose Gamma must be Z/n in its
    standard numbering); defaults to the bar complex of Z/n.
    """
    if not 0 <= q < n:
        raise ValueError(f"need 0 <= q < n, got q={q}, n={n}")
    Zn = cyclic_group(n)
    if cm is None:
        cm = trivial_crossed_module(Zn)
    elif cm.Gamma != Zn:
        raise ValueError("Gamma must be the standard Z/n")
    space = SimplexSpace(cm, 0, 3)
    a, b, c = space.components()
    e = Cochain(space, CyclicCoefficients(n), q * a * ((b + c) // n))
    if not d_gamma(e).is_zero():
        raise AssertionError("standard 3-cocycle failed its cocycle check")
    return e


def rehome(omega, cm):
    """The same Gamma-cochain viewed on the (0, p) cells of another crossed module."""
    if omega.space.cm is cm:
        return omega
    if omega.shape[0] != 0 or omega.space.cm.Gamma != cm.Gamma:
        raise ValueError("can only move Gamma-cochains between crossed modules with equal Gamma")
    return Cochain(SimplexSpace(cm, 0, omega.shape[1]), omega.coeffs, omega.values)


# -- coboundaries -------------------------------------------------------------

@dataclass
class CoboundarySolution:
    """``d b = target`` solved, or a certificate that it cannot be.

    The certificate ``w`` (a cochain on the target's cells) satisfies
    ``<w, d beta> = 0`` for every ``beta`` while ``<w, target> != 0``.
    """

    solvable: bool
    b: Cochain = None
    obstruction: Cochain = None

    def __bool__(self):
        return self.solvable


def solve_coboundary(target, direction=Direction.GAMMA):
    """Find ``b`` with ``d b = target`` (GAMMA) or ``d' b = target`` (N)."""
    cm = target.space.cm
    k, l = target.shape
    src = (k, l - 1) if direction is Direction.GAMMA else (k - 1, l)
    if min(src) < 0:
        if target.is_zero():
            return CoboundarySolution(True, b=None)
        return CoboundarySolution(False, obstruction=target)
    M = coboundary_matrix(cm, *src, direction)
    sol = solve_mod(M, target.values, target.n)
    if sol.solvable:
        b = Cochain(SimplexSpace(cm, *src), target.coeffs, sol.x)
        return CoboundarySolution(True, b=b)
    return CoboundarySolution(False, obstruction=Cochain(target.space, target.coeffs, sol.certificate))


# -- multiplicators -----------------------------------------------------------

@dataclass(frozen=True)
class Multiplicator:
    c: Cochain   # (1, 2)
    b: Cochain   # (2, 1)
    a: Cochain   # (3, 0)


@dataclass
class MultiplicatorReport:
    passed: bool
    residuals: dict
    norms: dict
    witnesses: dict

    def to_dict(self):
        return {"passed": self.passed, "max_norm": self.norms, "witness": self.witnesses}


def make_multiplicator(e, cm=None, check=True):
    """``(T_1 e, -T_2 e, -T_3 e)`` for a 3-cocycle ``e`` on Gamma; verified."""
    if cm is not None:
        e = rehome(e, cm)
    if e.shape != (0, 3):
        raise ValueError(f"expected a 3-cochain on Gamma, got shape {e.shape}")
    de = d_gamma(e)
    if not de.is_zero():
        raise ValueError(f"input is not a 3-cocycle; d e is nonzero at {de.witness()}")
    m = Multiplicator(transgress(e, 1), -transgress(e, 2), -transgress(e, 3))
    if check:
        report = verify_multiplicator(m)
        if not report.passed:
            raise AssertionError(f"multiplicator identities fail: {report.witnesses}")
    return m


def verify_multiplicator(m):
    """Residuals of ``d c = 0``, ``d' c = d b`` and ``d' b = d a``."""
    c, b, a = (m.c, m.b, m.a) if isinstance(m, Multiplicator) else m
    shapes = (c.shape, b.shape, a.shape)
    if shapes != ((1, 2), (2, 1), (3, 0)):
        raise ValueError(f"multiplicator shapes must be (1,2), (2,1), (3,0); got {shapes}")
    residuals = {
        "dc": d_gamma(c),
        "d'c-db": d_n(c) - d_gamma(b),
        "d'b-da": d_n(b) - d_gamma(a),
    }
    norms = {k: int(r.coeffs.norm(r.values).max(initial=0)) for k, r in residuals.items()}
    witnesses = {k: r.witness() for k, r in residuals.items() if not r.is_zero()}
    return MultiplicatorReport(not witnesses, residuals, norms, witnesses)


# -- r-multiplicativity -------------------------------------------------------

@dataclass
class MultiplicativityResult:
    """Whether ``c`` is r-multiplicative, with the witness chain ``b_1..b_r``.

    ``failed_level`` is the least depth ``q <= r`` at which no chain exists,
    and ``obstruction`` a dual certificate for that depth.
    """

    r: int
    holds: bool
    witnesses: list = field(default_factory=list)
    failed_level: int = None
    obstruction: np.ndarray = None


def _chain_system(c, depth):
    """Block system for ``d' b_(q-1) = d b_q``, q = 1..depth, ``b_0 = c``.

    Unknowns: ``b_q`` on (k+q, l-q) while ``l - q >= 0``; later ``b_q`` are 0.
    """
    cm, n = c.space.cm, c.n
    k, l = c.shape
    unknown = [(k + q, l - q) for q in range(1, depth + 1) if l - q >= 0]
    offsets = np.cumsum([0] + [SimplexSpace(cm, *s).size for s in unknown])
    blocks, rhs = [], []
    for q in range(1, depth + 1):
        prev = (k + q - 1, l - q + 1)
        if l - q + 1 < 0:
            break
        rows = SimplexSpace(cm, k + q, l - q + 1).size
        block = np.zeros((rows, offsets[-1]), dtype=np.int64)
        if q >= 2:   # -d' b_(q-1)
            j = q - 2
            block[:, offsets[j]:offsets[j + 1]] -= coboundary_matrix(cm, *prev, Direction.N)
        if l - q >= 0:   # + d b_q
            j = q - 1
            block[:, offsets[j]:offsets[j + 1]] += coboundary_matrix(cm, k + q, l - q, Direction.GAMMA)
        blocks.append(block % n)
        rhs.append(d_n(c).values if q == 1 else np.zeros(rows, dtype=np.int64))
    return unknown, offsets, np.vstack(blocks), np.concatenate(rhs)


def r_multiplicativity(c, r):
    """Decide r-multiplicativity of ``c`` exactly by solving the whole chain
    ``d' c = d b_1, d' b_1 = d b_2, ...`` as one linear system over Z/n."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return MultiplicativityResult(0, True)
    cm = c.space.cm
    unknown, offsets, M, y = _chain_system(c, r)
    sol = solve_mod(M, y, c.n, certify=False)
    if sol.solvable:
        witnesses = [Cochain(SimplexSpace(cm, *s), c.coeffs, sol.x[offsets[i]:offsets[i + 1]])
                     for i, s in enumerate(unknown)]
        return MultiplicativityResult(r, True, witnesses=witnesses)
    for depth in range(1, r + 1):
        _, _, M, y = _chain_system(c, depth)
        sol = solve_mod(M, y, c.n)
        if not sol.solvable:
            return MultiplicativityResult(r, False, failed_level=depth, obstruction=sol.certificate)
    raise AssertionError("inconsistent depth search")
