"""Dense Z/n-valued cochains on the simplex sets N^k x Gamma^l.

Values are stored in a flat int64 vector indexed mixed radix with slot
order ``(x_1, ..., x_k, g_1, ..., g_l)``, ``x_1`` most significant.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass

import numpy as np

from .algebra import CrossedModule, CyclicCoefficients
from .words import Simplex, gamma_face, n_face, pullback_indices

DEFAULT_MAX_CELLS = 10**7
MAX_CELLS_ENV = "TRANSGRESSOR_MAX_CELLS"


class CellLimitError(RuntimeError):
    """A simplex space is larger than the configured ceiling."""


def max_cells():
    """The size ceiling: ``$TRANSGRESSOR_MAX_CELLS`` or 10^7."""
    raw = os.environ.get(MAX_CELLS_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_CELLS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_CELLS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{MAX_CELLS_ENV} must be positive, got {value}")
    return value


class Direction(enum.Enum):
    GAMMA = "gamma"   # raises l: the differential d
    N = "n"           # raises k: the differential d'


@dataclass(frozen=True, eq=False)
class SimplexSpace:
    cm: CrossedModule
    k: int
    l: int

    def __post_init__(self):
        if self.k < 0 or self.l < 0:
            raise ValueError(f"degrees must be non-negative, got ({self.k}, {self.l})")
        limit = max_cells()
        if self.size > limit:
            raise CellLimitError(f"space ({self.k},{self.l}) has {self.size} simplices, "
                                 f"ceiling is {limit} (set {MAX_CELLS_ENV} to raise it)")

    @property
    def size(self):
        return self.cm.N.order ** self.k * self.cm.Gamma.order ** self.l

    @property
    def dims(self):
        return (self.cm.N.order,) * self.k + (self.cm.Gamma.order,) * self.l

    @property
    def shape(self):
        return (self.k, self.l)

    def __eq__(self, other):
        return (isinstance(other, SimplexSpace) and self.cm is other.cm
                and self.shape == other.shape)

    def __hash__(self):
        return hash((id(self.cm), self.k, self.l))

    def components(self):
        """All simplices as ``k + l`` component arrays in flat order."""
        if not self.dims:
            return ()
        return np.unravel_index(np.arange(self.size), self.dims)


def index_simplex(space, s):
    xs, gs = tuple(s[0]), tuple(s[1])
    if len(xs) != space.k or len(gs) != space.l:
        raise ValueError(f"simplex shape {(len(xs), len(gs))} does not match {space.shape}")
    comps = xs + gs
    for c, d in zip(comps, space.dims):
        if not 0 <= c < d:
            raise ValueError(f"component {c} out of range 0..{d - 1}")
    idx = 0
    for c, d in zip(comps, space.dims):
        idx = idx * d + int(c)
    return idx


def unindex(space, index):
    if not 0 <= index < space.size:
        raise ValueError(f"index {index} out of range 0..{space.size - 1}")
    comps = []
    for d in reversed(space.dims):
        index, c = divmod(index, d)
        comps.append(c)
    comps.reverse()
    return Simplex(tuple(comps[:space.k]), tuple(comps[space.k:]))


class Cochain:
    """A ``Z/n``-valued function on a :class:`SimplexSpace`."""

    __slots__ = ("space", "coeffs", "values")

    def __init__(self, space, coeffs, values):
        if isinstance(coeffs, int):
            coeffs = CyclicCoefficients(coeffs)
        values = np.asarray(values, dtype=np.int64).reshape(-1)
        if values.size != space.size:
            raise ValueError(f"expected {space.size} values, got {values.size}")
        values = np.mod(values, coeffs.n)
        values.setflags(write=False)
        self.space, self.coeffs, self.values = space, coeffs, values

    @classmethod
    def zeros(cls, space, coeffs):
        return cls(space, coeffs, np.zeros(space.size, dtype=np.int64))

    @classmethod
    def from_function(cls, space, coeffs, fn):
        """Tabulate ``fn(xs, gs)`` over every simplex."""
        vals = [fn(s.xs, s.gs) for s in (unindex(space, i) for i in range(space.size))]
        return cls(space, coeffs, vals)

    @property
    def n(self):
        return self.coeffs.n

    @property
    def shape(self):
        return self.space.shape

    def __call__(self, xs=(), gs=()):
        return int(self.values[index_simplex(self.space, (xs, gs))])

    def _check(self, other):
        if self.space != other.space or self.coeffs != other.coeffs:
            raise ValueError(f"incompatible cochains: {self.shape} mod {self.n} "
                             f"vs {other.shape} mod {other.n}")

    def __add__(self, other):
        self._check(other)
        return Cochain(self.space, self.coeffs, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return Cochain(self.space, self.coeffs, self.values - other.values)

    def __neg__(self):
        return Cochain(self.space, self.coeffs, -self.values)

    def __rmul__(self, scalar):
        return Cochain(self.space, self.coeffs, int(scalar) * self.values)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.space == other.space
                and self.coeffs == other.coeffs and np.array_equal(self.values, other.values))

    __hash__ = None

    def is_zero(self):
        return not self.values.any()

    def support(self):
        return np.flatnonzero(self.values)

    def witness(self):
        """First simplex with a nonzero value, or None."""
        nz = self.support()
        if nz.size == 0:
            return None
        s = unindex(self.space, int(nz[0]))
        return {"xs": list(s.xs), "gs": list(s.gs), "value": int(self.values[nz[0]])}

    def pullback(self, morphism, target_space=None):
        """``m~^* omega``: the cochain ``s -> omega(m~(s))`` on the target shape."""
        if morphism.source != self.shape:
            raise ValueError(f"morphism source {morphism.source} is not {self.shape}")
        if target_space is None:
            target_space = SimplexSpace(self.space.cm, *morphism.target)
        idx = pullback_indices(morphism, self.space.cm)
        return Cochain(target_space, self.coeffs, self.values[idx])

    def __repr__(self):
        return f"Cochain(shape={self.shape}, n={self.n}, size={self.space.size})"


def differential(omega, direction):
    """Alternating sum of face pullbacks; GAMMA raises ``l``, N raises ``k``."""
    k, l = omega.shape
    if direction is Direction.GAMMA:
        faces = [gamma_face(k, l, i) for i in range(l + 2)]
        target = SimplexSpace(omega.space.cm, k, l + 1)
    elif direction is Direction.N:
        faces = [n_face(k, l, i) for i in range(k + 2)]
        target = SimplexSpace(omega.space.cm, k + 1, l)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    total = np.zeros(target.size, dtype=np.int64)
    for i, f in enumerate(faces):
        idx = pullback_indices(f, omega.space.cm)
        if i % 2:
            total -= omega.values[idx]
        else:
            total += omega.values[idx]
    return Cochain(target, omega.coeffs, total)


def d_gamma(omega):
    return differential(omega, Direction.GAMMA)


def d_n(omega):
    return differential(omega, Direction.N)


def random_cochain(space, coeffs, seed):
    """Uniform values from ``numpy.random.default_rng(seed)`` (PCG64)."""
    if isinstance(coeffs, int):
        coeffs = CyclicCoefficients(coeffs)
    rng = np.random.default_rng(seed)
    return Cochain(space, coeffs, rng.integers(0, coeffs.n, size=space.size))


def delta_cochain(space, coeffs, index):
    """The basis cochain that is 1 at ``index`` and 0 elsewhere."""
    vals = np.zeros(space.size, dtype=np.int64)
    vals[index] = 1
    return Cochain(space, coeffs, vals)
