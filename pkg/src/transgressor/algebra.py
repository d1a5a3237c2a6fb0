"""Finite groups, groupoids, actions, crossed modules and cyclic coefficients.

Group elements are the integers ``0..order-1``; all structure lives in numpy
lookup tables so that the cochain machinery can evaluate products on whole
arrays of simplices at once.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np


class AxiomError(ValueError):
    """A table fails one of the structure axioms.

    ``witness`` holds the offending element indices.
    """

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(int(w) for w in witness)


def _as_table(rows, shape=None):
    table = np.asarray(rows, dtype=np.int64)
    if shape is not None and table.shape != shape:
        raise AxiomError(f"table has shape {table.shape}, expected {shape}")
    return table


class FiniteGroup:
    """A validated finite group given by its multiplication table."""

    def __init__(self, table, identity, inverse, name=None):
        self.table = table
        self.identity = int(identity)
        self.inverse = inverse
        self.name = name
        self.table.setflags(write=False)
        self.inverse.setflags(write=False)

    @property
    def order(self):
        return self.table.shape[0]

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        label = self.name or "FiniteGroup"
        return f"<{label} of order {self.order}>"

    def mul(self, a, b):
        return self.table[a, b]

    def inv(self, a):
        return self.inverse[a]

    def product(self, elements):
        acc = self.identity
        for e in elements:
            acc = self.table[acc, e]
        return int(acc)

    def conj(self, x, g):
        """g^-1 x g."""
        return self.table[self.table[self.inverse[g], x], g]

    def element_order(self, a):
        k, x = 1, int(a)
        while x != self.identity:
            x = int(self.table[x, a])
            k += 1
        return k

    def exponent(self):
        return int(np.lcm.reduce([self.element_order(a) for a in range(self.order)]))


def validate_group(rows, name=None):
    """Check the group axioms on a raw multiplication table.

    Raises :class:`AxiomError` naming the first violated axiom, in the order
    closure, associativity, identity, inverses.
    """
    table = _as_table(rows)
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise AxiomError(f"multiplication table must be square and non-empty, got {table.shape}")
    m = table.shape[0]
    bad = np.argwhere((table < 0) | (table >= m))
    if len(bad):
        i, j = bad[0]
        raise AxiomError(f"product {i}*{j} = {table[i, j]} out of range", (i, j))

    for a in range(m):
        lhs = table[table[a]]            # (a b) c, indexed [b, c]
        rhs = table[a][table]            # a (b c)
        diff = np.argwhere(lhs != rhs)
        if len(diff):
            b, c = diff[0]
            raise AxiomError(f"not associative at ({a}, {b}, {c})", (a, b, c))

    ar = np.arange(m)
    ids = [e for e in range(m) if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar)]
    if not ids:
        raise AxiomError("no identity element")
    e = ids[0]

    inverse = np.empty(m, dtype=np.int64)
    for a in range(m):
        hits = np.nonzero((table[a] == e) & (table[:, a] == e))[0]
        if not len(hits):
            raise AxiomError(f"no inverse for element {a}", (a,))
        inverse[a] = hits[0]
    return FiniteGroup(table.copy(), e, inverse, name=name)


def is_abelian(group):
    """Return ``(True, None)`` or ``(False, (a, b))`` with ``ab != ba``."""
    diff = np.argwhere(group.table != group.table.T)
    if len(diff):
        a, b = diff[0]
        return False, (int(a), int(b))
    return True, None


def is_homomorphism(src, dst, phi):
    phi = np.asarray(phi)
    lhs = phi[src.table]
    rhs = dst.table[phi[:, None], phi[None, :]]
    diff = np.argwhere(lhs != rhs)
    return (True, None) if not len(diff) else (False, tuple(int(v) for v in diff[0]))


# -- presets ---------------------------------------------------------------

def cyclic_group(n):
    ar = np.arange(n)
    return validate_group((ar[:, None] + ar[None, :]) % n, name=f"Z/{n}")


def trivial_group():
    return validate_group([[0]], name="1")


def _permutation_group(perms, name):
    index = {p: i for i, p in enumerate(perms)}
    m = len(perms)
    table = np.empty((m, m), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            # (p*q)(x) = q(p(x)): apply p first, matching right actions
            table[i, j] = index[tuple(q[p[x]] for x in range(len(p)))]
    return validate_group(table, name=name)


def symmetric_group(n):
    if not 1 <= n <= 5:
        raise ValueError("symmetric_group presets cover 1 <= n <= 5")
    return _permutation_group(list(itertools.permutations(range(n))), f"S{n}")


def dihedral_group(n):
    """Symmetries of the regular n-gon, order 2n (elements r^i s^j -> i + n*j)."""
    if n < 1:
        raise ValueError("n >= 1")
    m = 2 * n
    table = np.empty((m, m), dtype=np.int64)
    for a in range(m):
        i, s = a % n, a // n
        for b in range(m):
            j, t = b % n, b // n
            # r^i s^s r^j s^t = r^(i + (-1)^s j) s^(s+t)
            k = (i + (j if s == 0 else -j)) % n
            table[a, b] = k + n * ((s + t) % 2)
    return validate_group(table, name=f"D{n}")


def quaternion_group():
    # elements +-1, +-i, +-j, +-k encoded as (sign, unit) -> 4*sign_bit + unit
    units = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    table = np.empty((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            sa, ua = (-1 if a >= 4 else 1), a % 4
            sb, ub = (-1 if b >= 4 else 1), b % 4
            s, u = units[(ua, ub)]
            sign = sa * sb * s
            table[a, b] = u + (4 if sign < 0 else 0)
    return validate_group(table, name="Q8")


def preset_group(name):
    """Parse names like ``Z4``, ``D3``, ``S3``, ``Q8``."""
    key = name.strip().upper().replace("/", "")
    if key == "Q8":
        return quaternion_group()
    if key in {"1", "TRIVIAL"}:
        return trivial_group()
    kind, num = key[0], key[1:]
    if not num.isdigit():
        raise ValueError(f"unknown preset group {name!r}")
    n = int(num)
    if kind == "Z":
        return cyclic_group(n)
    if kind == "D":
        return dihedral_group(n)
    if kind == "S":
        return symmetric_group(n)
    raise ValueError(f"unknown preset group {name!r}")


# -- actions and crossed modules -------------------------------------------

class GroupAction:
    """Right action ``x^g`` of a group on ``{0..size-1}``; ``table[x, g]``."""

    def __init__(self, group, table):
        self.group = group
        self.table = _as_table(table)
        self.size = self.table.shape[0]

    def __call__(self, x, g):
        return self.table[x, g]


def validate_action(group, table, size=None):
    table = _as_table(table)
    if table.ndim != 2 or table.shape[1] != group.order:
        raise AxiomError(f"action table must have {group.order} columns")
    size = table.shape[0] if size is None else size
    if table.shape[0] != size:
        raise AxiomError(f"action table must have {size} rows")
    bad = np.argwhere((table < 0) | (table >= size))
    if len(bad):
        raise AxiomError("action value out of range", tuple(bad[0]))
    moved = np.nonzero(table[:, group.identity] != np.arange(size))[0]
    if len(moved):
        raise AxiomError(f"identity moves element {moved[0]}", (moved[0],))
    # (x^g)^h == x^(gh), indexed [x, g, h]
    lhs = table[table]                               # table[table[x, g], h]
    rhs = table[:, group.table]                      # table[x, g*h]
    diff = np.argwhere(lhs != rhs)
    if len(diff):
        raise AxiomError("not a right action at (x, g, h) = %s" % (tuple(int(v) for v in diff[0]),),
                         diff[0])
    return GroupAction(group, table)


class CrossedModule:
    """``phi: N -> Gamma`` with a right Gamma-action on N.

    The constructor does not check anything; use
    :func:`validate_crossed_module` for validated instances.
    """

    def __init__(self, N, Gamma, phi, action, name=None):
        self.N = N
        self.Gamma = Gamma
        self.phi = _as_table(phi)
        self.action = action if isinstance(action, GroupAction) else GroupAction(Gamma, action)
        self.name = name
        self._pullbacks = {}

    @property
    def act(self):
        return self.action.table

    def __repr__(self):
        label = self.name or "CrossedModule"
        return f"<{label}: |N|={self.N.order}, |Gamma|={self.Gamma.order}>"

    def with_action_entry(self, x, g, value):
        """Copy with one action-table entry overwritten (no validation)."""
        table = self.act.copy()
        table[x, g] = value
        return CrossedModule(self.N, self.Gamma, self.phi.copy(), GroupAction(self.Gamma, table),
                             name=f"{self.name or 'xmod'}[act({x},{g})={value}]")


def validate_crossed_module(N, Gamma, phi, action, name=None):
    """Exhaustively check the crossed-module axioms and return the module."""
    phi = _as_table(phi, (N.order,))
    if np.any((phi < 0) | (phi >= Gamma.order)):
        raise AxiomError("phi takes values outside Gamma")
    table = action.table if isinstance(action, GroupAction) else action
    act = validate_action(Gamma, table, size=N.order)

    ok, w = is_homomorphism(N, Gamma, phi)
    if not ok:
        raise AxiomError("phi is not a homomorphism at (x, y) = %s" % (w,), w)

    a = act.table
    # (xy)^g == x^g y^g, indexed [x, y, g]
    lhs = a[N.table]
    rhs = N.table[a[:, None, :], a[None, :, :]]
    diff = np.argwhere(lhs != rhs)
    if len(diff):
        w = tuple(int(v) for v in diff[0])
        raise AxiomError("action is not by automorphisms at (x, y, g) = %s" % (w,), w)

    # phi(x^g) == g^-1 phi(x) g, indexed [x, g]
    G = Gamma.table
    lhs = phi[a]
    rhs = G[G[Gamma.inverse[None, :], phi[:, None]], np.arange(Gamma.order)[None, :]]
    diff = np.argwhere(lhs != rhs)
    if len(diff):
        w = tuple(int(v) for v in diff[0])
        raise AxiomError("equivariance fails at (x, g) = %s" % (w,), w)

    # Peiffer: x^phi(y) == y^-1 x y, indexed [x, y]
    lhs = a[:, phi]
    T = N.table
    rhs = T[T[N.inverse[None, :], np.arange(N.order)[:, None]], np.arange(N.order)[None, :]]
    diff = np.argwhere(lhs != rhs)
    if len(diff):
        w = tuple(int(v) for v in diff[0])
        raise AxiomError("Peiffer identity fails at (x, y) = %s" % (w,), w)
    return CrossedModule(N, Gamma, phi, act, name=name)


def conjugation_table(G):
    """``table[x, g] = g^-1 x g``."""
    ar = np.arange(G.order)
    return G.table[G.table[G.inverse[None, :], ar[:, None]], ar[None, :]]


def inertia_crossed_module(G):
    """``id: G -> G`` with the conjugation action; its semidirect product is the inertia groupoid."""
    return CrossedModule(G, G, np.arange(G.order), GroupAction(G, conjugation_table(G)),
                         name=f"inertia({G.name or G.order})")


def trivial_crossed_module(G):
    """``1 -> G``; its (0, l) simplex spaces are the bar-complex cells ``G^l``."""
    one = trivial_group()
    return CrossedModule(one, G, np.zeros(1, dtype=np.int64),
                         GroupAction(G, np.zeros((1, G.order), dtype=np.int64)),
                         name=f"point({G.name or G.order})")


def semidirect_product(cm):
    """``N x Gamma`` with ``(x, g)(y, h) = (x y^(g^-1), g h)``; ``(x, g) -> x*|Gamma| + g``."""
    nN, nG = cm.N.order, cm.Gamma.order
    x = np.repeat(np.arange(nN), nG)
    g = np.tile(np.arange(nG), nN)
    a = cm.act
    # y^(g^-1) for every (g, y)
    y_twisted = a[x[None, :], cm.Gamma.inverse[g][:, None]]       # [lhs, rhs]
    prod_x = cm.N.table[x[:, None], y_twisted]
    prod_g = cm.Gamma.table[g[:, None], g[None, :]]
    table = prod_x * nG + prod_g
    return validate_group(table, name=f"{cm.name or 'N'}:semidirect")


@dataclass(frozen=True)
class CyclicCoefficients:
    """``Z/n`` written additively; ``k`` stands for ``exp(2 pi i k / n)`` in S^1."""

    n: int

    def __post_init__(self):
        if int(self.n) < 2:
            raise ValueError("modulus must be >= 2")

    def reduce(self, values):
        return np.mod(values, self.n)

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def norm(self, values):
        """Distance to 0 in the cyclic group, elementwise."""
        v = np.mod(values, self.n)
        return np.minimum(v, self.n - v)

    def __len__(self):
        return self.n


# -- finite groupoids ------------------------------------------------------

class FiniteGroupoid:
    """Finite groupoid on arrows ``0..A-1`` with composition ``fg`` defined iff ``s(f) = t(g)``.

    Composition is stored over the enumerated composable pairs: pair
    ``offset[f] + rank[g]`` holds ``(f, g)``, where ``rank[g]`` is the
    position of ``g`` among arrows with target ``t(g)``.
    """

    def __init__(self, num_objects, source, target, compose, units, inverse, name=None):
        self.num_objects = int(num_objects)
        self.source = np.asarray(source, dtype=np.int64)
        self.target = np.asarray(target, dtype=np.int64)
        self.units = np.asarray(units, dtype=np.int64)
        self.inverse = np.asarray(inverse, dtype=np.int64)
        self.name = name

        by_target = np.argsort(self.target, kind="stable")
        counts = np.bincount(self.target, minlength=self.num_objects)
        self._into = np.split(by_target, np.cumsum(counts)[:-1])
        self.rank = np.empty(self.num_arrows, dtype=np.int64)
        for arrows in self._into:
            self.rank[arrows] = np.arange(len(arrows))
        partners = counts[self.source]
        self.offset = np.concatenate([[0], np.cumsum(partners)[:-1]]).astype(np.int64)
        self.num_pairs = int(partners.sum())

        first = np.repeat(np.arange(self.num_arrows), partners)
        second = np.concatenate([self._into[o] for o in self.source]) if self.num_arrows else first
        self.pair_first = first
        self.pair_second = second.astype(np.int64)
        self.pair_product = np.asarray(compose(self.pair_first, self.pair_second), dtype=np.int64)

    @property
    def num_arrows(self):
        return len(self.source)

    def pair_index(self, f, g):
        return self.offset[f] + self.rank[g]

    def compose(self, f, g):
        return self.pair_product[self.pair_index(f, g)]

    def arrows_into(self, obj):
        return self._into[obj]

    def composable_triples(self):
        """Arrays ``(f, g, h)`` over all composable triples."""
        f, g = self.pair_first, self.pair_second
        counts = np.bincount(self.target, minlength=self.num_objects)[self.source[g]]
        f3 = np.repeat(f, counts)
        g3 = np.repeat(g, counts)
        h3 = np.concatenate([self._into[o] for o in self.source[g]]) if len(g) else g
        return f3, g3, h3

    def __repr__(self):
        return (f"<{self.name or 'FiniteGroupoid'}: {self.num_objects} objects, "
                f"{self.num_arrows} arrows>")


def validate_groupoid(gpd):
    """Exhaustive check of units, inverses and associativity; returns ``gpd``."""
    A = gpd.num_arrows
    if A and (gpd.pair_product.min() < 0 or gpd.pair_product.max() >= A):
        raise AxiomError("composition out of range")
    f, g, fg = gpd.pair_first, gpd.pair_second, gpd.pair_product
    bad = np.nonzero((gpd.target[fg] != gpd.target[f]) | (gpd.source[fg] != gpd.source[g]))[0]
    if len(bad):
        raise AxiomError("composite has wrong endpoints", (f[bad[0]], g[bad[0]]))
    ar = np.arange(A)
    u_t = gpd.units[gpd.target]
    u_s = gpd.units[gpd.source]
    bad = np.nonzero((gpd.compose(u_t, ar) != ar) | (gpd.compose(ar, u_s) != ar))[0]
    if len(bad):
        raise AxiomError(f"unit law fails for arrow {bad[0]}", (bad[0],))
    inv = gpd.inverse
    bad = np.nonzero((gpd.source[inv] != gpd.target) | (gpd.compose(ar, inv) != u_t)
                     | (gpd.compose(inv, ar) != u_s))[0]
    if len(bad):
        raise AxiomError(f"no inverse for arrow {bad[0]}", (bad[0],))
    a, b, c = gpd.composable_triples()
    lhs = gpd.compose(gpd.compose(a, b), c)
    rhs = gpd.compose(a, gpd.compose(b, c))
    bad = np.nonzero(lhs != rhs)[0]
    if len(bad):
        i = bad[0]
        raise AxiomError("not associative", (a[i], b[i], c[i]))
    return gpd


def group_as_groupoid(G):
    """One-object groupoid with the arrows of ``G``."""
    m = G.order
    zeros = np.zeros(m, dtype=np.int64)
    return FiniteGroupoid(1, zeros, zeros, lambda f, g: G.table[f, g], [G.identity],
                          G.inverse.copy(), name=G.name)


def action_groupoid(cm):
    """Transformation groupoid of Gamma acting on the set N.

    Arrow ``(x, g)`` has index ``x*|Gamma| + g``, target ``x`` and source
    ``x^g``; ``(x, g)(x^g, h) = (x, gh)``.  Its nerve in degree ``l`` is
    the ``(1, l)`` simplex space of ``cm``, with matching flat indices.
    """
    nN, nG = cm.N.order, cm.Gamma.order
    x = np.repeat(np.arange(nN), nG)
    g = np.tile(np.arange(nG), nN)
    src = cm.act[x, g]
    inv = cm.act[x, g] * nG + cm.Gamma.inverse[g]

    def compose(f, h):
        return (f // nG) * nG + cm.Gamma.table[f % nG, h % nG]

    units = np.arange(nN) * nG + cm.Gamma.identity
    return FiniteGroupoid(nN, src, x, compose, units, inv, name=f"{cm.name or 'N'}:action")


def pair_groupoid(m):
    """``M x M`` over ``M``: arrow ``(x, y) -> x*m + y`` from ``y`` to ``x``."""
    x = np.repeat(np.arange(m), m)
    y = np.tile(np.arange(m), m)
    return FiniteGroupoid(m, y, x, lambda f, g: (f // m) * m + g % m, np.arange(m) * (m + 1),
                          y * m + x, name=f"pair({m})")
