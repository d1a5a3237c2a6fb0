"""Free-group words and the categories Delta, Delta_2 and F-Delta as data.

Words are tuples of nonzero integers: ``+i`` is the generator ``x_i`` and
``-i`` its inverse.  A Delta_2 morphism ``(a, b, c)`` is embedded in
F-Delta as a triple ``(psi, u, f)``; the contravariant action of such a
triple on the simplices ``N^k x Gamma^l`` of a crossed module is evaluated
on whole arrays of simplices at once.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

EMPTY = None


def reduce_word(letters):
    """Free reduction of a letter sequence."""
    out = []
    for x in letters:
        x = int(x)
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(w):
    return tuple(-x for x in reversed(w))


def multiply_words(*words):
    return reduce_word(itertools.chain.from_iterable(words))


def substitute(word, images):
    """Replace each ``x_j`` in ``word`` by ``images[j-1]``."""
    out = []
    for x in word:
        img = images[abs(x) - 1]
        out.extend(img if x > 0 else invert_word(img))
    return reduce_word(out)


def prefix_word(i):
    """``y_i = x_1 x_2 ... x_i``."""
    return tuple(range(1, i + 1))


def max_generator(w):
    return max((abs(x) for x in w), default=0)


# -- Delta -----------------------------------------------------------------

@dataclass(frozen=True)
class MonotoneMap:
    """Non-decreasing ``[source] -> [target]`` with ``values[i] = f(i)``."""

    source: int
    target: int
    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.source + 1:
            raise ValueError(f"map from [{self.source}] needs {self.source + 1} values, got {vals}")
        if any(v < 0 or v > self.target for v in vals):
            raise ValueError(f"values {vals} leave [{self.target}]")
        if any(p > q for p, q in zip(vals, vals[1:])):
            raise ValueError(f"values {vals} are not non-decreasing")

    def __call__(self, i):
        return self.values[i]

    def __matmul__(self, other):
        """``self @ other`` is the composite ``self o other``."""
        if other.target != self.source:
            raise ValueError(f"cannot compose [{other.source}]->[{other.target}] "
                             f"with [{self.source}]->[{self.target}]")
        return MonotoneMap(other.source, self.target, tuple(self.values[v] for v in other.values))

    def __repr__(self):
        return f"MonotoneMap({list(self.values)}: [{self.source}]->[{self.target}])"


def identity_map(k):
    return MonotoneMap(k, k, tuple(range(k + 1)))


def face(i, k):
    """The increasing map ``[k] -> [k+1]`` omitting ``i``."""
    if not 0 <= i <= k + 1:
        raise ValueError(f"face index {i} outside 0..{k + 1}")
    return MonotoneMap(k, k + 1, tuple(j if j < i else j + 1 for j in range(k + 1)))


def monotone_maps(k, k2):
    """All non-decreasing maps ``[k] -> [k2]``."""
    for vals in itertools.combinations_with_replacement(range(k2 + 1), k + 1):
        yield MonotoneMap(k, k2, vals)


def _compose_optional(outer, inner):
    if outer is EMPTY or inner is EMPTY:
        return EMPTY
    return outer @ inner


# -- Delta_2 ---------------------------------------------------------------

@dataclass(frozen=True)
class Delta2Morphism:
    """``(a, b, c): (k, l) -> (k', l')`` with ``a`` or ``b`` EMPTY (``None``)."""

    source: tuple
    target: tuple
    a: Optional[MonotoneMap]
    b: Optional[MonotoneMap]
    c: MonotoneMap

    def __post_init__(self):
        (k, l), (k2, l2) = self.source, self.target
        object.__setattr__(self, "source", (int(k), int(l)))
        object.__setattr__(self, "target", (int(k2), int(l2)))
        if self.a is not EMPTY and self.b is not EMPTY:
            raise ValueError("either a or b must be EMPTY")
        if self.a is not EMPTY and (self.a.source, self.a.target) != (k, k2):
            raise ValueError(f"a must map [{k}] -> [{k2}]")
        if self.b is not EMPTY and (self.b.source, self.b.target) != (l, k2):
            raise ValueError(f"b must map [{l}] -> [{k2}]")
        if (self.c.source, self.c.target) != (l, l2):
            raise ValueError(f"c must map [{l}] -> [{l2}]")

    def __matmul__(self, other):
        return compose_delta2(self, other)

    def __str__(self):
        return format_delta2(self)


def compose_delta2(g, f):
    """The composite ``g o f`` of Delta_2 morphisms."""
    if f.target != g.source:
        raise ValueError(f"shape mismatch: {f.source}->{f.target} then {g.source}->{g.target}")
    c = g.c @ f.c
    if g.b is EMPTY:
        if f.b is EMPTY:
            return Delta2Morphism(f.source, g.target, _compose_optional(g.a, f.a), EMPTY, c)
        return Delta2Morphism(f.source, g.target, EMPTY, _compose_optional(g.a, f.b), c)
    return Delta2Morphism(f.source, g.target, EMPTY, g.b @ f.c, c)


def identity_morphism(k, l):
    return Delta2Morphism((k, l), (k, l), identity_map(k), EMPTY, identity_map(l))


def gamma_face(k, l, i):
    """``(id, EMPTY, face_i): (k, l) -> (k, l+1)``."""
    return Delta2Morphism((k, l), (k, l + 1), identity_map(k), EMPTY, face(i, l))


def n_face(k, l, i):
    """``(face_i, EMPTY, id): (k, l) -> (k+1, l)``."""
    return Delta2Morphism((k, l), (k + 1, l), face(i, k), EMPTY, identity_map(l))


def delta2_morphisms(source, target):
    """Every Delta_2 morphism ``source -> target``."""
    (k, l), (k2, l2) = source, target
    cs = list(monotone_maps(l, l2))
    firsts = [(EMPTY, EMPTY)]
    firsts += [(a, EMPTY) for a in monotone_maps(k, k2)]
    firsts += [(EMPTY, b) for b in monotone_maps(l, k2)]
    for (a, b), c in itertools.product(firsts, cs):
        yield Delta2Morphism(source, target, a, b, c)


def random_delta2(rng, source, target):
    """A uniformly chosen morphism from the full list (fine for small shapes)."""
    options = list(delta2_morphisms(source, target))
    return options[int(rng.integers(len(options)))]


_D2_RE = re.compile(
    r"^D2\s*\((\d+),(\d+)\)\s*->\s*\((\d+),(\d+)\)\s+a=(\[[\d,\s]*\]|E)\s+b=(\[[\d,\s]*\]|E)"
    r"\s+c=(\[[\d,\s]*\])\s*$")


def format_delta2(f):
    def part(m):
        return "E" if m is EMPTY else "[" + ",".join(map(str, m.values)) + "]"
    (k, l), (k2, l2) = f.source, f.target
    return f"D2 ({k},{l})->({k2},{l2}) a={part(f.a)} b={part(f.b)} c={part(f.c)}"


def parse_delta2(text):
    m = _D2_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a Delta_2 morphism: {text!r}")
    k, l, k2, l2 = (int(v) for v in m.group(1, 2, 3, 4))

    def part(s, src, tgt):
        if s == "E":
            return EMPTY
        vals = [int(v) for v in s.strip("[]").split(",") if v.strip()]
        return MonotoneMap(src, tgt, vals)
    return Delta2Morphism((k, l), (k2, l2), part(m.group(5), k, k2), part(m.group(6), l, k2),
                          part(m.group(7), l, l2))


# -- F-Delta ---------------------------------------------------------------

@dataclass(frozen=True)
class FDeltaMorphism:
    """``(psi, u, f): (k, l) -> (k', l')`` in canonical form ``u_0 = 1``.

    ``psi[i-1]`` is the image of ``x_i`` (a word over ``F_k'``) and ``u``
    has ``l + 1`` words.  Representatives related by ``psi -> psi^v``,
    ``u_i -> v^-1 u_i`` are identified by normalising ``u_0`` away.
    """

    source: tuple
    target: tuple
    psi: tuple
    u: tuple
    f: MonotoneMap

    def __post_init__(self):
        (k, l), (k2, l2) = self.source, self.target
        psi = tuple(reduce_word(w) for w in self.psi)
        u = tuple(reduce_word(w) for w in self.u)
        if len(psi) != k or len(u) != l + 1:
            raise ValueError("psi needs k words and u needs l+1 words")
        if any(max_generator(w) > k2 for w in psi + u):
            raise ValueError(f"words must lie in F_{k2}")
        if (self.f.source, self.f.target) != (l, l2):
            raise ValueError(f"f must map [{l}] -> [{l2}]")
        v = u[0]
        if v:
            vinv = invert_word(v)
            psi = tuple(multiply_words(vinv, w, v) for w in psi)
            u = tuple(multiply_words(vinv, w) for w in u)
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "u", u)

    def __matmul__(self, other):
        return compose_fdelta(self, other)


def embed_fdelta(m):
    """The F-Delta triple ``(psi_a, u_b, c)`` of a Delta_2 morphism."""
    (k, l), _ = m.source, m.target

    def a(i):
        return 0 if m.a is EMPTY else m.a(i)

    def b(i):
        return 0 if m.b is EMPTY else m.b(i)

    # psi_a(x_i) = psi_a(y_{i-1})^-1 psi_a(y_i) with psi_a(y_i) = y_{a(0)}^-1 y_{a(i)}
    psi = tuple(multiply_words(invert_word(prefix_word(a(i - 1))), prefix_word(a(i)))
                for i in range(1, k + 1))
    u = tuple(prefix_word(b(i)) for i in range(l + 1))
    return FDeltaMorphism(m.source, m.target, psi, u, m.c)


def compose_fdelta(g, f):
    """``g o f`` with ``psi'' = psi' o psi``, ``u''_i = psi'(u_i) u'_{f(i)}``."""
    if f.target != g.source:
        raise ValueError(f"shape mismatch: {f.source}->{f.target} then {g.source}->{g.target}")
    psi = tuple(substitute(w, g.psi) for w in f.psi)
    u = tuple(multiply_words(substitute(w, g.psi), g.u[f.f(i)]) for i, w in enumerate(f.u))
    return FDeltaMorphism(f.source, g.target, psi, u, g.f @ f.f)


def identity_fdelta(k, l):
    return embed_fdelta(identity_morphism(k, l))


# -- action on simplices ---------------------------------------------------

class Simplex(NamedTuple):
    xs: tuple
    gs: tuple


def _evaluate_word(word, xs, N, count):
    out = np.full(count, N.identity, dtype=np.int64)
    for letter in word:
        x = xs[abs(letter) - 1]
        out = N.table[out, x if letter > 0 else N.inverse[x]]
    return out


def apply_fdelta(F, cm, xs, gs, count):
    """Evaluate the map ``N^k' x Gamma^l' -> N^k x Gamma^l`` of ``F``.

    ``xs``/``gs`` are lists of equal-length arrays (the components of
    ``count`` simplices).  Homogeneous coordinates ``H_j = g_1...g_j`` are
    pulled back by ``G_i = phi(h(u_i)) H_{f(i)}``, ``h(a) = h'(psi(a))``,
    then normalised by ``r = G_0``: ``x_i = h(x_i)^r`` and
    ``g_i = G_{i-1}^-1 G_i``.
    """
    N, Gm = cm.N, cm.Gamma
    H = [np.full(count, Gm.identity, dtype=np.int64)]
    for g in gs:
        H.append(Gm.table[H[-1], g])
    G = [Gm.table[cm.phi[_evaluate_word(w, xs, N, count)], H[F.f(i)]]
         for i, w in enumerate(F.u)]
    r = G[0]
    new_xs = [cm.act[_evaluate_word(w, xs, N, count), r] for w in F.psi]
    new_gs = [Gm.table[Gm.inverse[G[i - 1]], G[i]] for i in range(1, len(G))]
    return new_xs, new_gs


def _dims(cm, k, l):
    return (cm.N.order,) * k + (cm.Gamma.order,) * l


def pullback_indices(F, cm):
    """Index map of ``F~``: for every simplex of the target shape of ``F``
    (flat, mixed radix), the flat index of its image in the source shape.

    Cached per crossed module, under both the Delta_2 and F-Delta keys.
    """
    cached = cm._pullbacks.get(F)
    if cached is not None:
        return cached
    if isinstance(F, Delta2Morphism):
        idx = pullback_indices(embed_fdelta(F), cm)
        cm._pullbacks[F] = idx
        return idx
    (k, l), (k2, l2) = F.source, F.target
    tdims = _dims(cm, k2, l2)
    count = int(np.prod(tdims, dtype=np.int64))
    comps = np.unravel_index(np.arange(count), tdims) if tdims else ()
    xs, gs = list(comps[:k2]), list(comps[k2:])
    new_xs, new_gs = apply_fdelta(F, cm, xs, gs, count)
    sdims = _dims(cm, k, l)
    if sdims:
        idx = np.ravel_multi_index(tuple(new_xs + new_gs), sdims)
    else:
        idx = np.zeros(count, dtype=np.int64)
    idx = idx.astype(np.int64)
    idx.setflags(write=False)
    cm._pullbacks[F] = idx
    return idx


def act_on_simplex(m, cm, s):
    """Image of the simplex ``s`` (of the target shape of ``m``) under ``m~``."""
    F = m if isinstance(m, FDeltaMorphism) else embed_fdelta(m)
    (k2, l2) = F.target
    xs, gs = tuple(s[0]), tuple(s[1])
    if len(xs) != k2 or len(gs) != l2:
        raise ValueError(f"simplex shape {(len(xs), len(gs))} does not match {F.target}")
    if any(not 0 <= x < cm.N.order for x in xs) or any(not 0 <= g < cm.Gamma.order for g in gs):
        raise ValueError("simplex component out of range")
    new_xs, new_gs = apply_fdelta(F, cm, [np.array([x]) for x in xs], [np.array([g]) for g in gs], 1)
    return Simplex(tuple(int(v[0]) for v in new_xs), tuple(int(v[0]) for v in new_gs))
