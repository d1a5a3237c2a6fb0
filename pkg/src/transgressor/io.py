"""Readers and writers for ``.grp``, ``.xmod`` and ``.cch`` files.

``.grp``: ``order m`` then m rows of m integers (row i, column j = i*j).
``.xmod``: ``N:`` and ``Gamma:`` each followed by a ``.grp`` block, then
``phi: v0 ... v(|N|-1)`` and one line ``act g: w0 ... w(|N|-1)`` per g
giving ``x^g``.  ``.cch``: header ``k l n sizeN sizeGamma`` then one
value per line in flat-index order.  Lines starting with ``#`` and blank
lines are ignored by every reader.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .algebra import validate_crossed_module, validate_group
from .cochains import Cochain, SimplexSpace


class FormatError(ValueError):
    """A file does not follow its format."""


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def _ints(no, fields):
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise FormatError(f"line {no}: expected integers, got {' '.join(fields)!r}") from None


def _read_grp_block(lines, name=None):
    try:
        no, line = next(lines)
    except StopIteration:
        raise FormatError("missing 'order m' line") from None
    head = line.split()
    if len(head) != 2 or head[0] != "order":
        raise FormatError(f"line {no}: expected 'order m', got {line!r}")
    m = _ints(no, head[1:])[0]
    if m < 1:
        raise FormatError(f"line {no}: order must be positive")
    rows = []
    for _ in range(m):
        try:
            no, line = next(lines)
        except StopIteration:
            raise FormatError(f"expected {m} table rows, got {len(rows)}") from None
        row = _ints(no, line.split())
        if len(row) != m:
            raise FormatError(f"line {no}: expected {m} entries, got {len(row)}")
        rows.append(row)
    return validate_group(rows, name=name)


def parse_grp(text, name=None):
    lines = _lines(text)
    G = _read_grp_block(lines, name)
    extra = next(lines, None)
    if extra is not None:
        raise FormatError(f"line {extra[0]}: unexpected content after the table")
    return G


def format_grp(G, header=()):
    out = [f"# {h}" for h in header]
    out.append(f"order {G.order}")
    out += [" ".join(map(str, row)) for row in G.table]
    return "\n".join(out) + "\n"


def read_grp(path):
    return parse_grp(Path(path).read_text(), name=Path(path).stem)


def write_grp(path, G, header=()):
    Path(path).write_text(format_grp(G, header))


def _expect_label(lines, label):
    try:
        no, line = next(lines)
    except StopIteration:
        raise FormatError(f"missing '{label}' line") from None
    if line != label:
        raise FormatError(f"line {no}: expected {label!r}, got {line!r}")


def parse_xmod(text, name=None):
    lines = _lines(text)
    _expect_label(lines, "N:")
    N = _read_grp_block(lines, "N")
    _expect_label(lines, "Gamma:")
    Gamma = _read_grp_block(lines, "Gamma")
    try:
        no, line = next(lines)
    except StopIteration:
        raise FormatError("missing 'phi:' line") from None
    if not line.startswith("phi:"):
        raise FormatError(f"line {no}: expected 'phi: ...', got {line!r}")
    phi = _ints(no, line[4:].split())
    if len(phi) != N.order:
        raise FormatError(f"line {no}: phi needs {N.order} values")
    act = [None] * Gamma.order
    for _ in range(Gamma.order):
        try:
            no, line = next(lines)
        except StopIteration:
            raise FormatError(f"expected {Gamma.order} 'act g:' lines") from None
        head, _, rest = line.partition(":")
        parts = head.split()
        if len(parts) != 2 or parts[0] != "act":
            raise FormatError(f"line {no}: expected 'act g: ...', got {line!r}")
        g = _ints(no, parts[1:])[0]
        if not 0 <= g < Gamma.order or act[g] is not None:
            raise FormatError(f"line {no}: bad or repeated group element {g}")
        row = _ints(no, rest.split())
        if len(row) != N.order:
            raise FormatError(f"line {no}: action row needs {N.order} values")
        act[g] = row
    extra = next(lines, None)
    if extra is not None:
        raise FormatError(f"line {extra[0]}: unexpected content after the action")
    table = np.array(act, dtype=np.int64).T          # table[x, g] = x^g
    return validate_crossed_module(N, Gamma, phi, table, name=name)


def format_xmod(cm):
    out = ["N:", format_grp(cm.N).rstrip("\n"), "Gamma:", format_grp(cm.Gamma).rstrip("\n"),
           "phi: " + " ".join(map(str, cm.phi))]
    for g in range(cm.Gamma.order):
        out.append(f"act {g}: " + " ".join(str(int(cm.act[x, g])) for x in range(cm.N.order)))
    return "\n".join(out) + "\n"


def read_xmod(path):
    return parse_xmod(Path(path).read_text(), name=Path(path).stem)


def write_xmod(path, cm):
    Path(path).write_text(format_xmod(cm))


def parse_cch(text, cm):
    lines = _lines(text)
    try:
        no, line = next(lines)
    except StopIteration:
        raise FormatError("missing header 'k l n sizeN sizeGamma'") from None
    head = _ints(no, line.split())
    if len(head) != 5:
        raise FormatError(f"line {no}: header needs 5 integers, got {len(head)}")
    k, l, n, sN, sG = head
    if (sN, sG) != (cm.N.order, cm.Gamma.order):
        raise FormatError(f"line {no}: cochain is for |N|={sN}, |Gamma|={sG}, crossed module has "
                          f"|N|={cm.N.order}, |Gamma|={cm.Gamma.order}")
    if k < 0 or l < 0 or n < 2:
        raise FormatError(f"line {no}: need k, l >= 0 and n >= 2")
    space = SimplexSpace(cm, k, l)
    vals = []
    for no, line in lines:
        fields = line.split()
        if len(fields) != 1:
            raise FormatError(f"line {no}: expected one value per line")
        v = _ints(no, fields)[0]
        if not 0 <= v < n:
            raise FormatError(f"line {no}: value {v} outside 0..{n - 1}")
        vals.append(v)
    if len(vals) != space.size:
        raise FormatError(f"expected {space.size} values, got {len(vals)}")
    return Cochain(space, n, vals)


def format_cch(omega):
    k, l = omega.shape
    cm = omega.space.cm
    head = f"{k} {l} {omega.n} {cm.N.order} {cm.Gamma.order}"
    return head + "\n" + "".join(f"{int(v)}\n" for v in omega.values)


def read_cch(path, cm):
    return parse_cch(Path(path).read_text(), cm)


def write_cch(path, omega):
    Path(path).write_text(format_cch(omega))
