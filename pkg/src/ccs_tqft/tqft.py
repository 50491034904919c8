"""Normalised invariants and the linear maps they assemble into.

Values are never floats.  An invariant is ``count * order**(-half_exponent/2)``
with ``count`` a Python int; ``half_exponent`` is ``n + m + 2v`` for a surface
with ``n`` in circles, ``m`` out circles and ``v`` internal vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np

from .ccs import CellComplex, internal_vertex_count
from .colouring import BoundaryColouring, colouring_table, count_colourings
from .group import Group, conjugacy_classes

__all__ = [
    "InvariantValue",
    "TqftMatrix",
    "half_exponent",
    "invariant_scalar",
    "invariant_matrix",
    "compose",
    "tensor",
    "values_equal",
    "matrices_equal",
    "reflect_matrix",
    "rotate_matrix",
    "is_idempotent",
    "class_vectors_fixed",
    "empty_matrix",
    "dump_matrix",
    "parse_matrix",
    "basis_index",
]


@dataclass(frozen=True)
class InvariantValue:
    group_order: int
    count: int
    half_exponent: int

    def squared(self) -> Fraction:
        """The exact square of the value."""
        return Fraction(self.count**2, self.group_order**self.half_exponent)

    def to_fraction(self) -> Fraction:
        if self.half_exponent % 2:
            raise ValueError("value involves an odd power of sqrt(|G|)")
        return Fraction(self.count, self.group_order ** (self.half_exponent // 2))

    def decimal(self, digits: int = 12) -> str:
        with localcontext() as ctx:
            ctx.prec = digits + 10
            val = Decimal(self.count) / Decimal(self.group_order).sqrt() ** self.half_exponent
            ctx.prec = digits
            return format((+val).normalize(), "f")

    def __float__(self) -> float:
        return float(self.decimal(17))


def half_exponent(m: CellComplex) -> int:
    return m.n_in + m.n_out + 2 * internal_vertex_count(m)


def values_equal(a: InvariantValue, b: InvariantValue) -> bool:
    """Exact comparison of ``a.count*|G|^(-a.he/2)`` and ``b.count*|G|^(-b.he/2)``."""
    if a.group_order != b.group_order:
        raise ValueError(f"group orders differ: {a.group_order} vs {b.group_order}")
    q = a.group_order
    return a.count**2 * q**b.half_exponent == b.count**2 * q**a.half_exponent


def invariant_scalar(g: Group, m: CellComplex, bc=None) -> InvariantValue:
    """The normalised colouring count for one boundary colouring."""
    return InvariantValue(g.order, count_colourings(g, m, bc), half_exponent(m))


@dataclass(frozen=True, eq=False)
class TqftMatrix:
    """Raw colouring counts with one shared half exponent.

    ``entries[r, c]`` counts colourings with out colours encoded by ``r``
    and in colours encoded by ``c`` (see :func:`basis_index`).
    """

    group_order: int
    n_in: int
    n_out: int
    entries: np.ndarray
    half_exponent: int

    def __post_init__(self):
        ent = np.asarray(self.entries, dtype=object)
        want = (self.group_order**self.n_out, self.group_order**self.n_in)
        if ent.shape != want:
            raise ValueError(f"entries have shape {ent.shape}, expected {want}")
        ent.setflags(write=False)
        object.__setattr__(self, "entries", ent)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def value(self, out_elems=(), in_elems=()) -> InvariantValue:
        r = basis_index(out_elems, self.group_order)
        c = basis_index(in_elems, self.group_order)
        return InvariantValue(self.group_order, int(self.entries[r, c]), self.half_exponent)

    def __eq__(self, other) -> bool:
        """Structural identity: same shape, same raw counts, same half exponent."""
        if not isinstance(other, TqftMatrix):
            return NotImplemented
        return (
            (self.group_order, self.n_in, self.n_out, self.half_exponent)
            == (other.group_order, other.n_in, other.n_out, other.half_exponent)
            and bool(np.array_equal(self.entries, other.entries))
        )

    __hash__ = None

    def reduced(self) -> "TqftMatrix":
        """Divide out common factors of ``|G|`` while lowering the half exponent by 2.

        Two matrices with the same values and half exponents of the same
        parity reduce to identical matrices.
        """
        q, ent, he = self.group_order, self.entries, self.half_exponent
        while he >= 2 and q > 1 and all(x % q == 0 for x in ent.flat):
            ent = ent // q
            he -= 2
        return TqftMatrix(q, self.n_in, self.n_out, ent, he)

    def normalized(self) -> np.ndarray:
        """Exact entries as Fractions; needs an even half exponent."""
        scale = Fraction(1, self.group_order ** (self.half_exponent // 2))
        if self.half_exponent % 2:
            raise ValueError("odd half exponent; entries are irrational")
        return np.vectorize(lambda x: Fraction(x) * scale, otypes=[object])(self.entries)


def basis_index(elems, order: int) -> int:
    """Position of a colour tuple in the basis; the leftmost circle is most significant."""
    idx = 0
    for x in elems:
        idx = idx * order + int(x)
    return idx


def invariant_matrix(g: Group, m: CellComplex) -> TqftMatrix:
    return TqftMatrix(g.order, m.n_in, m.n_out, colouring_table(g, m), half_exponent(m))


def empty_matrix(order: int) -> TqftMatrix:
    """The 1x1 matrix of the empty surface."""
    return TqftMatrix(order, 0, 0, np.array([[1]], dtype=object), 0)


def compose(z2: TqftMatrix, z1: TqftMatrix) -> TqftMatrix:
    """``z2 o z1``: first ``z1``, then ``z2``."""
    if z1.group_order != z2.group_order:
        raise ValueError(f"group orders differ: {z1.group_order} vs {z2.group_order}")
    if z1.n_out != z2.n_in:
        raise ValueError(f"cannot compose: {z1.n_out} out circles against {z2.n_in} in circles")
    if z1.n_out == 0:
        raise ValueError("composition needs at least one shared circle")
    entries = np.dot(z2.entries, z1.entries)
    return TqftMatrix(z1.group_order, z1.n_in, z2.n_out, entries, z1.half_exponent + z2.half_exponent)


def tensor(z1: TqftMatrix, z2: TqftMatrix) -> TqftMatrix:
    """Matrix of the disjoint union with ``z1``'s circles on the left."""
    if z1.group_order != z2.group_order:
        raise ValueError(f"group orders differ: {z1.group_order} vs {z2.group_order}")
    entries = np.kron(z1.entries, z2.entries)
    return TqftMatrix(
        z1.group_order, z1.n_in + z2.n_in, z1.n_out + z2.n_out, entries, z1.half_exponent + z2.half_exponent
    )


def matrices_equal(a: TqftMatrix, b: TqftMatrix) -> bool:
    """Entrywise :func:`values_equal` on matrices of the same shape."""
    if a.group_order != b.group_order:
        raise ValueError(f"group orders differ: {a.group_order} vs {b.group_order}")
    if (a.n_in, a.n_out) != (b.n_in, b.n_out):
        return False
    q = a.group_order
    lhs = (a.entries * a.entries) * q**b.half_exponent
    rhs = (b.entries * b.entries) * q**a.half_exponent
    return bool(np.array_equal(lhs, rhs))


def reflect_matrix(z: TqftMatrix) -> TqftMatrix:
    return TqftMatrix(z.group_order, z.n_out, z.n_in, z.entries.T.copy(), z.half_exponent)


def _reverse_invert_perm(g: Group, k: int) -> np.ndarray:
    inv = g.inv.tolist()
    perm = np.empty(g.order**k, dtype=np.int64)
    for idx, tup in enumerate(itertools.product(range(g.order), repeat=k)):
        perm[idx] = basis_index([inv[x] for x in reversed(tup)], g.order)
    return perm


def rotate_matrix(z: TqftMatrix, g: Group) -> TqftMatrix:
    """Matrix of the half-turned surface.

    New entry at out ``(g_n^-1..g_1^-1)``, in ``(h_m^-1..h_1^-1)`` is the old
    entry at out ``(h_1..h_m)``, in ``(g_1..g_n)``.
    """
    if g.order != z.group_order:
        raise ValueError("group does not match the matrix")
    pn = _reverse_invert_perm(g, z.n_in)
    pm = _reverse_invert_perm(g, z.n_out)
    entries = z.entries.T[pn][:, pm]
    return TqftMatrix(z.group_order, z.n_out, z.n_in, entries, z.half_exponent)


def is_idempotent(z: TqftMatrix) -> bool:
    if z.n_in != z.n_out:
        raise ValueError(f"idempotency needs a square map, got {z.n_in} in / {z.n_out} out")
    if z.n_in == 0:
        return matrices_equal(TqftMatrix(z.group_order, 0, 0, z.entries * z.entries, 2 * z.half_exponent), z)
    return matrices_equal(compose(z, z), z)


def class_vectors_fixed(g: Group, z: TqftMatrix) -> list[tuple[tuple[int, ...], bool]]:
    """Apply a one-circle map to each conjugacy-class indicator vector.

    Returns ``(class, fixed)`` pairs; ``fixed`` is true when the normalised
    map sends the indicator to itself, computed in exact rationals.
    """
    if (z.n_in, z.n_out) != (1, 1):
        raise ValueError("class vectors need a map from one circle to one circle")
    norm = z.normalized()
    out = []
    for cls in conjugacy_classes(g).classes:
        vec = np.zeros(g.order, dtype=object)
        vec[:] = Fraction(0)
        for x in cls:
            vec[x] = Fraction(1)
        image = norm.dot(vec)
        out.append((cls, bool(all(image[i] == vec[i] for i in range(g.order)))))
    return out


def dump_matrix(z: TqftMatrix) -> str:
    lines = [f"tqft n={z.n_in} m={z.n_out} order={z.group_order} he={z.half_exponent}"]
    lines += [" ".join(str(int(x)) for x in row) for row in z.entries]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> TqftMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    head = lines[0].split()
    if head[0] != "tqft":
        raise ValueError("matrix dump must start with 'tqft'")
    fields = dict(tok.split("=", 1) for tok in head[1:])
    n, m, order, he = (int(fields[k]) for k in ("n", "m", "order", "he"))
    rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    entries = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for r, row in enumerate(rows):
        entries[r, :] = row
    return TqftMatrix(order, n, m, entries, he)


def boundary_colourings(g: Group, m: CellComplex):
    """All boundary colourings of ``m`` in basis order (out major, in minor)."""
    for out in itertools.product(range(g.order), repeat=m.n_out):
        for inn in itertools.product(range(g.order), repeat=m.n_in):
            yield BoundaryColouring(inn, out)
