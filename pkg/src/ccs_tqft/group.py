"""Finite groups stored as dense Cayley tables.

Elements are the integers ``0..n-1``.  The identity is stored explicitly and
need not be ``0``; user supplied tables may put it anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

__all__ = [
    "Group",
    "ConjugacyData",
    "GroupError",
    "CayleyParseError",
    "MAX_FILE_ORDER",
    "make_cyclic",
    "make_dihedral",
    "make_symmetric",
    "make_quaternion8",
    "direct_product",
    "from_cayley_table",
    "to_cayley_table",
    "validate_group",
    "conjugate",
    "conjugacy_classes",
    "commuting_pairs",
    "commuting_fraction",
]

MAX_FILE_ORDER = 256


class GroupError(ValueError):
    """A table that violates the group axioms."""


class CayleyParseError(ValueError):
    """Malformed Cayley table text."""


@dataclass(frozen=True, eq=False)
class ConjugacyData:
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


@dataclass(frozen=True, eq=False)
class Group:
    """A finite group as a multiplication table.

    ``mul[a, b]`` is the index of ``a*b`` and ``inv[a]`` the index of ``a**-1``.
    Construct through the ``make_*`` helpers or :func:`from_cayley_table`;
    those validate the axioms.  ``names`` is optional display text per element.
    """

    mul: np.ndarray
    identity: int
    inv: np.ndarray
    name: str = "G"
    names: tuple[str, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        mul = np.asarray(self.mul, dtype=np.int64)
        inv = np.asarray(self.inv, dtype=np.int64)
        mul.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "inv", inv)
        object.__setattr__(self, "identity", int(self.identity))

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def element_name(self, a: int) -> str:
        if self.names is None:
            return str(a)
        return self.names[a]

    def op(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def product(self, elems: Sequence[int]) -> int:
        p = self.identity
        for a in elems:
            p = int(self.mul[p, a])
        return p

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def conj_table(self) -> np.ndarray:
        """``conj_table[k, h] == k h k^-1``."""
        n = self.order
        k = np.arange(n)[:, None]
        h = np.arange(n)[None, :]
        table = self.mul[self.mul[k, h], self.inv[k]]
        table.setflags(write=False)
        return table

    @cached_property
    def mul_list(self) -> list[list[int]]:
        return self.mul.tolist()

    @cached_property
    def inv_list(self) -> list[int]:
        return self.inv.tolist()


def _find_identity(mul: np.ndarray) -> int | None:
    n = mul.shape[0]
    ar = np.arange(n)
    for e in range(n):
        if np.array_equal(mul[e], ar) and np.array_equal(mul[:, e], ar):
            return e
    return None


def _inverse_table(mul: np.ndarray, e: int) -> np.ndarray:
    n = mul.shape[0]
    inv = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        hits = np.flatnonzero(mul[a] == e)
        for b in hits:
            if mul[b, a] == e:
                inv[a] = b
                break
    return inv


def validate_group(g: Group, *, limit: int = 10) -> list[str]:
    """Return the list of axiom violations; an empty list means ``g`` is a group.

    At most ``limit`` associativity failures are reported.
    """
    mul, n = g.mul, g.order
    violations: list[str] = []
    if mul.ndim != 2 or mul.shape != (n, n):
        return [f"table: shape {mul.shape} is not square"]
    if g.inv.shape != (n,):
        return [f"inverse: table has shape {g.inv.shape}, expected ({n},)"]
    bad = np.argwhere((mul < 0) | (mul >= n))
    if len(bad):
        a, b = bad[0]
        violations.append(f"range: mul[{a}][{b}] = {mul[a, b]} is not an element index")
        return violations
    if not 0 <= g.identity < n:
        return [f"identity: index {g.identity} out of range"]
    e = g.identity
    ar = np.arange(n)
    for a in range(n):
        if mul[e, a] != a or mul[a, e] != a:
            violations.append(f"identity: {e}*{a} = {mul[e, a]}, {a}*{e} = {mul[a, e]}")
            break
    for a in range(n):
        b = g.inv[a]
        if not 0 <= b < n or mul[a, b] != e or mul[b, a] != e:
            violations.append(f"inverse: no two-sided inverse recorded for {a}")
            break
    # (ab)c vs a(bc) for all triples at once
    left = mul[mul[ar[:, None, None], ar[None, :, None]], ar[None, None, :]]
    right = mul[ar[:, None, None], mul[ar[None, :, None], ar[None, None, :]]]
    for a, b, c in np.argwhere(left != right)[:limit]:
        violations.append(
            f"associativity: triple ({a}, {b}, {c}): "
            f"({a}*{b})*{c} = {left[a, b, c]} but {a}*({b}*{c}) = {right[a, b, c]}"
        )
    return violations


def _checked(g: Group) -> Group:
    problems = validate_group(g)
    if problems:
        raise GroupError("; ".join(problems))
    return g


def make_cyclic(n: int) -> Group:
    if n < 1:
        raise ValueError(f"cyclic group needs n >= 1, got {n}")
    ar = np.arange(n)
    mul = (ar[:, None] + ar[None, :]) % n
    return _checked(Group(mul, 0, (-ar) % n, name=f"Z{n}"))


def make_dihedral(n: int) -> Group:
    """Dihedral group of order ``2n``; index ``b*n + a`` stands for ``r^a s^b``."""
    if n < 2:
        raise ValueError(f"dihedral group needs n >= 2, got {n}")
    order = 2 * n
    mul = np.empty((order, order), dtype=np.int64)
    for x, y in itertools.product(range(order), repeat=2):
        b1, a1 = divmod(x, n)
        b2, a2 = divmod(y, n)
        a = (a1 + (a2 if b1 == 0 else -a2)) % n
        mul[x, y] = ((b1 + b2) % 2) * n + a
    inv = np.array([(-x) % n if x < n else x for x in range(order)])
    names = tuple(f"r{a}" if b == 0 else f"r{a}s" for b in range(2) for a in range(n))
    return _checked(Group(mul, 0, inv, name=f"D{n}", names=names))


def make_symmetric(n: int) -> Group:
    """Symmetric group on ``n <= 5`` letters.

    Elements are permutations in one-line notation, indexed in lexicographic
    order; ``mul[p][q]`` is the composite ``p(q(x))``.
    """
    if not 1 <= n <= 5:
        raise ValueError(f"symmetric group supported for 1 <= n <= 5, got {n}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    mul = np.empty((size, size), dtype=np.int64)
    inv = np.empty(size, dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            mul[i, j] = index[tuple(p[q[x]] for x in range(n))]
        pinv = [0] * n
        for x, px in enumerate(p):
            pinv[px] = x
        inv[i] = index[tuple(pinv)]
    names = tuple("".join(str(x + 1) for x in p) for p in perms)
    return _checked(Group(mul, 0, inv, name=f"S{n}", names=names))


_Q8_NAMES = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def make_quaternion8() -> Group:
    # unit quaternions as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
    basis = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def decode(x):
        axis, neg = divmod(x, 2)
        return (-1 if neg else 1), axis

    def encode(sign, axis):
        return 2 * axis + (1 if sign < 0 else 0)

    mul = np.empty((8, 8), dtype=np.int64)
    for x, y in itertools.product(range(8), repeat=2):
        s1, a1 = decode(x)
        s2, a2 = decode(y)
        s, a = basis[a1, a2]
        mul[x, y] = encode(s1 * s2 * s, a)
    inv = np.array([0, 1, 3, 2, 5, 4, 7, 6])
    return _checked(Group(mul, 0, inv, name="Q8", names=_Q8_NAMES))


def direct_product(a: Group, b: Group) -> Group:
    """``a x b`` with the pair ``(x, y)`` at index ``x*|b| + y``."""
    na, nb = a.order, b.order
    x = np.arange(na * nb)
    xa, xb = np.divmod(x, nb)
    mul = a.mul[xa[:, None], xa[None, :]] * nb + b.mul[xb[:, None], xb[None, :]]
    inv = a.inv[xa] * nb + b.inv[xb]
    names = None
    if a.names is not None or b.names is not None:
        names = tuple(f"({a.element_name(p)},{b.element_name(q)})" for p in range(na) for q in range(nb))
    return _checked(
        Group(mul, a.identity * nb + b.identity, inv, name=f"{a.name}x{b.name}", names=names)
    )


def from_cayley_table(text: str, *, max_order: int = MAX_FILE_ORDER, name: str = "G") -> Group:
    """Parse a Cayley table file.

    Line one holds the order ``n``; the next ``n`` non-comment lines are the
    rows of the table.  Lines starting with ``#`` and blank lines are skipped.
    The identity is inferred from the table.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise CayleyParseError("empty table")
    try:
        n = int(lines[0])
    except ValueError:
        raise CayleyParseError(f"first line must be the group order, got {lines[0]!r}") from None
    if n < 1:
        raise CayleyParseError(f"group order must be positive, got {n}")
    if n > max_order:
        raise CayleyParseError(f"group order {n} exceeds the cap of {max_order}")
    rows = lines[1:]
    if len(rows) != n:
        raise CayleyParseError(f"expected {n} table rows, found {len(rows)}")
    table = []
    for r, row in enumerate(rows):
        try:
            vals = [int(tok) for tok in row.split()]
        except ValueError:
            raise CayleyParseError(f"row {r}: non-integer entry in {row!r}") from None
        if len(vals) != n:
            raise CayleyParseError(f"row {r}: expected {n} entries, found {len(vals)}")
        table.append(vals)
    mul = np.array(table, dtype=np.int64)
    bad = np.argwhere((mul < 0) | (mul >= n))
    if len(bad):
        a, b = bad[0]
        raise GroupError(f"range: mul[{a}][{b}] = {mul[a, b]} is not an element index")
    e = _find_identity(mul)
    if e is None:
        raise GroupError("identity: no two-sided identity element in table")
    inv = _inverse_table(mul, e)
    if (inv < 0).any():
        a = int(np.flatnonzero(inv < 0)[0])
        raise GroupError(f"inverse: element {a} has no two-sided inverse")
    return _checked(Group(mul, e, inv, name=name))


def to_cayley_table(g: Group) -> str:
    rows = [str(g.order)] + [" ".join(str(x) for x in row) for row in g.mul.tolist()]
    return "\n".join(rows) + "\n"


def conjugate(g: Group, k: int, h: int) -> int:
    """Return ``k h k^-1``."""
    return int(g.mul[g.mul[k, h], g.inv[k]])


def conjugacy_classes(g: Group) -> ConjugacyData:
    """Partition the elements into conjugacy classes, ordered by least member."""
    n = g.order
    class_of = [-1] * n
    classes = []
    table = g.conj_table
    for a in range(n):
        if class_of[a] >= 0:
            continue
        orbit = sorted(set(table[:, a].tolist()))
        for x in orbit:
            class_of[x] = len(classes)
        classes.append(tuple(orbit))
    return ConjugacyData(tuple(classes), tuple(class_of))


def commuting_pairs(g: Group) -> int:
    return int(np.count_nonzero(g.mul == g.mul.T))


def commuting_fraction(g: Group) -> Fraction:
    return Fraction(commuting_pairs(g), g.order**2)
