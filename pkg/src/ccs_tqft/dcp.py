"""The disk, cylinder and pants functions and the identities they satisfy.

``D(a)`` is 1 on the identity and 0 elsewhere, ``C(a, b)`` counts ``k`` with
``a = k b k^-1`` and ``P(a, b, c)`` counts pairs ``(j1, j2)`` with
``a = j2 b j2^-1 j1 c j1^-1``.  The scalar functions are literal
definitions; the tables are the same quantities computed with numpy for
the exhaustive checks.  Every ``check_*`` returns a :class:`CheckResult`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .ccs import builtin
from .colouring import count_colourings
from .group import Group, commuting_fraction, commuting_pairs, conjugacy_classes

__all__ = [
    "CheckResult",
    "d_func",
    "c_func",
    "p_func",
    "d_table",
    "c_table",
    "p_table",
    "check_cyl_identity",
    "check_sum_c",
    "class_size_via_c",
    "conj_class_count_via_c",
    "check_class_sizes",
    "check_class_count",
    "check_torus_identity",
    "check_two_cylinder_torus",
    "c_from_p",
    "check_pants_move_1",
    "check_pants_move_2",
    "check_symmetries",
    "check_commuting_fraction_prop",
    "ALL_CHECKS",
    "run_all_checks",
    "PANTS_MOVE_CAP",
]

PANTS_MOVE_CAP = 8


@dataclass
class CheckResult:
    name: str
    status: str  # "ok", "fail" or "skipped"
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if not self.detail:
            return ""
        return ", ".join(f"{k}={v}" for k, v in self.detail.items())


def _ok(name, **detail):
    return CheckResult(name, "ok", detail)


def _fail(name, **detail):
    return CheckResult(name, "fail", detail)


# ------------------------------------------------------------ definitions


def d_func(g: Group, a: int) -> int:
    return 1 if a == g.identity else 0


def c_func(g: Group, a: int, b: int) -> int:
    mul, inv = g.mul_list, g.inv_list
    return sum(1 for k in range(g.order) if mul[mul[k][b]][inv[k]] == a)


def p_func(g: Group, a: int, b: int, c: int) -> int:
    mul, inv = g.mul_list, g.inv_list
    count = 0
    for j1, j2 in itertools.product(range(g.order), repeat=2):
        left = mul[mul[j2][b]][inv[j2]]
        right = mul[mul[j1][c]][inv[j1]]
        count += mul[left][right] == a
    return count


def d_table(g: Group) -> np.ndarray:
    d = np.zeros(g.order, dtype=np.int64)
    d[g.identity] = 1
    return d


def c_table(g: Group) -> np.ndarray:
    """``C[a, b]`` for all pairs."""
    n = g.order
    conj = g.conj_table  # conj[k, b] = k b k^-1
    table = np.zeros((n, n), dtype=np.int64)
    for b in range(n):
        table[:, b] = np.bincount(conj[:, b], minlength=n)
    return table


def p_table(g: Group) -> np.ndarray:
    """``P[a, b, c]`` for all triples, as a dense ``|G|^3`` table."""
    n = g.order
    conj = g.conj_table
    table = np.zeros((n, n, n), dtype=np.int64)
    for b in range(n):
        for c in range(n):
            prods = g.mul[conj[:, b][:, None], conj[:, c][None, :]]
            table[:, b, c] = np.bincount(prods.ravel(), minlength=n)
    return table


# ------------------------------------------------------------- identities


def check_cyl_identity(g: Group) -> CheckResult:
    """sum_h C(g,h) C(h,i) == |G| C(g,i) for all g, i."""
    name = "cylinder_identity"
    c = c_table(g)
    lhs, rhs = c @ c, g.order * c
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, i = map(int, bad[0])
        return _fail(name, g=a, i=i, lhs=int(lhs[a, i]), rhs=int(rhs[a, i]))
    return _ok(name)


def check_sum_c(g: Group) -> CheckResult:
    name = "sum_c"
    sums = c_table(g).sum(axis=1)
    for a in range(g.order):
        if sums[a] != g.order:
            return _fail(name, g=a, lhs=int(sums[a]), rhs=g.order)
    return _ok(name)


def class_size_via_c(g: Group, a: int) -> int:
    """Size of the conjugacy class of ``a`` as ``|G| / C(a, a)``."""
    q, r = divmod(g.order, c_func(g, a, a))
    if r:
        raise ArithmeticError(f"C({a},{a}) does not divide |G|")
    return q


def conj_class_count_via_c(g: Group) -> int:
    """Number of conjugacy classes as ``sum C(a,b)^2 / |G|^2``."""
    c = c_table(g)
    total = int((c * c).sum())
    q, r = divmod(total, g.order**2)
    if r:
        raise ArithmeticError(f"sum of C^2 = {total} is not a multiple of |G|^2")
    return q


def check_class_sizes(g: Group) -> CheckResult:
    name = "class_size"
    conj = conjugacy_classes(g)
    for a in range(g.order):
        want = len(conj.classes[conj.class_of[a]])
        got = class_size_via_c(g, a)
        if got != want:
            return _fail(name, g=a, via_c=got, enumerated=want)
    return _ok(name)


def check_class_count(g: Group) -> CheckResult:
    name = "class_count"
    want = len(conjugacy_classes(g))
    got = conj_class_count_via_c(g)
    if got != want:
        return _fail(name, via_c=got, enumerated=want)
    return _ok(name, classes=want)


def check_torus_identity(g: Group) -> CheckResult:
    """sum D(g)P(g,h,k)P(l,h,k)D(l) == |G|^3 #commuting pairs."""
    name = "torus_from_two_pants"
    d, p = d_table(g), p_table(g).astype(object)
    lhs = int(np.einsum("g,ghk,lhk,l->", d.astype(object), p, p, d.astype(object)))
    rhs = g.order**3 * commuting_pairs(g)
    if lhs != rhs:
        return _fail(name, lhs=lhs, rhs=rhs)
    return _ok(name, value=lhs)


def check_two_cylinder_torus(g: Group) -> CheckResult:
    """#commuting / |G| == sum C^2 / |G|^2."""
    name = "two_cylinder_torus"
    c = c_table(g)
    lhs = Fraction(commuting_pairs(g), g.order)
    rhs = Fraction(int((c * c).sum()), g.order**2)
    if lhs != rhs:
        return _fail(name, lhs=lhs, rhs=rhs)
    return _ok(name, value=lhs)


def c_from_p(g: Group) -> CheckResult:
    """|G| C(a,b) == P(a,b,1) == sum_h P(a,b,h) |G| D(h) / |G|."""
    name = "c_from_p"
    c, p, d = c_table(g), p_table(g), d_table(g)
    summed = np.einsum("abh,h->ab", p, d)
    for a, b in itertools.product(range(g.order), repeat=2):
        lhs = g.order * int(c[a, b])
        if lhs != p[a, b, g.identity] or lhs != summed[a, b]:
            return _fail(name, a=a, b=b, lhs=lhs, rhs=int(p[a, b, g.identity]), summed=int(summed[a, b]))
    return _ok(name)


def check_pants_move_1(g: Group, *, cap: int = PANTS_MOVE_CAP) -> CheckResult:
    """sum_g P(g,i,h)P(g,l,m) == sum_g P(g,l^-1,i)P(g,m,h^-1) for all i, h, l, m."""
    name = "pants_move_1"
    if g.order > cap:
        return CheckResult(name, "skipped", {"reason": f"|G|={g.order} exceeds cap {cap}"})
    p = p_table(g)
    inv = g.inv
    lhs = np.einsum("gih,glm->ihlm", p, p)
    q1 = p[:, inv, :]  # q1[g, l, i] = P(g, l^-1, i)
    q2 = p[:, :, inv]  # q2[g, m, h] = P(g, m, h^-1)
    rhs = np.einsum("gli,gmh->ihlm", q1, q2)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        i, h, l_, m = map(int, bad[0])
        return _fail(name, i=i, h=h, l=l_, m=m, lhs=int(lhs[i, h, l_, m]), rhs=int(rhs[i, h, l_, m]))
    return _ok(name)


def check_pants_move_2(g: Group, *, cap: int = PANTS_MOVE_CAP) -> CheckResult:
    """sum_g P(g,h,g) == sum_g P(g,g,h), both equal to punctured torus counts."""
    name = "pants_move_2"
    if g.order > cap:
        return CheckResult(name, "skipped", {"reason": f"|G|={g.order} exceeds cap {cap}"})
    p = p_table(g)
    ar = np.arange(g.order)
    lhs = p[ar, :, ar].sum(axis=0)  # lhs[h] = sum_g P(g, h, g)
    rhs = p[ar, ar, :].sum(axis=0)  # rhs[h] = sum_g P(g, g, h)
    torus_a, torus_b = builtin("punctured_torus_a"), builtin("punctured_torus_b")
    for h in range(g.order):
        count_b = count_colourings(g, torus_b, ((), (h,)))
        count_a = count_colourings(g, torus_a, ((), (h,)))
        if not (lhs[h] == rhs[h] == count_a == count_b):
            return _fail(
                name, h=h, lhs=int(lhs[h]), rhs=int(rhs[h]), punctured_a=count_a, punctured_b=count_b
            )
    return _ok(name)


def check_symmetries(g: Group) -> CheckResult:
    """D(a^-1)=D(a), C(b^-1,a^-1)=C(b,a)=C(a,b), P(a^-1,c^-1,b^-1)=P(a,b,c)."""
    name = "symmetries"
    inv = g.inv
    d, c, p = d_table(g), c_table(g), p_table(g)
    for a in range(g.order):
        if d[inv[a]] != d[a]:
            return _fail(name, law="D", a=a)
    for a, b in itertools.product(range(g.order), repeat=2):
        if not c[inv[b], inv[a]] == c[b, a] == c[a, b]:
            return _fail(name, law="C", a=a, b=b, values=(int(c[inv[b], inv[a]]), int(c[b, a]), int(c[a, b])))
    for a, b, cc in itertools.product(range(g.order), repeat=3):
        if p[inv[a], inv[cc], inv[b]] != p[a, b, cc]:
            return _fail(name, law="P", a=a, b=b, c=cc, lhs=int(p[inv[a], inv[cc], inv[b]]), rhs=int(p[a, b, cc]))
    return _ok(name)


def check_commuting_fraction_prop(g: Group) -> CheckResult:
    name = "commuting_fraction"
    classes = len(conjugacy_classes(g))
    frac = commuting_fraction(g)
    if frac * g.order != classes:
        return _fail(name, classes=classes, fraction=frac, product=frac * g.order)
    return _ok(name, classes=classes, fraction=frac)


ALL_CHECKS = (
    check_cyl_identity,
    check_sum_c,
    check_class_sizes,
    check_class_count,
    check_torus_identity,
    check_two_cylinder_torus,
    c_from_p,
    check_pants_move_1,
    check_pants_move_2,
    check_symmetries,
    check_commuting_fraction_prop,
)


def run_all_checks(g: Group) -> list[CheckResult]:
    return [check(g) for check in ALL_CHECKS]
