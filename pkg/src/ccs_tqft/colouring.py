"""Exact counts of flat G-colourings.

A colouring gives every edge a group element; it is flat when, for every
face, the product along the face word (inverting backward occurrences) is
the identity.  Two independent counters live here:

* :func:`count_colourings_bruteforce` enumerates every assignment of the
  interior edges.  It is the oracle.
* :func:`count_colourings` / :func:`colouring_table` gauge-fix a spanning
  forest of internal vertices, then walk a static propagation plan: faces
  with a single unknown occurrence are solved by division, fully known faces
  are checked, and otherwise the search branches on an unknown edge of the
  most constrained face.  The plan only depends on which edges are known,
  so it is compiled once and evaluated over numpy arrays of partial
  assignments, chunked to bound memory.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .ccs import CellComplex
from .group import Group

__all__ = [
    "BoundaryColouring",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "flat_check",
    "count_colourings_bruteforce",
    "count_colourings",
    "colouring_table",
    "gauge_tree",
]

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "CCS_BRUTEFORCE_BUDGET"
_CHUNK_ROWS = 1 << 18


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class BoundaryColouring:
    """Group elements on the in circles and out circles, left to right."""

    in_elems: tuple[int, ...] = ()
    out_elems: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "in_elems", tuple(int(x) for x in self.in_elems))
        object.__setattr__(self, "out_elems", tuple(int(x) for x in self.out_elems))

    def check(self, g: Group, m: CellComplex) -> None:
        if len(self.in_elems) != m.n_in or len(self.out_elems) != m.n_out:
            raise ValueError(
                f"boundary colouring has {len(self.in_elems)} in / {len(self.out_elems)} out elements, "
                f"surface has {m.n_in} / {m.n_out} circles"
            )
        for x in self.in_elems + self.out_elems:
            if not 0 <= x < g.order:
                raise ValueError(f"element {x} is not in a group of order {g.order}")

    def assignment(self, m: CellComplex) -> dict[str, int]:
        fixed = {e.id: x for e, x in zip(m.in_edges, self.in_elems)}
        fixed.update({e.id: x for e, x in zip(m.out_edges, self.out_elems)})
        return fixed


def _as_bc(bc) -> BoundaryColouring:
    if bc is None:
        return BoundaryColouring()
    if isinstance(bc, BoundaryColouring):
        return bc
    ins, outs = bc
    return BoundaryColouring(tuple(ins), tuple(outs))


def flat_check(g: Group, m: CellComplex, assignment: Mapping[str, int]) -> bool:
    """True when every face word multiplies out to the identity."""
    mul, inv = g.mul_list, g.inv_list
    for f in m.faces:
        p = g.identity
        for o in f.word:
            try:
                x = assignment[o.edge]
            except KeyError:
                raise ValueError(f"edge {o.edge!r} has no colour") from None
            p = mul[p][x if o.forward else inv[x]]
        if p != g.identity:
            return False
    return True


def _budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def count_colourings_bruteforce(g: Group, m: CellComplex, bc=None, *, budget: int | None = None) -> int:
    """Count flat colourings by trying all ``|G|**k`` interior assignments.

    ``budget`` caps the number of assignments tried (default ``10**8``, or
    the ``CCS_BRUTEFORCE_BUDGET`` environment variable).
    """
    bc = _as_bc(bc)
    bc.check(g, m)
    fixed = bc.assignment(m)
    free = [e.id for e in m.interior_edges]
    n, k = g.order, len(free)
    total = n**k
    if total > _budget(budget):
        raise BudgetExceeded(f"{total} assignments exceed the brute-force budget of {_budget(budget)}")
    col = {e: i for i, e in enumerate(free)}
    mul, inv, e_id = g.mul, g.inv, g.identity
    count = 0
    chunk = max(1, _CHUNK_ROWS)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = [(idx // n ** (k - 1 - c)) % n for c in range(k)]
        ok = np.ones(len(idx), dtype=bool)
        for f in m.faces:
            p = np.full(len(idx), e_id, dtype=np.int64)
            for o in f.word:
                x = digits[col[o.edge]] if o.edge in col else np.full(len(idx), fixed[o.edge], dtype=np.int64)
                p = mul[p, x if o.forward else inv[x]]
            ok &= p == e_id
        count += int(np.count_nonzero(ok))
    return count


# ----------------------------------------------------------- pruned counter


def gauge_tree(m: CellComplex) -> list[str]:
    """Interior edges of a spanning forest rooted at the boundary anchors.

    Every internal vertex reachable from an anchor gets one parent edge.  A
    component without anchors is rooted at its first internal vertex, which
    keeps no parent edge.
    """
    adj: dict[str, list[tuple[str, str]]] = {v.id: [] for v in m.vertices}
    for e in m.interior_edges:
        if e.src != e.dst:
            adj[e.src].append((e.id, e.dst))
            adj[e.dst].append((e.id, e.src))
    seen: set[str] = set()
    tree: list[str] = []

    def grow(roots):
        todo = deque(roots)
        seen.update(roots)
        while todo:
            v = todo.popleft()
            for eid, w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    tree.append(eid)
                    todo.append(w)

    grow([v.id for v in m.vertices if not v.is_internal])
    for v in m.vertices:
        if v.id not in seen:
            grow([v.id])
    return tree


class _Plan:
    """Static branch/solve/check schedule over edge variables."""

    def __init__(self, m: CellComplex, known: set[str]):
        self.var_of = {e.id: i for i, e in enumerate(m.edges)}
        self.faces = [[(self.var_of[o.edge], o.forward) for o in f.word] for f in m.faces]
        is_known = [e.id in known for e in m.edges]
        pending = set(range(len(self.faces)))
        steps: list[tuple] = []
        while pending:
            changed = True
            while changed:
                changed = False
                for fi in sorted(pending):
                    unknown = [k for k, (v, _) in enumerate(self.faces[fi]) if not is_known[v]]
                    if not unknown:
                        steps.append(("check", fi))
                    elif len(unknown) == 1:
                        var = self.faces[fi][unknown[0]][0]
                        steps.append(("solve", fi, unknown[0]))
                        is_known[var] = True
                    else:
                        continue
                    pending.discard(fi)
                    changed = True
            if not pending:
                break
            best = min(
                pending,
                key=lambda fi: (sum(1 for v, _ in self.faces[fi] if not is_known[v]), fi),
            )
            var = next(v for v, _ in self.faces[best] if not is_known[v])
            steps.append(("branch", var))
            is_known[var] = True
        for v, k in enumerate(is_known):
            if not k:  # an edge in no face is unconstrained
                steps.append(("branch", v))
        self.steps = steps


def _run(plan: _Plan, g: Group, vals: np.ndarray, step: int, leaf) -> None:
    mul, inv, n, e = g.mul, g.inv, g.order, g.identity
    while step < len(plan.steps) and len(vals):
        s = plan.steps[step]
        if s[0] == "branch":
            var = s[1]
            if len(vals) * n > _CHUNK_ROWS and len(vals) > 1:
                size = max(1, _CHUNK_ROWS // n)
                for lo in range(0, len(vals), size):
                    _run(plan, g, vals[lo:lo + size], step, leaf)
                return
            rows = len(vals)
            vals = np.repeat(vals, n, axis=0)
            vals[:, var] = np.tile(np.arange(n, dtype=vals.dtype), rows)
        elif s[0] == "check":
            p = np.full(len(vals), e, dtype=np.int64)
            for var, fwd in plan.faces[s[1]]:
                x = vals[:, var]
                p = mul[p, x if fwd else inv[x]]
            vals = vals[p == e]
        else:
            word, k = plan.faces[s[1]], s[2]
            left = np.full(len(vals), e, dtype=np.int64)
            for var, fwd in word[:k]:
                x = vals[:, var]
                left = mul[left, x if fwd else inv[x]]
            right = np.full(len(vals), e, dtype=np.int64)
            for var, fwd in word[k + 1:]:
                x = vals[:, var]
                right = mul[right, x if fwd else inv[x]]
            # left * x^s * right = 1  =>  x^s = left^-1 right^-1
            xs = mul[inv[left], inv[right]]
            var, fwd = word[k]
            vals = vals.copy()
            vals[:, var] = xs if fwd else inv[xs]
        step += 1
    if len(vals):
        leaf(vals)


def _prepare(g: Group, m: CellComplex, fixed: Mapping[str, int]):
    tree = [t for t in gauge_tree(m) if t not in fixed]
    known = set(fixed) | set(tree)
    plan = _Plan(m, known)
    start = np.full((1, len(m.edges)), -1, dtype=np.int64)
    for eid, x in fixed.items():
        start[0, plan.var_of[eid]] = x
    for eid in tree:
        start[0, plan.var_of[eid]] = g.identity
    return plan, start, g.order ** len(tree)


def count_colourings(g: Group, m: CellComplex, bc=None) -> int:
    """Exact number of flat colourings extending the boundary colouring ``bc``."""
    bc = _as_bc(bc)
    bc.check(g, m)
    plan, start, factor = _prepare(g, m, bc.assignment(m))
    total = [0]

    def leaf(vals):
        total[0] += len(vals)

    _run(plan, g, start, 0, leaf)
    return total[0] * factor


def colouring_table(g: Group, m: CellComplex) -> np.ndarray:
    """Counts for every boundary colouring at once.

    Returns an object array of Python ints with shape ``(|G|**m, |G|**n)``:
    the row encodes the out colours, the column the in colours, each as a
    base ``|G|`` number with the leftmost circle most significant.
    """
    n = g.order
    plan, start, factor = _prepare(g, m, {})
    in_vars = [plan.var_of[e.id] for e in m.in_edges]
    out_vars = [plan.var_of[e.id] for e in m.out_edges]
    size_in, size_out = n ** len(in_vars), n ** len(out_vars)
    acc = np.zeros(size_out * size_in, dtype=np.int64)

    def leaf(vals):
        key = np.zeros(len(vals), dtype=np.int64)
        for var in out_vars + in_vars:
            key = key * n + vals[:, var]
        acc[:] += np.bincount(key, minlength=len(acc))

    _run(plan, g, start, 0, leaf)
    table = acc.astype(object).reshape(size_out, size_in)
    return table * factor if factor != 1 else table

