"""Combinatorial model of cut cellular surfaces.

A :class:`CellComplex` is a set of vertices, directed edges and faces.  Each
face is a cyclic word of signed edge occurrences.  Boundary circles are
single loop edges at their own anchor vertex, ordered left to right by
position.  The planar cut picture is not stored; cut edges and internal
edges are both ``interior`` here.

Every operation returns a new complex.  Fresh cells get ids from a
monotone counter carried by the complex, so ids are never reused.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

__all__ = [
    "Vertex",
    "Edge",
    "Occ",
    "Face",
    "CellComplex",
    "ComplexError",
    "MoveError",
    "BUILTIN_NAMES",
    "builtin",
    "empty_complex",
    "make_complex",
    "validate",
    "check_valid",
    "internal_vertex_count",
    "euler_characteristic",
    "components",
    "genus",
    "move_I_subdivide",
    "move_I_merge",
    "move_II_split",
    "move_II_merge",
    "Move",
    "legal_moves",
    "apply_move",
    "random_walk",
    "glue",
    "disjoint_union",
    "reflect",
    "rotate",
    "reverse_edge",
    "rotate_face_word",
    "shrink_disk_tail",
    "canonical_form",
    "is_isomorphic",
]

INTERNAL, IN, OUT, INTERIOR = "internal", "in", "out", "interior"


class ComplexError(ValueError):
    """A complex that breaks the structural invariants."""


class MoveError(ValueError):
    """A move or gluing that cannot be applied."""


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: str = INTERNAL  # "internal", or "in"/"out" for the anchor of a circle
    pos: int | None = None

    @property
    def is_internal(self) -> bool:
        return self.kind == INTERNAL


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str
    kind: str = INTERIOR  # "interior", "in" or "out"
    pos: int | None = None

    @property
    def is_boundary(self) -> bool:
        return self.kind != INTERIOR


class Occ(NamedTuple):
    edge: str
    forward: bool = True

    def flipped(self) -> "Occ":
        return Occ(self.edge, not self.forward)

    def __str__(self) -> str:
        return self.edge if self.forward else "~" + self.edge


@dataclass(frozen=True)
class Face:
    id: str
    word: tuple[Occ, ...]


def _word(spec: str) -> tuple[Occ, ...]:
    return tuple(Occ(t[1:], False) if t.startswith("~") else Occ(t, True) for t in spec.split())


def _reversed_word(word: Iterable[Occ]) -> tuple[Occ, ...]:
    return tuple(o.flipped() for o in reversed(tuple(word)))


@dataclass(frozen=True, eq=False)
class CellComplex:
    vertices: tuple[Vertex, ...] = ()
    edges: tuple[Edge, ...] = ()
    faces: tuple[Face, ...] = ()
    name: str = ""
    next_id: int = field(default=0, compare=False)

    def __repr__(self) -> str:
        return (
            f"CellComplex({self.name!r}, V={len(self.vertices)}, E={len(self.edges)}, "
            f"F={len(self.faces)}, in={self.n_in}, out={self.n_out})"
        )

    @cached_property
    def vertex(self) -> dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def edge(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def face(self) -> dict[str, Face]:
        return {f.id: f for f in self.faces}

    @cached_property
    def n_in(self) -> int:
        return sum(1 for e in self.edges if e.kind == IN)

    @cached_property
    def n_out(self) -> int:
        return sum(1 for e in self.edges if e.kind == OUT)

    @cached_property
    def in_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted((e for e in self.edges if e.kind == IN), key=lambda e: e.pos))

    @cached_property
    def out_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted((e for e in self.edges if e.kind == OUT), key=lambda e: e.pos))

    @cached_property
    def interior_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.kind == INTERIOR)

    @cached_property
    def occurrences(self) -> dict[str, list[tuple[int, int]]]:
        """Edge id -> list of (face index, position) where it occurs."""
        occ = defaultdict(list)
        for fi, f in enumerate(self.faces):
            for p, o in enumerate(f.word):
                occ[o.edge].append((fi, p))
        return dict(occ)

    def tail(self, o: Occ) -> str:
        e = self.edge[o.edge]
        return e.src if o.forward else e.dst

    def head(self, o: Occ) -> str:
        e = self.edge[o.edge]
        return e.dst if o.forward else e.src

    def ids(self) -> set[str]:
        return {v.id for v in self.vertices} | {e.id for e in self.edges} | {f.id for f in self.faces}

    def fresh_ids(self, prefix: str, count: int = 1) -> tuple[list[str], int]:
        used = self.ids()
        out, k = [], self.next_id
        while len(out) < count:
            cand = f"{prefix}{k}"
            k += 1
            if cand not in used:
                out.append(cand)
        return out, k


def make_complex(vertices, edges, faces, name="", next_id=0) -> CellComplex:
    """Build a complex from plain tuples.

    ``vertices`` are ``(id, kind[, pos])``, ``edges`` are
    ``(id, src, dst, kind[, pos])`` and ``faces`` are ``(id, word)`` where
    ``word`` is a space separated string such as ``"a b ~a ~b"``.
    """
    vs = tuple(Vertex(*v) for v in vertices)
    es = tuple(Edge(*e) for e in edges)
    fs = tuple(Face(fid, _word(w) if isinstance(w, str) else tuple(Occ(*o) for o in w)) for fid, w in faces)
    return CellComplex(vs, es, fs, name=name, next_id=next_id)


def empty_complex() -> CellComplex:
    return CellComplex(name="empty")


# ---------------------------------------------------------------- validation


def _vertex_components(m: CellComplex) -> dict[str, str]:
    parent = {v.id: v.id for v in m.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in m.edges:
        if e.src in parent and e.dst in parent:
            a, b = find(e.src), find(e.dst)
            if a != b:
                parent[a] = b
    return {v: find(v) for v in parent}


def components(m: CellComplex) -> list[dict[str, int]]:
    """Per connected component: its V, E, F, boundary count and euler characteristic."""
    root = _vertex_components(m)
    stats: dict[str, dict[str, int]] = {}
    for v in m.vertices:
        stats.setdefault(root[v.id], dict(V=0, E=0, F=0, b=0))["V"] += 1
    for e in m.edges:
        s = stats[root[e.src]]
        s["E"] += 1
        s["b"] += e.is_boundary
    for f in m.faces:
        if f.word:
            stats[root[m.tail(f.word[0])]]["F"] += 1
    out = list(stats.values())
    for s in out:
        s["chi"] = s["V"] - s["E"] + s["F"]
    return out


def validate(m: CellComplex) -> list[str]:
    """Return the invariant violations of ``m``; an empty list means valid.

    Each message starts with a category word and names the offending cell.
    """
    errs: list[str] = []
    seen: set[str] = set()
    for kind, cells in (("vertex", m.vertices), ("edge", m.edges), ("face", m.faces)):
        for c in cells:
            if c.id in seen:
                errs.append(f"duplicate: id {c.id!r} used twice ({kind})")
            seen.add(c.id)
    vmap = m.vertex

    anchors: dict[tuple[str, int], list[str]] = defaultdict(list)
    for v in m.vertices:
        if v.kind == INTERNAL:
            continue
        if v.kind not in (IN, OUT) or v.pos is None:
            errs.append(f"vertex: {v.id!r} has bad kind {v.kind!r}/{v.pos!r}")
            continue
        anchors[v.kind, v.pos].append(v.id)

    circles: dict[tuple[str, int], list[str]] = defaultdict(list)
    touched: set[str] = set()
    for e in m.edges:
        for end in (e.src, e.dst):
            if end not in vmap:
                errs.append(f"dangling: edge {e.id!r} references unknown vertex {end!r}")
            touched.add(end)
        if e.kind == INTERIOR:
            continue
        if e.kind not in (IN, OUT) or e.pos is None or e.pos < 0:
            errs.append(f"edge: {e.id!r} has bad kind {e.kind!r}/{e.pos!r}")
            continue
        circles[e.kind, e.pos].append(e.id)
        if e.src != e.dst:
            errs.append(f"boundary: edge {e.id!r} is not a loop")
        anchor = vmap.get(e.src)
        if anchor is not None and (anchor.kind, anchor.pos) != (e.kind, e.pos):
            errs.append(f"boundary: edge {e.id!r} is not based at the anchor of {e.kind} circle {e.pos}")

    for kind in (IN, OUT):
        positions = sorted(p for (k, p) in circles if k == kind)
        for (k, p), ids in circles.items():
            if k == kind and len(ids) > 1:
                errs.append(f"position: {kind} position {p} used by edges {ids}")
        if positions != list(range(len(positions))):
            errs.append(f"position: {kind} boundary positions {positions} are not 0..{len(positions) - 1}")
        for (k, p), ids in anchors.items():
            if k != kind:
                continue
            if len(ids) > 1:
                errs.append(f"anchor: {kind} circle {p} has several external vertices {ids}")
            if (k, p) not in circles:
                errs.append(f"anchor: vertex {ids[0]!r} anchors {kind} circle {p} which has no edge")
        for (k, p), ids in circles.items():
            if k == kind and (k, p) not in anchors:
                errs.append(f"anchor: {kind} circle {p} has no external vertex")

    for v in m.vertices:
        if v.id not in touched:
            errs.append(f"isolated: vertex {v.id!r} is not an endpoint of any edge")

    emap = m.edge
    counts: dict[str, list[bool]] = defaultdict(list)
    for f in m.faces:
        if not f.word:
            errs.append(f"face: {f.id!r} has an empty word")
            continue
        bad_ref = False
        for o in f.word:
            if o.edge not in emap:
                errs.append(f"dangling: face {f.id!r} references unknown edge {o.edge!r}")
                bad_ref = True
            else:
                counts[o.edge].append(o.forward)
        if bad_ref or any(e not in vmap for o in f.word for e in (emap[o.edge].src, emap[o.edge].dst)):
            continue
        for k, o in enumerate(f.word):
            nxt = f.word[(k + 1) % len(f.word)]
            if m.head(o) != m.tail(nxt):
                errs.append(f"chaining: face {f.id!r} breaks between occurrences {k} ({o}) and {k + 1} ({nxt})")
                break

    for e in m.edges:
        dirs = counts.get(e.id, [])
        if e.is_boundary:
            if len(dirs) != 1:
                errs.append(f"occurrence: boundary edge {e.id!r} occurs {len(dirs)} times")
        elif len(dirs) != 2:
            errs.append(f"occurrence: interior edge {e.id!r} occurs {len(dirs)} times")
        elif dirs[0] == dirs[1]:
            way = "forward" if dirs[0] else "backward"
            errs.append(f"orientation: interior edge {e.id!r} occurs twice {way}")

    if not errs:
        for s in components(m):
            twice_genus = 2 - s["b"] - s["chi"]
            if twice_genus < 0 or twice_genus % 2:
                errs.append(
                    f"euler: component with V={s['V']} E={s['E']} F={s['F']} and {s['b']} boundary "
                    f"circles has chi={s['chi']}, not 2-2g-b"
                )
    return errs


def check_valid(m: CellComplex) -> CellComplex:
    errs = validate(m)
    if errs:
        raise ComplexError("; ".join(errs))
    return m


def internal_vertex_count(m: CellComplex) -> int:
    return sum(1 for v in m.vertices if v.is_internal)


def euler_characteristic(m: CellComplex) -> int:
    return len(m.vertices) - len(m.edges) + len(m.faces)


def genus(m: CellComplex) -> int:
    """Total genus, summed over connected components."""
    return sum((2 - s["b"] - s["chi"]) // 2 for s in components(m))


# --------------------------------------------------------------------- moves


def _replace_faces(m: CellComplex, faces, **kw) -> CellComplex:
    return replace(m, faces=tuple(faces), **kw)


def _require_interior(m: CellComplex, e: str) -> Edge:
    if e not in m.edge:
        raise MoveError(f"unknown edge {e!r}")
    edge = m.edge[e]
    if edge.is_boundary:
        raise MoveError(f"edge {e!r} is a boundary circle; moves apply only to non-boundary 1-cells")
    return edge


def move_I_subdivide(m: CellComplex, e: str) -> CellComplex:
    """Put a new internal vertex in the middle of interior edge ``e``."""
    edge = _require_interior(m, e)
    (v,), k = m.fresh_ids("v")
    (e1, e2), k = replace(m, next_id=k).fresh_ids("e", 2)
    first = Edge(e1, edge.src, v)
    second = Edge(e2, v, edge.dst)
    edges = []
    for x in m.edges:
        edges.extend((first, second) if x.id == e else (x,))
    faces = []
    for f in m.faces:
        word = []
        for o in f.word:
            if o.edge != e:
                word.append(o)
            elif o.forward:
                word += [Occ(e1), Occ(e2)]
            else:
                word += [Occ(e2, False), Occ(e1, False)]
        faces.append(Face(f.id, tuple(word)))
    return replace(m, vertices=m.vertices + (Vertex(v),), edges=tuple(edges), faces=tuple(faces), next_id=k)


def _merge_vertex_plan(m: CellComplex, v: str):
    """Return (into, out_of) occurrences for merging at ``v`` or raise MoveError."""
    if v not in m.vertex:
        raise MoveError(f"unknown vertex {v!r}")
    if not m.vertex[v].is_internal:
        raise MoveError(f"vertex {v!r} is external")
    ends = [(e, side) for e in m.edges for side in ("src", "dst") if getattr(e, side) == v]
    if len(ends) != 2:
        raise MoveError(f"vertex {v!r} has degree {len(ends)}, need 2")
    (a, sa), (b, sb) = ends
    if a.id == b.id:
        raise MoveError(f"vertex {v!r} only carries the loop {a.id!r}")
    if a.is_boundary or b.is_boundary:
        raise MoveError(f"vertex {v!r} touches a boundary edge")
    into = Occ(a.id, sa == "dst")  # traverses a towards v
    out_of = Occ(b.id, sb == "src")  # traverses b away from v
    return into, out_of


def _pair_rewrite(word, into, out_of, new_edge):
    """Replace (into, out_of) by new_edge and the reverse pair by ~new_edge."""
    pairs = {into: (out_of, Occ(new_edge)), out_of.flipped(): (into.flipped(), Occ(new_edge, False))}
    seconds = {out_of, into.flipped()}
    n = len(word)
    starts = [p for p in range(n) if word[p] not in seconds]
    if not starts:
        return None
    s = starts[0]
    out, skip = [], False
    for k in range(n):
        if skip:
            skip = False
            continue
        o = word[(s + k) % n]
        if o in pairs:
            want, repl = pairs[o]
            if k + 1 >= n or word[(s + k + 1) % n] != want:
                return None
            out.append(repl)
            skip = True
        elif o.edge in (into.edge, out_of.edge):
            return None
        else:
            out.append(o)
    return tuple(out)


def move_I_merge(m: CellComplex, v: str) -> CellComplex:
    """Remove internal vertex ``v`` of degree two, joining its two edges."""
    into, out_of = _merge_vertex_plan(m, v)
    (c,), k = m.fresh_ids("e")
    faces = []
    for f in m.faces:
        if any(o.edge in (into.edge, out_of.edge) for o in f.word):
            word = _pair_rewrite(f.word, into, out_of, c)
            if word is None:
                raise MoveError(f"merging at {v!r} leaves face {f.id!r} unchained")
            faces.append(Face(f.id, word))
        else:
            faces.append(f)
    new_edge = Edge(c, m.tail(into), m.head(out_of))
    edges = []
    for x in m.edges:
        if x.id == into.edge:
            edges.append(new_edge)
        elif x.id != out_of.edge:
            edges.append(x)
    out = replace(
        m,
        vertices=tuple(x for x in m.vertices if x.id != v),
        edges=tuple(edges),
        faces=tuple(faces),
        next_id=k,
    )
    errs = validate(out)
    if errs:
        raise MoveError(f"merging at {v!r} gives an invalid complex: {errs[0]}")
    return out


def move_II_split(m: CellComplex, f: str, i: int, j: int) -> CellComplex:
    """Split face ``f`` with a new edge between cut points ``i`` and ``j``.

    Cut point ``p`` sits just before occurrence ``p``.  The new edge runs from
    the vertex at ``i`` to the vertex at ``j``; the face becomes
    ``~e + w[i:j]`` and ``e + w[j:i]`` (cyclic slices).  With ``i == j`` the
    first of these is a monogon.
    """
    if f not in m.face:
        raise MoveError(f"unknown face {f!r}")
    word = m.face[f].word
    n = len(word)
    if not (0 <= i < n and 0 <= j < n):
        raise MoveError(f"cut points ({i}, {j}) out of range for face {f!r} of length {n}")
    (e,), k = m.fresh_ids("e")
    (f2,), k = replace(m, next_id=k).fresh_ids("f")
    seg_ij = tuple(word[(i + t) % n] for t in range((j - i) % n))
    seg_ji = tuple(word[(j + t) % n] for t in range(n - len(seg_ij)))
    new_edge = Edge(e, m.tail(word[i]), m.tail(word[j]))
    faces = []
    for x in m.faces:
        if x.id == f:
            faces += [Face(f, (Occ(e, False),) + seg_ij), Face(f2, (Occ(e),) + seg_ji)]
        else:
            faces.append(x)
    return replace(m, edges=m.edges + (new_edge,), faces=tuple(faces), next_id=k)


def move_II_merge(m: CellComplex, e: str) -> CellComplex:
    """Delete interior edge ``e`` and splice the two faces on either side of it."""
    edge = _require_interior(m, e)
    occ = m.occurrences.get(e, [])
    if len(occ) != 2:
        raise MoveError(f"edge {e!r} does not occur twice")
    (fa, pa), (fb, pb) = occ
    if fa == fb:
        raise MoveError(f"both sides of edge {e!r} lie in face {m.faces[fa].id!r}")
    wa, wb = m.faces[fa].word, m.faces[fb].word
    rest_a = wa[pa + 1:] + wa[:pa]
    rest_b = wb[pb + 1:] + wb[:pb]
    merged = rest_a + rest_b
    if not merged:
        raise MoveError(f"removing edge {e!r} leaves an empty face")
    others = [x for x in m.edges if x.id != e]
    still = {x.src for x in others} | {x.dst for x in others}
    if edge.src not in still or edge.dst not in still:
        raise MoveError(f"removing edge {e!r} isolates a vertex")
    faces = []
    for k, x in enumerate(m.faces):
        if k == fa:
            faces.append(Face(x.id, merged))
        elif k != fb:
            faces.append(x)
    return replace(m, edges=tuple(others), faces=tuple(faces))


class Move(NamedTuple):
    kind: str  # "I_subdivide", "I_merge", "II_split", "II_merge"
    args: tuple

    def __str__(self) -> str:
        return f"{self.kind}({', '.join(map(str, self.args))})"


def _can_merge_vertex(m: CellComplex, v: str) -> bool:
    try:
        into, out_of = _merge_vertex_plan(m, v)
    except MoveError:
        return False
    for f in m.faces:
        if any(o.edge in (into.edge, out_of.edge) for o in f.word):
            if _pair_rewrite(f.word, into, out_of, "_") is None:
                return False
    return True


def _can_merge_edge(m: CellComplex, e: Edge) -> bool:
    occ = m.occurrences.get(e.id, [])
    if len(occ) != 2 or occ[0][0] == occ[1][0]:
        return False
    if len(m.faces[occ[0][0]].word) + len(m.faces[occ[1][0]].word) <= 2:
        return False
    others = [x for x in m.edges if x.id != e.id]
    still = {x.src for x in others} | {x.dst for x in others}
    return e.src in still and e.dst in still


def legal_moves(m: CellComplex) -> list[Move]:
    """Every currently applicable move, in a deterministic order."""
    moves = [Move("I_subdivide", (e.id,)) for e in m.interior_edges]
    moves += [Move("I_merge", (v.id,)) for v in m.vertices if v.is_internal and _can_merge_vertex(m, v.id)]
    for f in m.faces:
        n = len(f.word)
        moves += [Move("II_split", (f.id, i, j)) for i in range(n) for j in range(n)]
    moves += [Move("II_merge", (e.id,)) for e in m.interior_edges if _can_merge_edge(m, e)]
    return moves


def random_walk(m: CellComplex, steps: int, seed: int) -> tuple[CellComplex, list[Move]]:
    """Apply ``steps`` moves, each drawn uniformly from :func:`legal_moves`.

    The draw is ``numpy.random.Generator(PCG64(seed)).integers(len(moves))``
    per step, so a seed replays the same trace.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    trace = []
    for _ in range(steps):
        moves = legal_moves(m)
        move = moves[int(rng.integers(len(moves)))]
        m = apply_move(m, move)
        trace.append(move)
    return m, trace


def apply_move(m: CellComplex, move: Move) -> CellComplex:
    fn = {
        "I_subdivide": move_I_subdivide,
        "I_merge": move_I_merge,
        "II_split": move_II_split,
        "II_merge": move_II_merge,
    }[move.kind]
    return fn(m, *move.args)


# ------------------------------------------------------------ reorientation


def reverse_edge(m: CellComplex, e: str) -> CellComplex:
    """Reverse the orientation of interior edge ``e``; the surface is unchanged."""
    _require_interior(m, e)
    edges = tuple(replace(x, src=x.dst, dst=x.src) if x.id == e else x for x in m.edges)
    faces = tuple(Face(f.id, tuple(o.flipped() if o.edge == e else o for o in f.word)) for f in m.faces)
    return replace(m, edges=edges, faces=faces)


def rotate_face_word(m: CellComplex, f: str, k: int) -> CellComplex:
    """Start the word of face ``f`` ``k`` occurrences later."""
    if f not in m.face:
        raise MoveError(f"unknown face {f!r}")
    faces = []
    for x in m.faces:
        if x.id == f and x.word:
            s = k % len(x.word)
            x = Face(x.id, x.word[s:] + x.word[:s])
        faces.append(x)
    return replace(m, faces=tuple(faces))


def _flip_faces(faces, which) -> list[Face]:
    return [Face(f.id, _reversed_word(f.word)) if i in which else f for i, f in enumerate(faces)]


def reflect(m: CellComplex) -> CellComplex:
    """Mirror image: faces reversed, in and out circles exchanged at the same positions."""
    swap = {IN: OUT, OUT: IN, INTERNAL: INTERNAL, INTERIOR: INTERIOR}
    vs = tuple(replace(v, kind=swap[v.kind]) for v in m.vertices)
    es = tuple(replace(e, kind=swap[e.kind]) for e in m.edges)
    fs = tuple(Face(f.id, _reversed_word(f.word)) for f in m.faces)
    return replace(m, vertices=vs, edges=es, faces=fs, name=f"reflect({m.name})")


def rotate(m: CellComplex) -> CellComplex:
    """Half turn: in and out circles exchanged in reverse order, boundary edges reversed."""
    count = {IN: m.n_in, OUT: m.n_out}
    swap = {IN: OUT, OUT: IN}

    def moved(kind, pos):
        if kind in swap:
            return swap[kind], count[kind] - 1 - pos
        return kind, pos

    vs = tuple(replace(v, kind=moved(v.kind, v.pos)[0], pos=moved(v.kind, v.pos)[1]) for v in m.vertices)
    es = tuple(replace(e, kind=moved(e.kind, e.pos)[0], pos=moved(e.kind, e.pos)[1]) for e in m.edges)
    boundary = {e.id for e in m.edges if e.is_boundary}
    fs = tuple(Face(f.id, tuple(o.flipped() if o.edge in boundary else o for o in f.word)) for f in m.faces)
    return replace(m, vertices=vs, edges=es, faces=fs, name=f"rotate({m.name})")


def shrink_disk_tail(m: CellComplex, edge: str | None = None) -> CellComplex:
    """Remove a dangling interior edge together with its free end.

    The edge must occur as ``x ~x`` (or ``~x x``) consecutively in one face,
    with its far vertex internal and touching nothing else.  With ``edge``
    unset the first such edge is used.
    """
    degree = defaultdict(int)
    for e in m.edges:
        degree[e.src] += 1
        degree[e.dst] += 1
    for fi, f in enumerate(m.faces):
        n = len(f.word)
        if n <= 2:
            continue
        for p in range(n):
            o, nxt = f.word[p], f.word[(p + 1) % n]
            if nxt != o.flipped() or (edge is not None and o.edge != edge):
                continue
            e = m.edge[o.edge]
            far = m.head(o)
            if e.is_boundary or e.src == e.dst or degree[far] != 1 or not m.vertex[far].is_internal:
                continue
            word = tuple(f.word[(p + 2 + t) % n] for t in range(n - 2))
            faces = list(m.faces)
            faces[fi] = Face(f.id, word)
            return replace(
                m,
                vertices=tuple(v for v in m.vertices if v.id != far),
                edges=tuple(x for x in m.edges if x.id != e.id),
                faces=tuple(faces),
            )
    what = f"edge {edge!r}" if edge is not None else "any edge"
    raise MoveError(f"no dangling disk tail found for {what}")


# -------------------------------------------------------------------- gluing


def _face_components(m: CellComplex) -> list[int]:
    parent = list(range(len(m.faces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for places in m.occurrences.values():
        for (fa, _), (fb, _) in zip(places, places[1:]):
            ra, rb = find(fa), find(fb)
            if ra != rb:
                parent[ra] = rb
    return [find(i) for i in range(len(m.faces))]


def _rename_apart(m2: CellComplex, taken: set[str]) -> CellComplex:
    mapping = {}
    for cid in sorted(m2.ids()):
        new = cid
        while new in taken or new in mapping.values():
            new += "'"
        if new != cid:
            mapping[cid] = new
    if not mapping:
        return m2
    r = lambda x: mapping.get(x, x)  # noqa: E731
    vs = tuple(replace(v, id=r(v.id)) for v in m2.vertices)
    es = tuple(replace(e, id=r(e.id), src=r(e.src), dst=r(e.dst)) for e in m2.edges)
    fs = tuple(Face(r(f.id), tuple(Occ(r(o.edge), o.forward) for o in f.word)) for f in m2.faces)
    return replace(m2, vertices=vs, edges=es, faces=fs)


def glue(m1: CellComplex, m2: CellComplex) -> CellComplex:
    """Compose ``m2 o m1`` by identifying the k-th out circle of ``m1`` with the k-th in circle of ``m2``.

    Each identified pair becomes one interior edge and its two anchors merge
    into one internal vertex.  If a face component of either side is oriented
    against its partner it is reversed first; that never changes a colouring
    count since a reversed face word has the inverse product.
    """
    k = m1.n_out
    if k != m2.n_in:
        raise MoveError(f"cannot glue: {m1.n_out} out circles against {m2.n_in} in circles")
    if k == 0:
        raise MoveError("cannot glue along zero circles")
    m2 = _rename_apart(m2, m1.ids())
    outs, ins = m1.out_edges, m2.in_edges

    comp1, comp2 = _face_components(m1), _face_components(m2)
    dir1 = {o.edge: (fi, o.forward) for fi, f in enumerate(m1.faces) for o in f.word}
    dir2 = {o.edge: (fi, o.forward) for fi, f in enumerate(m2.faces) for o in f.word}
    links = defaultdict(list)
    for a, b in zip(outs, ins):
        fa, da = dir1[a.id]
        fb, db = dir2[b.id]
        ca, cb = (1, comp1[fa]), (2, comp2[fb])
        links[ca].append((cb, da == db))
        links[cb].append((ca, da == db))
    flip: dict[tuple[int, int], bool] = {}
    for start in sorted(links):
        if start in flip:
            continue
        flip[start] = False
        todo = deque([start])
        while todo:
            c = todo.popleft()
            for d, parity in links[c]:
                want = flip[c] ^ parity
                if d not in flip:
                    flip[d] = want
                    todo.append(d)
                elif flip[d] != want:
                    raise MoveError("cannot glue: the identification would make the surface non-orientable")
    faces1 = _flip_faces(m1.faces, {i for i, c in enumerate(comp1) if flip.get((1, c))})
    faces2 = _flip_faces(m2.faces, {i for i, c in enumerate(comp2) if flip.get((2, c))})

    vmerge = {b.src: a.src for a, b in zip(outs, ins)}
    emerge = {b.id: a.id for a, b in zip(outs, ins)}
    joined_anchor = set(vmerge.values())
    joined_edge = set(emerge.values())
    vs = [Vertex(v.id) if v.id in joined_anchor else v for v in m1.vertices]
    vs += [v for v in m2.vertices if v.id not in vmerge]
    es = [Edge(e.id, e.src, e.dst) if e.id in joined_edge else e for e in m1.edges]
    es += [
        replace(e, src=vmerge.get(e.src, e.src), dst=vmerge.get(e.dst, e.dst))
        for e in m2.edges
        if e.id not in emerge
    ]
    fs = faces1 + [Face(f.id, tuple(Occ(emerge.get(o.edge, o.edge), o.forward) for o in f.word)) for f in faces2]
    return CellComplex(
        tuple(vs), tuple(es), tuple(fs), name=f"glue({m1.name},{m2.name})", next_id=max(m1.next_id, m2.next_id)
    )


def disjoint_union(m1: CellComplex, m2: CellComplex) -> CellComplex:
    """Place ``m2`` to the right of ``m1``; its boundary positions shift past ``m1``'s."""
    m2 = _rename_apart(m2, m1.ids())
    shift = {IN: m1.n_in, OUT: m1.n_out}
    vs = m1.vertices + tuple(replace(v, pos=v.pos + shift[v.kind]) if v.kind in shift else v for v in m2.vertices)
    es = m1.edges + tuple(replace(e, pos=e.pos + shift[e.kind]) if e.kind in shift else e for e in m2.edges)
    return CellComplex(
        vs, es, m1.faces + m2.faces, name=f"union({m1.name},{m2.name})", next_id=max(m1.next_id, m2.next_id)
    )


# ------------------------------------------------------------- isomorphism


def _encode_from(m: CellComplex, seed_face: int, seed_pos: int, ignore_orientation: bool):
    vlabel: dict[str, int] = {}
    elabel: dict[str, int] = {}
    eflip: dict[str, bool] = {}
    visited: set[int] = set()
    codes = []
    todo = deque([(seed_face, seed_pos)])
    occ = m.occurrences
    while todo:
        fi, s = todo.popleft()
        if fi in visited:
            continue
        visited.add(fi)
        word = m.faces[fi].word
        n = len(word)
        code = []
        for t in range(n):
            p = (s + t) % n
            o = word[p]
            e = m.edge[o.edge]
            if o.edge not in elabel:
                elabel[o.edge] = len(elabel)
                eflip[o.edge] = ignore_orientation and not e.is_boundary and not o.forward
            tl = m.tail(o)
            if tl not in vlabel:
                vlabel[tl] = len(vlabel)
            code.append((elabel[o.edge], o.forward != eflip[o.edge]))
            for fj, q in occ[o.edge]:
                if fj not in visited:
                    todo.append((fj, q))
        codes.append(tuple(code))
    edges = [None] * len(elabel)
    for eid, lab in elabel.items():
        e = m.edge[eid]
        src, dst = (e.dst, e.src) if eflip[eid] else (e.src, e.dst)
        edges[lab] = (e.kind, -1 if e.pos is None else e.pos, vlabel[src], vlabel[dst])
    verts = [None] * len(vlabel)
    for vid, lab in vlabel.items():
        v = m.vertex[vid]
        verts[lab] = (v.kind, -1 if v.pos is None else v.pos)
    return (tuple(codes), tuple(edges), tuple(verts)), visited


def canonical_form(m: CellComplex, *, ignore_interior_orientation: bool = False) -> tuple:
    """A hashable form equal for two complexes exactly when they are isomorphic.

    Faces are traversed breadth first from every possible starting occurrence
    of each connected component and the least encoding is kept.  With
    ``ignore_interior_orientation`` the directions of interior edges are
    normalised away.
    """
    done: set[int] = set()
    parts = []
    for fi in range(len(m.faces)):
        if fi in done:
            continue
        _, comp = _encode_from(m, fi, 0, ignore_interior_orientation)
        done |= comp
        best = min(
            _encode_from(m, fj, p, ignore_interior_orientation)[0]
            for fj in sorted(comp)
            for p in range(len(m.faces[fj].word))
        )
        parts.append(best)
    in_faces = {m.tail(o) for f in m.faces for o in f.word}
    loose = sorted((v.kind, -1 if v.pos is None else v.pos) for v in m.vertices if v.id not in in_faces)
    return (tuple(sorted(parts)), tuple(loose))


def is_isomorphic(a: CellComplex, b: CellComplex, *, ignore_interior_orientation: bool = False) -> bool:
    if (len(a.vertices), len(a.edges), len(a.faces)) != (len(b.vertices), len(b.edges), len(b.faces)):
        return False
    return canonical_form(a, ignore_interior_orientation=ignore_interior_orientation) == canonical_form(
        b, ignore_interior_orientation=ignore_interior_orientation
    )


# ------------------------------------------------------------------ builtins


def _pants() -> CellComplex:
    return make_complex(
        [("vin", IN, 0), ("vo1", OUT, 0), ("vo2", OUT, 1)],
        [
            ("g", "vin", "vin", IN, 0),
            ("i", "vo1", "vo1", OUT, 0),
            ("h", "vo2", "vo2", OUT, 1),
            ("j2", "vin", "vo1"),
            ("j1", "vin", "vo2"),
        ],
        [("f0", "~g j2 i ~j2 j1 h ~j1")],
        name="pants",
    )


def _disk(kind: str) -> CellComplex:
    return make_complex(
        [("w", kind, 0), ("u", INTERNAL)],
        [("g", "w", "w", kind, 0), ("k", "w", "u")],
        [("f0", "g k ~k")],
        name=f"disk_{kind}",
    )


_BUILTINS = {
    "sphere_a": lambda: make_complex(
        [("v1",), ("v2",)], [("a", "v1", "v2")], [("f0", "a ~a")], name="sphere_a"
    ),
    "sphere_b": lambda: make_complex(
        [("w",), ("u1",), ("u2",)],
        [("c", "w", "w"), ("k1", "w", "u1"), ("k2", "w", "u2")],
        [("f0", "c k1 ~k1"), ("f1", "~c k2 ~k2")],
        name="sphere_b",
    ),
    "disk_in": lambda: _disk(IN),
    "disk_out": lambda: _disk(OUT),
    "cylinder": lambda: make_complex(
        [("vin", IN, 0), ("vout", OUT, 0)],
        [("g", "vin", "vin", IN, 0), ("h", "vout", "vout", OUT, 0), ("k", "vin", "vout")],
        [("f0", "g k ~h ~k")],
        name="cylinder",
    ),
    "torus": lambda: make_complex(
        [("w",)], [("a", "w", "w"), ("b", "w", "w")], [("f0", "a b ~a ~b")], name="torus"
    ),
    "pants": _pants,
    "pants_reflected": lambda: replace(reflect(_pants()), name="pants_reflected"),
    "punctured_torus_a": lambda: make_complex(
        [("x",), ("vo2", OUT, 0)],
        [("alpha", "x", "x"), ("j2", "x", "x"), ("j1", "x", "vo2"), ("h", "vo2", "vo2", OUT, 0)],
        [("f0", "~alpha j2 alpha ~j2 j1 h ~j1")],
        name="punctured_torus_a",
    ),
    "punctured_torus_b": lambda: make_complex(
        [("x",), ("vo1", OUT, 0)],
        [("alpha", "x", "x"), ("j1", "x", "x"), ("j2", "x", "vo1"), ("i", "vo1", "vo1", OUT, 0)],
        [("f0", "~alpha j2 i ~j2 j1 alpha ~j1")],
        name="punctured_torus_b",
    ),
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name: str) -> CellComplex:
    """One of the standard surfaces listed in ``BUILTIN_NAMES``."""
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin surface {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None

