"""Text format for cell complexes.

One declaration per line, ``#`` starts a comment::

    surface torus
    vertex w internal
    edge a w w interior
    edge b w w interior
    face f0 : a b ~a ~b

Vertices are ``internal``, ``in <pos>`` or ``out <pos>`` (the anchor of that
circle); edges are ``interior``, ``in <pos>`` or ``out <pos>``.
"""

from __future__ import annotations

from .ccs import IN, INTERIOR, INTERNAL, OUT, CellComplex, ComplexError, Edge, Face, Occ, Vertex

__all__ = ["SurfaceParseError", "parse_surface", "dump_surface"]


class SurfaceParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _kind(tokens, lineno, plain):
    if tokens == [plain]:
        return plain, None
    if len(tokens) == 2 and tokens[0] in (IN, OUT):
        try:
            pos = int(tokens[1])
        except ValueError:
            raise SurfaceParseError(lineno, f"bad position {tokens[1]!r}") from None
        if pos < 0:
            raise SurfaceParseError(lineno, f"negative position {pos}")
        return tokens[0], pos
    raise SurfaceParseError(lineno, f"expected '{plain}', 'in <pos>' or 'out <pos>', got {' '.join(tokens)!r}")


def parse_surface(text: str) -> CellComplex:
    """Parse the surface format.

    Syntax errors, duplicate ids and references to undeclared cells raise
    :class:`SurfaceParseError`.  Two circles claiming the same boundary
    position raise :class:`ComplexError`, the same error validation gives.
    """
    name = ""
    vertices: list[Vertex] = []
    edges: list[Edge] = []
    faces: list[tuple[int, str, list[str]]] = []
    ids: set[str] = set()
    positions: dict[tuple[str, str, int], str] = {}

    def claim(cid, lineno):
        if cid in ids:
            raise SurfaceParseError(lineno, f"duplicate id {cid!r}")
        if cid.startswith("~") or ":" in cid:
            raise SurfaceParseError(lineno, f"bad id {cid!r}")
        ids.add(cid)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0]
        if head == "surface":
            if len(tok) != 2:
                raise SurfaceParseError(lineno, "expected 'surface <name>'")
            name = tok[1]
        elif head == "vertex":
            if len(tok) < 3:
                raise SurfaceParseError(lineno, "expected 'vertex <id> <kind>'")
            claim(tok[1], lineno)
            kind, pos = _kind(tok[2:], lineno, INTERNAL)
            if pos is not None:
                key = ("vertex", kind, pos)
                if key in positions:
                    raise ComplexError(f"position: {kind} position {pos} anchored by {positions[key]!r} and {tok[1]!r}")
                positions[key] = tok[1]
            vertices.append(Vertex(tok[1], kind, pos))
        elif head == "edge":
            if len(tok) < 5:
                raise SurfaceParseError(lineno, "expected 'edge <id> <src> <dst> <kind>'")
            claim(tok[1], lineno)
            kind, pos = _kind(tok[4:], lineno, INTERIOR)
            if pos is not None:
                key = ("edge", kind, pos)
                if key in positions:
                    raise ComplexError(f"position: {kind} position {pos} used by {positions[key]!r} and {tok[1]!r}")
                positions[key] = tok[1]
            edges.append(Edge(tok[1], tok[2], tok[3], kind, pos))
        elif head == "face":
            if len(tok) < 3 or tok[2] != ":":
                raise SurfaceParseError(lineno, "expected 'face <id> : <occurrences>'")
            claim(tok[1], lineno)
            faces.append((lineno, tok[1], tok[3:]))
        else:
            raise SurfaceParseError(lineno, f"unknown declaration {head!r}")

    vids = {v.id for v in vertices}
    for e in edges:
        for end in (e.src, e.dst):
            if end not in vids:
                raise SurfaceParseError(0, f"edge {e.id!r} references undeclared vertex {end!r}")
    eids = {e.id for e in edges}
    built = []
    for lineno, fid, occs in faces:
        word = []
        for t in occs:
            eid, fwd = (t[1:], False) if t.startswith("~") else (t, True)
            if eid not in eids:
                raise SurfaceParseError(lineno, f"face {fid!r} references undeclared edge {eid!r}")
            word.append(Occ(eid, fwd))
        built.append(Face(fid, tuple(word)))
    return CellComplex(tuple(vertices), tuple(edges), tuple(built), name=name)


def dump_surface(m: CellComplex) -> str:
    def kind(k, pos, plain):
        return plain if k in (INTERNAL, INTERIOR) else f"{k} {pos}"

    name = "_".join((m.name or "unnamed").split())
    lines = [f"surface {name}"]
    lines += [f"vertex {v.id} {kind(v.kind, v.pos, INTERNAL)}" for v in m.vertices]
    lines += [f"edge {e.id} {e.src} {e.dst} {kind(e.kind, e.pos, INTERIOR)}" for e in m.edges]
    lines += [f"face {f.id} : {' '.join(str(o) for o in f.word)}" for f in m.faces]
    return "\n".join(lines) + "\n"
