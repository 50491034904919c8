"""Command-line front end.

Exit codes: 0 success, 1 invalid surface or arity mismatch, 2 parse error,
3 a property or identity failed.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .ccs import (
    BUILTIN_NAMES,
    CellComplex,
    ComplexError,
    MoveError,
    apply_move,
    builtin,
    euler_characteristic,
    genus,
    glue,
    legal_moves,
    validate,
)
from .colouring import BoundaryColouring
from .dcp import ALL_CHECKS
from .group import (
    CayleyParseError,
    Group,
    GroupError,
    direct_product,
    from_cayley_table,
    make_cyclic,
    make_dihedral,
    make_quaternion8,
    make_symmetric,
)
from .surface_io import SurfaceParseError, dump_surface, parse_surface
from .tqft import dump_matrix, invariant_matrix, invariant_scalar

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_PROPERTY = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


# ----------------------------------------------------------------- groups

_ATOM = re.compile(r"(cyclic|dihedral|symmetric):(\d+)")


def _parse_group(spec: str, pos: int) -> tuple[Group, int]:
    m = _ATOM.match(spec, pos)
    if m:
        kind, n = m.group(1), int(m.group(2))
        make = {"cyclic": make_cyclic, "dihedral": make_dihedral, "symmetric": make_symmetric}[kind]
        try:
            return make(n), m.end()
        except (ValueError, GroupError) as exc:
            raise CliError(EXIT_PARSE, f"bad group spec {spec!r}: {exc}") from None
    if spec.startswith("quaternion8", pos):
        return make_quaternion8(), pos + len("quaternion8")
    if spec.startswith("product:", pos):
        left, pos = _parse_group(spec, pos + len("product:"))
        if not spec.startswith("x", pos):
            raise CliError(EXIT_PARSE, f"bad group spec {spec!r}: expected 'x' at offset {pos}")
        right, pos = _parse_group(spec, pos + 1)
        return direct_product(left, right), pos
    if spec.startswith("file:", pos):
        path = spec[pos + len("file:"):]
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise CliError(EXIT_PARSE, f"cannot read group file: {exc}") from None
        try:
            return from_cayley_table(text, name=Path(path).stem), len(spec)
        except CayleyParseError as exc:
            raise CliError(EXIT_PARSE, f"{path}: {exc}") from None
        except GroupError as exc:
            raise CliError(EXIT_INVALID, f"{path}: {exc}") from None
    raise CliError(EXIT_PARSE, f"bad group spec {spec!r} at offset {pos}")


def parse_group_spec(spec: str) -> Group:
    """``cyclic:N``, ``dihedral:N``, ``symmetric:N``, ``quaternion8``,
    ``product:AxB`` (nestable) or ``file:PATH``."""
    g, end = _parse_group(spec, 0)
    if end != len(spec):
        raise CliError(EXIT_PARSE, f"bad group spec {spec!r}: trailing {spec[end:]!r}")
    return g


# --------------------------------------------------------------- surfaces


def _read_surface(path: str) -> CellComplex:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read surface file: {exc}") from None
    try:
        return parse_surface(text)
    except SurfaceParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None
    except ComplexError as exc:
        raise CliError(EXIT_INVALID, f"{path}: {exc}") from None


def _builtin(name: str) -> CellComplex:
    if name not in BUILTIN_NAMES:
        raise CliError(EXIT_INVALID, f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    return builtin(name)


def _checked(m: CellComplex, label: str) -> CellComplex:
    problems = validate(m)
    if problems:
        raise CliError(EXIT_INVALID, f"{label} is not a valid surface:\n  " + "\n  ".join(problems))
    return m


def _load(args) -> CellComplex:
    if args.surface:
        return _checked(_read_surface(args.surface), args.surface)
    return _builtin(args.builtin)


def _operand(ref: str) -> CellComplex:
    """A glue operand: a surface file, or ``builtin:NAME``."""
    if ref.startswith("builtin:"):
        return _builtin(ref[len("builtin:"):])
    return _checked(_read_surface(ref), ref)


def _elements(text: str | None, g: Group, flag: str) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        elems = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise CliError(EXIT_PARSE, f"{flag}: expected comma-separated element indices, got {text!r}") from None
    for x in elems:
        if not 0 <= x < g.order:
            raise CliError(EXIT_INVALID, f"{flag}: {x} is not an element of {g.name} (order {g.order})")
    return elems


def _write(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _names(g: Group, elems) -> str:
    return "(" + ", ".join(g.element_name(x) for x in elems) + ")"


# --------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    m = _read_surface(args.file)
    problems = validate(m)
    for p in problems:
        print(p)
    if problems:
        return EXIT_INVALID
    print(
        f"ok {m.name or args.file}: V={len(m.vertices)} E={len(m.edges)} F={len(m.faces)} "
        f"chi={euler_characteristic(m)} genus={genus(m)} in={m.n_in} out={m.n_out}"
    )
    return EXIT_OK


def cmd_invariant(args) -> int:
    g = parse_group_spec(args.group)
    m = _load(args)
    bc = BoundaryColouring(_elements(args.ins, g, "--in"), _elements(args.outs, g, "--out"))
    if (len(bc.in_elems), len(bc.out_elems)) != (m.n_in, m.n_out):
        raise CliError(
            EXIT_INVALID,
            f"surface has {m.n_in} in / {m.n_out} out circles, got {len(bc.in_elems)} / {len(bc.out_elems)} elements",
        )
    val = invariant_scalar(g, m, bc)
    if args.names:
        print(f"in={_names(g, bc.in_elems)} out={_names(g, bc.out_elems)}")
    print(f"count={val.count} half_exponent={val.half_exponent} value≈{val.decimal(12)}")
    return EXIT_OK


def cmd_matrix(args) -> int:
    g = parse_group_spec(args.group)
    z = invariant_matrix(g, _load(args))
    text = dump_matrix(z)
    if args.names:
        rows = np.ndindex(*([g.order] * z.n_out))
        cols = np.ndindex(*([g.order] * z.n_in))
        text += "".join(f"# row {r}: out={_names(g, t)}\n" for r, t in enumerate(rows))
        text += "".join(f"# col {c}: in={_names(g, t)}\n" for c, t in enumerate(cols))
    _write(text, args.output)
    return EXIT_OK


def cmd_check_moves(args) -> int:
    g = parse_group_spec(args.group)
    m = _builtin(args.builtin)
    ref = invariant_matrix(g, m).reduced()
    rng = np.random.Generator(np.random.PCG64(args.seed))
    print(f"# {args.builtin} over {g.name}, seed={args.seed}, steps={args.steps}")
    for step in range(1, args.steps + 1):
        moves = legal_moves(m)
        move = moves[int(rng.integers(len(moves)))]
        m = apply_move(m, move)
        problems = validate(m)
        same = not problems and invariant_matrix(g, m).reduced() == ref
        print(f"{step:4d} {move} V={len(m.vertices)} E={len(m.edges)} F={len(m.faces)} {'ok' if same else 'MISMATCH'}")
        if not same:
            for p in problems:
                print(f"     {p}")
            return EXIT_PROPERTY
    return EXIT_OK


@dataclass
class RunReport:
    """One row per check; the exit status follows the worst row."""

    rows: list[tuple[str, str, str, float]] = field(default_factory=list)

    def add(self, name: str, status: str, detail: str, seconds: float) -> None:
        self.rows.append((name, status, detail, seconds))

    @property
    def failed(self) -> bool:
        return any(status == "fail" for _, status, _, _ in self.rows)

    def render(self) -> str:
        width = max([len(r[0]) for r in self.rows] + [5])
        out = [f"{'check':<{width}}  {'status':<7}  {'ms':>9}  detail"]
        for name, status, detail, secs in self.rows:
            out.append(f"{name:<{width}}  {status:<7}  {secs * 1000:9.1f}  {detail}")
        return "\n".join(out) + "\n"


def cmd_identities(args) -> int:
    g = parse_group_spec(args.group)
    report = RunReport()
    for check in ALL_CHECKS:
        t0 = time.perf_counter()
        res = check(g)
        report.add(res.name, res.status, res.describe(), time.perf_counter() - t0)
    print(f"# identity suite over {g.name} (order {g.order})")
    sys.stdout.write(report.render())
    return EXIT_PROPERTY if report.failed else EXIT_OK


def cmd_glue(args) -> int:
    a, b = _operand(args.a), _operand(args.b)
    try:
        m = glue(a, b)
    except MoveError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from None
    _checked(m, "glued surface")
    _write(dump_surface(m), args.output)
    return EXIT_OK


def cmd_builtin(args) -> int:
    _write(dump_surface(_builtin(args.name)), args.output)
    return EXIT_OK


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ccs-tqft", description="Exact finite-group invariants of cut cellular surfaces.")
    p.add_argument("--names", action="store_true", help="also print element names where the group has them")
    sub = p.add_subparsers(dest="command", required=True)

    def source(sp):
        grp = sp.add_mutually_exclusive_group(required=True)
        grp.add_argument("--surface", metavar="FILE")
        grp.add_argument("--builtin", metavar="NAME")
        sp.add_argument("--group", required=True, metavar="SPEC")

    sp = sub.add_parser("validate", help="parse and validate a surface file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("invariant", help="count colourings for one boundary colouring")
    source(sp)
    sp.add_argument("--in", dest="ins", metavar="LIST", help="comma-separated in-circle elements")
    sp.add_argument("--out", dest="outs", metavar="LIST", help="comma-separated out-circle elements")
    sp.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("matrix", help="dump the full invariant matrix")
    source(sp)
    sp.add_argument("-o", "--output", metavar="FILE")
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("check-moves", help="random move walk, recomputing the matrix after each move")
    sp.add_argument("--builtin", required=True, metavar="NAME")
    sp.add_argument("--group", required=True, metavar="SPEC")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--steps", type=int, default=50)
    sp.set_defaults(func=cmd_check_moves)

    sp = sub.add_parser("identities", help="run the D/C/P identity suite")
    sp.add_argument("--group", required=True, metavar="SPEC")
    sp.set_defaults(func=cmd_identities)

    sp = sub.add_parser("glue", help="glue B after A (files, or builtin:NAME)")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("-o", "--output", metavar="FILE")
    sp.set_defaults(func=cmd_glue)

    sp = sub.add_parser("builtin", help="write a builtin surface")
    sp.add_argument("name")
    sp.add_argument("-o", "--output", metavar="FILE")
    sp.set_defaults(func=cmd_builtin)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors are parse errors
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
