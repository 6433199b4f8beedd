"""Command-line entry point ``gbl``.

Data goes to stdout, errors to stderr.  Exit codes: 0 ok, 1 a verification
check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import difflib
import json
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .boundary import build_ground_space, enumerate_lagrangians, lagrangian_by_key
from .braid import BraidGenerator, braid_squared, pure_braid_image
from .charge import CurveLabel, charge_projector, measure
from .circuit import Circuit, run
from .errors import GapboundError
from .gates import GATE_NAMES, compile_gate
from .serialize import (
    SCHEMA,
    gate_json,
    gate_pretty,
    operator_json,
    pretty_matrix,
    space_from_json,
    space_json,
    theory_json,
)
from .theory import AnyonLabel, build_theory, verify_modular_relations
from .verify import CHECKS, run_checks
from .wilson import checked, loop, tunnel


class UsageError(Exception):
    pass


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _space(args):
    if getattr(args, "space", None):
        with open(args.space) as fh:
            return space_from_json(json.load(fh))
    t = build_theory(args.n)
    keys = [k.strip() for k in args.boundaries.split(",") if k.strip()]
    return build_ground_space([lagrangian_by_key(t, k) for k in keys])


def _anyon(text: str, n: int) -> AnyonLabel:
    try:
        a1, a2 = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"anyon must be 'a1,a2', got {text!r}") from None
    return AnyonLabel(a1, a2, n)


def _basis_note(space) -> str:
    labels = ["(" + ",".join(str(a) for a in lab) + ")" for lab in space.basis]
    return "basis (lexicographic in the duals of a_1..a_(n-1)): " + " ".join(labels)


def _emit_operator(op, fmt: str) -> None:
    if fmt == "json":
        _dump(operator_json(op))
    else:
        print(f"{op.provenance} on {op.space.describe()} (N={op.space.theory.n})")
        print(_basis_note(op.space))
        print(pretty_matrix(op.entries))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_theory(args) -> int:
    t = build_theory(args.n)
    if args.format == "json":
        out = theory_json(t)
        out["modular_checks"] = verify_modular_relations(t).checks
        _dump(out)
    else:
        labels = [str(a) for a in t.labels]
        print(f"D(Z_{t.n}), D = {t.global_dimension}, labels: {' '.join(labels)}")
        print("S (unnormalized):")
        print(pretty_matrix(t.S))
        print("T diagonal: " + " ".join(t.T[i, i].pretty() for i in range(len(labels))))
    return 0


def cmd_boundary_list(args) -> int:
    algebras = enumerate_lagrangians(build_theory(args.n))
    if args.format == "json":
        _dump(
            {
                "schema": SCHEMA,
                "kind": "boundaries",
                "N": args.n,
                "boundaries": [
                    {"key": a.key, "name": a.name, "condensed": [list(x.as_pair()) for x in a.sorted_labels]}
                    for a in algebras
                ],
            }
        )
    else:
        for a in algebras:
            print(f"{a.key}\t{a.name}")
    return 0


def cmd_space(args) -> int:
    sp = _space(args)
    if args.format == "json":
        _dump(space_json(sp))
    else:
        print(f"{sp.describe()} in D(Z_{sp.theory.n}): dim {sp.dim}")
        print(_basis_note(sp))
    return 0


def cmd_op(args) -> int:
    sp = _space(args)
    n = sp.theory.n
    kind = args.op_kind
    if kind == "tunnel":
        op = checked(tunnel(sp, _anyon(args.anyon, n), args.from_hole, args.to_hole))
    elif kind == "loop":
        op = loop(sp, _anyon(args.anyon, n), args.hole)
    elif kind == "braid":
        if args.word:
            word = [(BraidGenerator(*w["pair"]), int(w.get("exp", 1))) for w in json.loads(args.word)]
            op = pure_braid_image(sp, word)
        else:
            op = braid_squared(sp, BraidGenerator(*_pair(args.pair)))
    else:
        meas = charge_projector(sp, args.charge, CurveLabel.parse(args.curve))
        if args.measure is not None:
            return _measure_log(meas, args)
        op = meas.complement if kind == "tcm-complement" else meas.projector
    _emit_operator(op, args.format)
    return 0


def _pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"pair must be 'i,j', got {text!r}") from None
    return i, j


def _measure_log(meas, args) -> int:
    """One JSON line per shot: {seed, shot, outcome, prob}."""
    amps = [complex(x) for x in args.measure.split(",")]
    state = np.array(amps, dtype=complex)
    state = state / np.linalg.norm(state)
    children = np.random.SeedSequence(args.seed).spawn(args.shots)
    for k, child in enumerate(children):
        outcome, _, probs = measure(state, meas, rng=np.random.default_rng(child))
        line = {"seed": args.seed, "shot": k, "outcome": outcome, "prob": probs[outcome]}
        sys.stdout.write(json.dumps(line, sort_keys=True) + "\n")
    return 0


def cmd_gate_emit(args) -> int:
    g = compile_gate(args.name)
    if args.format == "json":
        _dump(gate_json(g))
    else:
        print(gate_pretty(g))
    return 0


def cmd_circuit_run(args) -> int:
    circ = Circuit.load(args.file)
    inp = None
    if args.input:
        inp = [int(x) for x in args.input.split(",")]
    rec = run(circ, inp, shots=args.shots, seed=args.seed, exact=args.exact, emit_state=args.emit_state)
    sys.stdout.write(rec.dumps() + "\n")
    return 0


def cmd_verify(args) -> int:
    report = run_checks(args.scope)
    if args.format == "json":
        _dump(report.to_json())
    else:
        for c in report.checks:
            status = "PASS" if c.passed else "FAIL"
            print(f"{status} {c.id}: {c.anchor}")
            print(f"     expected: {c.expected}")
            print(f"     actual:   {c.actual}")
    return 0 if report.ok else 1


_EMIT_KINDS = ("theory", "boundary", "space", "operator", "gate")


def cmd_emit(args) -> int:
    sel = args.selector
    if sel not in _EMIT_KINDS:
        hint = difflib.get_close_matches(sel, _EMIT_KINDS, n=1)
        msg = f"unknown selector {sel!r}" + (f"; did you mean {hint[0]!r}?" if hint else "")
        raise UsageError(msg + f" (choose from {', '.join(_EMIT_KINDS)})")
    if sel == "theory":
        return cmd_theory(args)
    if sel == "boundary":
        return cmd_boundary_list(args)
    if sel == "space":
        return cmd_space(args)
    if sel == "gate":
        if not args.name:
            raise UsageError("emit gate needs a gate name")
        name = args.name
        if name not in GATE_NAMES:
            hint = difflib.get_close_matches(name, GATE_NAMES, n=1)
            raise UsageError(f"unknown gate {name!r}" + (f"; did you mean {hint[0]!r}?" if hint else ""))
        return cmd_gate_emit(args)
    raise UsageError("emit operator: use `gbl op tunnel|loop|braid|tcm ...`")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_space_flags(p: argparse.ArgumentParser, default_boundaries: str = "e,e") -> None:
    p.add_argument("--n", type=int, default=3, help="modulus N of D(Z_N)")
    p.add_argument("--boundaries", default=default_boundaries, help="comma list of boundary keys or names")
    p.add_argument("--space", help="ground-space JSON file (overrides --n/--boundaries)")


def _add_format(p: argparse.ArgumentParser, default: str = "json") -> None:
    p.add_argument("--format", choices=["json", "pretty"], default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gbl", description="Gapped-boundary qudit operators for D(Z_N).")
    parser.add_argument("--version", action="version", version=f"gbl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("theory", help="modular data of D(Z_N)")
    p.add_argument("--n", type=int, default=3)
    _add_format(p, "pretty")
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("boundary", help="gapped boundary types")
    bsub = p.add_subparsers(dest="boundary_cmd", required=True)
    bl = bsub.add_parser("list", help="enumerate Lagrangian subgroups")
    bl.add_argument("--n", type=int, default=3)
    _add_format(bl, "pretty")
    bl.set_defaults(func=cmd_boundary_list)

    p = sub.add_parser("space", help="ground space of boundary holes")
    _add_space_flags(p)
    _add_format(p)
    p.set_defaults(func=cmd_space)

    p = sub.add_parser("op", help="operator matrices")
    osub = p.add_subparsers(dest="op_kind", required=True)
    t = osub.add_parser("tunnel")
    _add_space_flags(t)
    t.add_argument("--anyon", required=True, help="a1,a2")
    t.add_argument("--from", dest="from_hole", type=int, required=True)
    t.add_argument("--to", dest="to_hole", type=int, required=True)
    l = osub.add_parser("loop")
    _add_space_flags(l)
    l.add_argument("--anyon", required=True)
    l.add_argument("--hole", type=int, required=True)
    b = osub.add_parser("braid")
    _add_space_flags(b, "e,e,m,m")
    b.add_argument("--pair", default="2,3", help="i,j")
    b.add_argument("--word", help='JSON list like [{"pair":[2,3],"exp":1}]')
    for name in ("tcm", "tcm-complement"):
        c = osub.add_parser(name)
        _add_space_flags(c)
        c.add_argument("--charge", type=int, required=True)
        c.add_argument("--curve", required=True, help="arc:i,j or loop:i")
        c.add_argument("--measure", help="comma list of amplitudes; emits JSON lines of outcomes")
        c.add_argument("--shots", type=int, default=1)
        c.add_argument("--seed", type=int, default=0)
    for q in (t, l, b, *[osub.choices[k] for k in ("tcm", "tcm-complement")]):
        _add_format(q)
    p.set_defaults(func=cmd_op)

    p = sub.add_parser("gate", help="compiled gates")
    gsub = p.add_subparsers(dest="gate_cmd", required=True)
    ge = gsub.add_parser("emit")
    ge.add_argument("name", choices=GATE_NAMES)
    _add_format(ge)
    ge.set_defaults(func=cmd_gate_emit)

    p = sub.add_parser("circuit", help="circuit simulation")
    csub = p.add_subparsers(dest="circuit_cmd", required=True)
    cr = csub.add_parser("run")
    cr.add_argument("file")
    cr.add_argument("--input", help="comma list of data-register labels")
    cr.add_argument("--shots", type=int, default=1)
    cr.add_argument("--seed", type=int, default=0)
    cr.add_argument("--exact", action="store_true")
    cr.add_argument("--emit-state", action="store_true")
    cr.set_defaults(func=cmd_circuit_run)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("scope", nargs="?", default="all", choices=["all", *CHECKS])
    _add_format(p, "pretty")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("emit", help="serialize theory | boundary | space | gate")
    p.add_argument("selector")
    p.add_argument("name", nargs="?")
    _add_space_flags(p)
    _add_format(p)
    p.set_defaults(func=cmd_emit)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gbl: error: {exc}", file=sys.stderr)
        return 2
    except (GapboundError, OSError, json.JSONDecodeError) as exc:
        print(f"gbl: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
