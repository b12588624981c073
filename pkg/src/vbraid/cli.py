"""Command-line interface: ``vbraid <command> ...`` (or ``python -m vbraid``)."""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys

from .braids import (
    BraidError,
    RepKind,
    parse_braid,
    rep_alphabet,
    rep_image,
    verify_relations,
)
from .endo import is_identity
from .invariants import class2_quotient
from .presentation import (
    Diagram,
    MarkovMove,
    Presentation,
    PresentationError,
    all_moves,
    apply_markov,
    diagram_group_M,
    generalized_alexander,
    layered_presentation,
    link_group,
    tietze_simplify,
    wirtinger,
)
from .words import conjugate_form, format_word, parse_expr

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2

KERNEL_BRAID = "(s2^-1 r1 s2 r3)^3"
KERNEL_WITNESS = "y2^{v3^-1} (y2^-1 y1^{v4} y2)^{v4^-1} y2^-{v3^-1}"


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=args.ascii))
    else:
        print(text)


def _rep(name: str) -> RepKind:
    try:
        return RepKind.parse(name)
    except BraidError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _x_names(text: str) -> str:
    return re.sub(r"\by(\d+)", r"x\1", text)


def _braid(args):
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    return parse_braid(args.braid if args.braid is not None else args.word, args.n)


def _invariant_text(report, ascii: bool) -> str:
    return report.format(ascii)


# commands -----------------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    report = verify_relations(args.rep, args.n)
    d = report.to_dict()
    lines = [f"{args.rep.value} on {args.n} strands"]
    for fam, counts in report.summary().items():
        lines.append(f"  {fam:<11} pass {counts['pass']:>3}  fail {counts['fail']:>3}")
    lines.append(f"  F1: {d['F1']}   F2: {d['F2']}")
    for c in report.checks:
        expected_fail = c.family == "F2" or (c.family == "F1" and args.rep is not RepKind.PSI_WELDED)
        if not c.passed and not expected_fail:
            lines.append(
                f"  FAIL {c.family}{list(c.indices)} at {c.witness}: {c.lhs_image}  !=  {c.rhs_image}"
            )
    lines.append("OK" if report.ok else "FAILED")
    _emit(args, d, "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_MATH


def cmd_image(args) -> int:
    braid = _braid(args)
    e = rep_image(args.rep, args.n, braid)
    alph = e.alphabet
    rename = False
    names = list(alph.names)
    if args.gen is not None:
        gen = args.gen
        if args.rep is RepKind.MTILDE and re.fullmatch(r"x\d+", gen):
            gen, rename = "y" + gen[1:], True
        if gen not in alph:
            raise UsageError(f"unknown generator {args.gen!r} for {args.rep.value}")
        names = [gen]
    show = _x_names if rename else (lambda s: s)
    payload = {show(g): show(format_word(e[g])) for g in names}
    text = "\n".join(f"{show(g)} -> {show(conjugate_form(e[g]))}" for g in names)
    _emit(args, payload, text)
    return EXIT_OK


def _load_diagram(path: str) -> Diagram:
    try:
        with open(path, encoding="utf-8") as fh:
            return Diagram.from_json(fh.read())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read diagram {path}: {exc}") from None


def _load_presentation(path: str) -> Presentation:
    try:
        with open(path, encoding="utf-8") as fh:
            return Presentation.load(fh.read())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read presentation {path}: {exc}") from None


def cmd_group(args) -> int:
    if (args.braid is None) == (args.diagram is None):
        raise UsageError("give exactly one of --braid or --diagram")
    if args.diagram is not None:
        diagram = _load_diagram(args.diagram)
        rep = args.rep or RepKind.SW
        if rep is RepKind.SW:
            p = generalized_alexander(diagram)
        elif rep is RepKind.PSI_WELDED:
            p = generalized_alexander(diagram, welded=True)
        elif rep is RepKind.M:
            p = diagram_group_M(diagram)
        elif rep is RepKind.A:
            p = wirtinger(diagram)
        else:
            raise UsageError(f"no diagram builder for {rep.value}")
    else:
        braid = _braid(args)
        rep = args.rep or RepKind.M
        if args.layered:
            if rep is not RepKind.M:
                raise UsageError("--layered is only defined for --rep M")
            p = layered_presentation(braid)
        else:
            p = link_group(rep, braid)
    if args.simplify:
        p = tietze_simplify(p)
        if p.budget_exhausted:
            print("warning: Tietze budget exhausted; presentation only partly simplified", file=sys.stderr)
    _emit(args, p.to_dict(), p.to_text(ascii=args.ascii))
    return EXIT_OK


def cmd_invariants(args) -> int:
    p = _load_presentation(args.presentation)
    if not args.no_simplify:
        p = tietze_simplify(p)
    report = class2_quotient(p)
    _emit(args, report.to_dict(), _invariant_text(report, args.ascii))
    return EXIT_OK


def _braid_invariants(rep: RepKind, braid):
    r = class2_quotient(tietze_simplify(link_group(rep, braid)))
    return r.abelianization, r.gamma2_over_gamma3


def cmd_markov(args) -> int:
    braid = _braid(args)
    rep = args.rep or RepKind.M
    if args.all == (args.moves is not None):
        raise UsageError("give exactly one of --moves or --all")
    if args.all:
        moves = all_moves(braid.n)
    else:
        try:
            moves = [MarkovMove.parse(m) for m in re.split(r"[;\s]+|,(?![^()]*\))", args.moves) if m.strip()]
        except PresentationError as exc:
            raise UsageError(str(exc)) from None
    before = _braid_invariants(rep, braid)
    rows, ok = [], True
    for mv in moves:
        try:
            moved = apply_markov(braid, mv)
        except BraidError as exc:
            raise UsageError(str(exc)) from None
        after = _braid_invariants(rep, moved)
        same = after == before
        ok &= same
        rows.append((mv, moved, after, same))
    fmt = lambda inv: f"{inv[0].format(args.ascii)} ; {inv[1].format(args.ascii)}"
    payload = {
        "rep": rep.value,
        "braid": str(braid),
        "n": braid.n,
        "before": {"abelianization": before[0].to_dict(), "gamma2_over_gamma3": before[1].to_dict()},
        "moves": [
            {
                "move": str(mv),
                "braid": str(moved),
                "n": moved.n,
                "abelianization": after[0].to_dict(),
                "gamma2_over_gamma3": after[1].to_dict(),
                "equal": same,
            }
            for mv, moved, after, same in rows
        ],
        "all_equal": ok,
    }
    lines = [f"{rep.value} closure of [{braid}] on {braid.n} strands: {fmt(before)}"]
    for mv, moved, after, same in rows:
        lines.append(f"  {str(mv):<16} {fmt(after):<40} {'equal' if same else 'DIFFERENT'}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MATH


def cmd_kernel_demo(args) -> int:
    n = 4
    beta = parse_braid(KERNEL_BRAID, n)
    verdicts = {k.value: is_identity(rep_image(k, n, beta)) for k in (RepKind.SW, RepKind.BD, RepKind.MTILDE)}
    mt = rep_image(RepKind.MTILDE, n, beta)
    expected_x1 = parse_expr(KERNEL_WITNESS, rep_alphabet(RepKind.MTILDE, n))
    witness_ok = mt["y1"] == expected_x1
    ok = verdicts["SW"] and verdicts["BD"] and not verdicts["MTILDE"] and witness_ok
    witness = _x_names(conjugate_form(mt["y1"]))
    payload = {
        "braid": KERNEL_BRAID,
        "n": n,
        "verdicts": {k: ("kernel" if v else "non-kernel") for k, v in verdicts.items()},
        "witness": {"generator": "x1", "image": _x_names(format_word(mt["y1"]))},
        "witness_matches": witness_ok,
        "ok": ok,
    }
    lines = [f"beta = {KERNEL_BRAID} in VB_{n}"]
    for k, v in verdicts.items():
        lines.append(f"  {k:<7} {'identity (beta in kernel)' if v else 'not the identity'}")
    lines.append(f"  witness: x1 -> {witness}")
    lines.append("OK" if ok else "MISMATCH")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MATH


# parser ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--ascii", action="store_true", help="ASCII-only output")

    parser = argparse.ArgumentParser(prog="vbraid", description="Virtual braid representations and link-group invariants.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the defining relations under a representation")
    p.add_argument("--rep", type=_rep, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("image", parents=[common], help="generator images of a braid word")
    p.add_argument("--rep", type=_rep, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--gen")
    p.set_defaults(func=cmd_image, braid=None)

    p = sub.add_parser("group", parents=[common], help="link-group presentation from a braid or a diagram")
    p.add_argument("--rep", type=_rep)
    p.add_argument("--braid")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--diagram")
    p.add_argument("--layered", action="store_true")
    p.add_argument("--simplify", action="store_true")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("invariants", parents=[common], help="abelianization and gamma2/gamma3 of a presentation file")
    p.add_argument("--presentation", required=True)
    p.add_argument("--no-simplify", action="store_true", help="skip Tietze simplification")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("markov", parents=[common], help="compare invariants across Markov moves")
    p.add_argument("--rep", type=_rep)
    p.add_argument("--braid", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--moves")
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_markov)

    p = sub.add_parser("kernel-demo", parents=[common], help="a braid killed by two representations but not a third")
    p.set_defaults(func=cmd_kernel_demo)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, BraidError, PresentationError, ValueError, KeyError) as exc:
        print(f"vbraid {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
