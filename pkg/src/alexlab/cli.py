"""Command-line front end. Every subcommand prints one JSON document.

Exit codes: 0 success, 1 a verification-style check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .bigpoly import IntPoly, is_reciprocal
from .cyclores import (CycResSeq, divisor_closure, first_distinguishing_level, fried_pair,
                       fried_verify, reconstruct, sequence_from_record, weber_check)
from .errors import AlexlabError
from .knot import (SeifertMatrix, alexander_data, alexander_from_seifert, branched_cover_homology,
                   fox_formula_check, parse_braid, alexander_from_braid, table_knot, theorem_pipeline)
from .quotring import (TruncRingCtx, annihilator, annihilator_images, doubling_schedule,
                       ideal_equal, ideal_lattice, quotient_group, reduce, twist)

LEVELS_ENV = "ALEXLAB_LEVELS_MAX"


class UsageError(AlexlabError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _levels_cap() -> int:
    raw = os.environ.get(LEVELS_ENV, "12")
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"{LEVELS_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise UsageError(f"{LEVELS_ENV} must be >= 1")
    return cap


def _parse_levels(text: str | None) -> list[int]:
    cap = _levels_cap()
    if text is None:
        return divisor_closure(range(1, cap + 1))
    try:
        if "," in text:
            lv = sorted({int(x) for x in text.split(",") if x.strip()})
        else:
            lv = divisor_closure(range(1, int(text) + 1))
    except ValueError:
        raise UsageError(f"bad --levels value {text!r}") from None
    return [n for n in lv if n <= cap]


def _read_text(value: str) -> str:
    if value.startswith("@"):
        with open(value[1:], encoding="utf-8") as fh:
            return fh.read()
    return value


def _seifert(value: str) -> SeifertMatrix:
    try:
        rows = json.loads(_read_text(value))
    except json.JSONDecodeError as exc:
        raise UsageError(f"--seifert is not valid JSON: {exc.msg}") from None
    return SeifertMatrix(tuple(tuple(r) for r in rows))


def _poly(text: str) -> IntPoly:
    return IntPoly.parse(text)


def _knot_from_args(args):
    given = [x for x in (args.braid, args.seifert, args.knot) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --braid, --seifert, --knot")
    if args.knot is not None:
        return table_knot(args.knot)
    if args.seifert is not None:
        return alexander_from_seifert(_seifert(args.seifert))
    return alexander_from_braid(parse_braid(args.braid))


# -- subcommands --------------------------------------------------------------


def cmd_poly(args):
    data = _knot_from_args(args)
    rec = data.to_record()
    rec["delta_at_1"] = str(data.delta(1))
    rec["reciprocal"] = is_reciprocal(data.delta)
    return rec, 0


def cmd_cyclic_resultants(args):
    f = _poly(args.poly)
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    seq = CycResSeq.compute(f, args.max_n)
    rec = seq.to_record()
    rec["poly"] = f.to_record()
    rec["values"] = [str(v) for v in seq.values]
    return rec, 0


def cmd_branched_homology(args):
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    data = _knot_from_args(args)
    grp = branched_cover_homology(data, args.n)
    rec = grp.to_record()
    rec["n"] = args.n
    rec["order"] = None if grp.order is None else str(grp.order)
    return rec, 0


def cmd_weber_check(args):
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    rep = weber_check(_poly(args.poly), args.n)
    return rep.to_record(), 0 if rep.passed else 1


def cmd_fox_check(args):
    data = _knot_from_args(args)
    reports = [fox_formula_check(data, n) for n in range(1, args.max_n + 1)]
    ok = all(r.passed for r in reports)
    return {"knot": data.name, "checks": [r.to_record() for r in reports], "passed": ok}, 0 if ok else 1


def cmd_compare(args):
    levels = _parse_levels(args.levels)
    if args.modulus < 0:
        raise UsageError("--modulus must be >= 0")
    rep = theorem_pipeline(alexander_data(args.J), alexander_data(args.K), levels, args.modulus)
    return rep.to_record(), 0 if rep.consistent else 1


def cmd_fried_pair(args):
    F, G = fried_pair(args.p, args.q)
    rep = fried_verify(F, G, args.max_n)
    level, seen = first_distinguishing_level(F, G, args.distinguish_max)
    rec = {
        "p": args.p,
        "q": args.q,
        "F": F.to_record(),
        "G": G.to_record(),
        "fried": rep.to_record(),
        "distinguishing_level": level,
        "distinguish_max": args.distinguish_max,
    }
    if level is not None:
        gf, gg = seen[level]
        rec["quotient_F"] = gf.to_record()
        rec["quotient_G"] = gg.to_record()
    return rec, 0 if rep.agree else 1


def cmd_reconstruct(args):
    with open(args.seq_file, encoding="utf-8") as fh:
        try:
            seq = sequence_from_record(json.load(fh))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise UsageError(f"bad sequence file: {exc}") from None
    return reconstruct(seq, args.deg_max, args.height_max).to_record(), 0


def cmd_ring_ideal_equal(args):
    ctx = TruncRingCtx(args.n, args.m)
    I = ideal_lattice([reduce(_poly(args.f), ctx)], ctx)
    J = ideal_lattice([reduce(_poly(args.g), ctx)], ctx)
    if args.twist != 1:
        I = twist(I, args.twist)
    return {
        "ctx": {"n": ctx.n, "m": ctx.m},
        "twist": args.twist,
        "ideal_f": I.to_record(),
        "ideal_g": J.to_record(),
        "equal": ideal_equal(I, J),
        "finite_level_only": True,
    }, 0


def cmd_ring_annihilator(args):
    ctx = TruncRingCtx(args.n, args.m)
    x = reduce(_poly(args.f), ctx)
    ann = annihilator(x)
    return {
        "element": x.to_record(),
        "annihilator": ann.to_record(),
        "is_zero": ann.is_zero(),
        "quotient": quotient_group([x], ctx).to_record(),
    }, 0


def cmd_ring_ml_test(args):
    f = _poly(args.f)
    target = TruncRingCtx(args.target_n, args.target_m)
    schedule = doubling_schedule(target, args.n_max, args.m_max)
    steps = []
    prev = None
    stable = None
    for level, image in annihilator_images(f, target, schedule):
        steps.append({"n": level.n, "m": level.m, "image": image.to_record(), "is_zero": image.is_zero()})
        if prev is not None and image == prev:
            stable = image
            break
        prev = image
    rec = {
        "target": {"n": target.n, "m": target.m},
        "schedule": [{"n": c.n, "m": c.m} for c in schedule],
        "steps": steps,
        "stabilized": stable is not None,
        "stable_image": None if stable is None else stable.to_record(),
        "stable_image_zero": None if stable is None else stable.is_zero(),
        "finite_level_only": True,
    }
    return rec, 0 if stable is not None else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="alexlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def knot_flags(sp, braid=True):
        if braid:
            sp.add_argument("--braid")
        else:
            sp.set_defaults(braid=None)
        sp.add_argument("--seifert", help="JSON rows, or @path")
        sp.add_argument("--knot", help="bundled table name, e.g. 4_1")

    sp = sub.add_parser("poly", help="Alexander polynomial of a knot")
    knot_flags(sp)
    sp.set_defaults(func=cmd_poly)

    sp = sub.add_parser("cyclic-resultants", help="r_n(f) for n = 1..max-n")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.set_defaults(func=cmd_cyclic_resultants)

    sp = sub.add_parser("branched-homology", help="H_1 of the n-fold branched cover")
    knot_flags(sp, braid=False)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_branched_homology)

    sp = sub.add_parser("weber-check", help="quotient order against |r_n(f)|")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_weber_check)

    sp = sub.add_parser("fox-check", help="Fox formula check for n = 1..max-n")
    knot_flags(sp, braid=False)
    sp.add_argument("--max-n", type=int, default=10)
    sp.set_defaults(func=cmd_fox_check)

    sp = sub.add_parser("compare", help="compare two knots through their Alexander data")
    sp.add_argument("J", help="table name or braid word")
    sp.add_argument("K", help="table name or braid word")
    sp.add_argument("--levels", help="max level L (divisor closure of 1..L) or comma list")
    sp.add_argument("--modulus", type=int, default=0)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("fried-pair", help="Fried's pair: sequences and a distinguishing level")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--q", type=int, default=3)
    sp.add_argument("--max-n", type=int, default=60)
    sp.add_argument("--distinguish-max", type=int, default=36)
    sp.set_defaults(func=cmd_fried_pair)

    sp = sub.add_parser("reconstruct", help="bounded search for reciprocal polynomials")
    sp.add_argument("--seq-file", required=True)
    sp.add_argument("--deg-max", type=int, required=True)
    sp.add_argument("--height-max", type=int, required=True)
    sp.set_defaults(func=cmd_reconstruct)

    ring = sub.add_parser("ring", help="layer ring computations")
    rsub = ring.add_subparsers(dest="ring_command", required=True, parser_class=_Parser)

    sp = rsub.add_parser("ideal-equal")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--twist", type=int, default=1, help="apply t -> t^v to (f) first")
    sp.set_defaults(func=cmd_ring_ideal_equal)

    sp = rsub.add_parser("annihilator")
    sp.add_argument("--f", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, default=0)
    sp.set_defaults(func=cmd_ring_annihilator)

    sp = rsub.add_parser("ml-test", help="stable annihilator image under a doubling schedule")
    sp.add_argument("--f", required=True)
    sp.add_argument("--target-n", type=int, default=2)
    sp.add_argument("--target-m", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=32)
    sp.add_argument("--m-max", type=int, default=128)
    sp.set_defaults(func=cmd_ring_ml_test)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        rec, code = args.func(args)
    except (AlexlabError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"error: {type(exc).__name__}: {msg}", file=err)
        return 2
    out.write(json.dumps(rec, sort_keys=True, indent=2) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
