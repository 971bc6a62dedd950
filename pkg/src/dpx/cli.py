"""``dpx`` command line.

Exit codes: 0 success, 1 failed check or computation error, 2 usage error,
3 capacity exceeded, 4 point configuration not general.

CSV columns
    curves   a,b1..br
    h0       class,h0
    hilbert  t,value            (--polynomial: power,num,den)
    orbit    a,b1..br
    betti    i,j,value          (--i/--class: i,class,value)
    points   index,x,y,z
    verify-paper  section,r,name,expected,computed,passed
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction

from .errors import CapacityError, DpxError, GenericityError

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_GENERICITY = 4

log = logging.getLogger("dpx")


def _rational(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _emit(args, text: str, obj, rows: list[list] | None = None) -> None:
    if args.format == "json":
        out = json.dumps(obj, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows or [])
        out = buf.getvalue()
    else:
        out = text if text.endswith("\n") else text + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _class(args):
    from .lattice import parse_class

    return parse_class(args.cls, args.r)


def _class_rows(classes) -> list[list]:
    if not classes:
        return []
    r = classes[0].r
    return [["a"] + [f"b{i}" for i in range(1, r + 1)]] + [list(c.coords) for c in classes]


# commands --------------------------------------------------------------------

def cmd_curves(args) -> int:
    from .curves import conics, cox_generators, minus_one_curves, roots, twisted_cubics
    from .lattice import Surface

    s = Surface(args.r)
    if args.kind == "generator":
        classes = [c for c, _ in cox_generators(s)]
    else:
        fn = {"minus-one": minus_one_curves, "root": roots, "conic": conics, "cubic": twisted_cubics}[args.kind]
        classes = list(fn(s))
    if args.count:
        _emit(args, str(len(classes)), {"r": args.r, "kind": args.kind, "count": len(classes)},
              [["count"], [len(classes)]])
        return 0
    text = "\n".join(str(c) for c in classes) + f"\ncount: {len(classes)}"
    obj = {"r": args.r, "kind": args.kind, "count": len(classes), "classes": [c.to_json() for c in classes]}
    _emit(args, text, obj, _class_rows(classes))
    return 0


def cmd_h0(args) -> int:
    from .cohomology import h0_with_trace

    d = _class(args)
    value, trace = h0_with_trace(d)
    text = str(value)
    obj = {"class": d.to_json(), "h0": value}
    if args.trace:
        lines = [f"{x} - {e} (D.E = {x.dot(e)})" for x, e in trace.steps]
        lines.append(f"terminal {trace.terminal}: {trace.terminal_kind}")
        text = "\n".join(lines + [f"h0 = {value}"])
        obj["trace"] = {
            "steps": [{"class": x.to_json(), "curve": e.to_json()} for x, e in trace.steps],
            "terminal": trace.terminal.to_json(),
            "terminal_kind": trace.terminal_kind,
        }
    _emit(args, text, obj, [["class", "h0"], [str(d), value]])
    return 0


def cmd_hilbert(args) -> int:
    from .enumeration import hilbert_polynomial, hilbert_value
    from .lattice import Surface

    s = Surface(args.r)
    if args.polynomial:
        coeffs = hilbert_polynomial(s)
        terms = [f"({c})*t^{k}" for k, c in reversed(list(enumerate(coeffs))) if c]
        obj = {"r": args.r, "coefficients": [_rational(c) for c in coeffs]}
        rows = [["power", "num", "den"]] + [[k, c.numerator, c.denominator] for k, c in enumerate(coeffs)]
        _emit(args, " + ".join(terms), obj, rows)
        return 0
    ts = args.t if args.t else list(range(1, max(args.r - 3, 1) + 1))
    values = {t: hilbert_value(s, t) for t in ts}
    text = "\n".join(f"H({t}) = {v}" for t, v in values.items())
    obj = {"r": args.r, "values": [{"t": t, "value": v} for t, v in values.items()]}
    _emit(args, text, obj, [["t", "value"]] + [[t, v] for t, v in values.items()])
    return 0


def cmd_orbit(args) -> int:
    from .weyl import describe, orbit

    d = _class(args)
    members = sorted(orbit(d, cap=args.cap))
    text = "\n".join(str(c) for c in members) + f"\nsize: {len(members)} ({describe(d)})"
    obj = {"class": d.to_json(), "name": describe(d), "size": len(members), "members": [c.to_json() for c in members]}
    _emit(args, text, obj, _class_rows(members))
    return 0


def cmd_betti(args) -> int:
    from .lattice import Surface
    from .sections import random_general_points
    from .syzygy import KoszulComplex, betti_diagram

    s = Surface(args.r)
    pc = random_general_points(s, seed=args.seed)
    if args.cls is not None:
        if args.i is None:
            raise _Usage("--class needs --i")
        d = _class(args)
        value = KoszulComplex(d, pc).betti(args.i)
        obj = {"i": args.i, "class": d.to_json(), "value": value, "seed": args.seed}
        _emit(args, str(value), obj, [["i", "class", "value"], [args.i, str(d), value]])
        return 0
    if not args.diagram:
        raise _Usage("give --diagram or --i with --class")
    diag = betti_diagram(s, pc, stress=args.stress, workers=args.threads)
    obj = diag.to_json()
    obj["checks"] = {k: v for k, v in diag.checks.items()}
    rows = [["i", "j", "value"]] + [[i, j, v] for (i, j), v in sorted(diag.table.items())]
    _emit(args, diag.text(), obj, rows)
    return 0


def cmd_points(args) -> int:
    from .lattice import Surface
    from .sections import random_general_points

    pc = random_general_points(Surface(args.r), seed=args.seed, height=args.height, full=args.full or None)
    text = "\n".join(f"p{k + 1} = ({x} : {y} : {z})" for k, (x, y, z) in enumerate(pc.points))
    text += "\ncertificate:\n" + "\n".join(f"  {c}" for c in pc.certificate)
    rows = [["index", "x", "y", "z"]] + [[k + 1, *p] for k, p in enumerate(pc.points)]
    _emit(args, text, pc.to_json(), rows)
    return 0


def cmd_verify_paper(args) -> int:
    from .verify import ALL_R, SECTIONS, iter_checks

    rs = ALL_R if args.r in (None, "all") else (int(args.r),)
    if any(r not in ALL_R for r in rs):
        raise _Usage("--r must be 4..8 or all")
    sections = args.section or list(SECTIONS)
    checks = []
    for chk in iter_checks(rs, sections):
        checks.append(chk)
        log.info(chk.line())
    lines = []
    for c in checks:
        line = c.line() if args.timings else _untimed(c)
        lines.append(line)
    failed = [c for c in checks if not c.ok]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    obj = {"checks": [c.to_json() if args.timings else _strip_time(c.to_json()) for c in checks],
           "passed": not failed}
    rows = [["section", "r", "name", "expected", "computed", "passed"]] + [
        [c.section, c.r or "", c.name, c.expected, c.computed, c.ok] for c in checks]
    _emit(args, "\n".join(lines), obj, rows)
    return EXIT_FAIL if failed else 0


def _untimed(c) -> str:
    tag = "PASS" if c.ok else "FAIL"
    where = f"S_{c.r} " if c.r else ""
    text = f"{tag} [{c.section}] {where}{c.name}: expected {c.expected}, computed {c.computed}"
    return text + (f" -- {c.note}" if c.note else "")


def _strip_time(obj: dict) -> dict:
    return {k: v for k, v in obj.items() if k not in ("seconds",)}


# parser ------------------------------------------------------------------------

class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", "-o", help="write the result to a file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for the point configuration (default 0)")
    common.add_argument("--memory", help="memory budget for slice enumeration, e.g. 2G "
                                         "(default: $DPX_MEMORY_BUDGET or 2G)")
    common.add_argument("--threads", type=int, default=1, help="worker processes for Koszul runs")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    p = argparse.ArgumentParser(prog="dpx", description="Syzygies of Cox rings of del Pezzo surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def r_arg(sp, required=True):
        sp.add_argument("--r", type=int, required=required, choices=range(1, 9), metavar="R")

    sp = sub.add_parser("curves", parents=[common], help="(-1)-curves, roots, conics, twisted cubics")
    r_arg(sp)
    sp.add_argument("--kind", choices=("minus-one", "root", "conic", "cubic", "generator"), default="minus-one")
    sp.add_argument("--count", action="store_true")
    sp.set_defaults(func=cmd_curves)

    sp = sub.add_parser("h0", parents=[common], help="h^0 of a divisor class")
    r_arg(sp, required=False)
    sp.add_argument("--class", dest="cls", required=True, help='e.g. "2;-1,-1,-2,0,0"')
    sp.add_argument("--trace", action="store_true")
    sp.set_defaults(func=cmd_h0)

    sp = sub.add_parser("hilbert", parents=[common], help="Hilbert function values or polynomial")
    r_arg(sp)
    sp.add_argument("--t", type=int, nargs="+")
    sp.add_argument("--polynomial", action="store_true")
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("orbit", parents=[common], help="Weyl orbit of a class")
    r_arg(sp, required=False)
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--cap", type=int, default=100_000)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("betti", parents=[common], help="multigraded Betti numbers and diagrams")
    r_arg(sp)
    sp.add_argument("--i", type=int)
    sp.add_argument("--class", dest="cls")
    sp.add_argument("--diagram", action="store_true")
    sp.add_argument("--stress", action="store_true", help="also compute the middle row by Koszul homology")
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("points", parents=[common], help="certified general point configuration")
    r_arg(sp)
    sp.add_argument("--height", type=int, default=100)
    sp.add_argument("--full", action="store_true", help="certify every degree-2/3 class on S_8 (slow)")
    sp.set_defaults(func=cmd_points)

    sp = sub.add_parser("verify-paper", parents=[common], help="recompute every reference table")
    sp.add_argument("--r", default="all", help="4..8 or all")
    sp.add_argument("--section", action="append", help="restrict to a section; repeatable")
    sp.add_argument("--timings", action="store_true", help="show wall time and budget per check")
    sp.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    if args.memory:
        os.environ["DPX_MEMORY_BUDGET"] = args.memory
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except CapacityError as exc:
        print(f"dpx: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except GenericityError as exc:
        print(f"dpx: points not general: {exc}", file=sys.stderr)
        return EXIT_GENERICITY
    except (DpxError, ValueError) as exc:
        print(f"dpx: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return 0


if __name__ == "__main__":
    sys.exit(main())
