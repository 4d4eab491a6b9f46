"""Command-line interface: ``cur <command> ...``.

Exit codes: 0 on any verdict, 1 when ``verify`` answers false, 2 on unreadable
input, 3 when every budgeted search ran out, 4 when a construction fails its
own verification.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .collapse import INDETERMINATE, NO, collapses_onto, is_collapsible
from .complex import alexander_dual, join
from .constructions import (build_cone_over_star, building_target, cone_representation,
                            generic_representation, join_representation, path_representation,
                            suspension_power_representation, tree_representation)
from .complex import cone, path, suspension_power
from .errors import CurError, FailedVerification, ParseError
from .geometry.nerve import nerve_of_collection
from .geometry.representation import (Representation, code_of_representation,
                                      verify_representation)
from .homology import GF2, RATIONAL, reduced_betti
from .screen import ScreenOptions, screen_code, screen_complex
from .textio import format_code, format_complex, read_code, read_complex

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET, EXIT_CONSTRUCT = 0, 1, 2, 3, 4


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _face_arg(text: str) -> int:
    mask = 0
    for tok in text.replace(",", " ").split():
        mask |= 1 << int(tok)
    return mask


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cur", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, batch=False):
        sp.add_argument("--budget", type=_positive, default=None,
                        help="collapse search state budget (default: $CUR_BUDGET or 10^6)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if batch:
            sp.add_argument("--deep-splitting", action="store_true",
                            help="also run the splitting advisory")
            sp.add_argument("--jobs", type=_positive, default=1,
                            help="parallel workers in directory mode")

    sp = sub.add_parser("screen", help="screen a complex file (or a directory of them)")
    sp.add_argument("path")
    sp.add_argument("--all-checks", action="store_true", help="do not stop at the first failure")
    sp.add_argument("--witness", action="store_true", help="attach a representation when CUR")
    common(sp, batch=True)

    sp = sub.add_parser("code-screen", help="look for local obstructions of a code file")
    sp.add_argument("path")
    common(sp, batch=True)

    sp = sub.add_parser("construct", help="build a representation")
    sp.add_argument("kind", choices=["generic", "cone", "join", "path", "suspension",
                                     "building", "tree"])
    sp.add_argument("args", nargs="*",
                    help="generic/cone/tree: COMPLEX; join: LEFT.rep RIGHT.rep; path: M; "
                         "suspension: K; building: REP SIGMA OMEGA (e.g. 0,1)")
    sp.add_argument("-o", "--output", help="write the representation here (default stdout)")

    sp = sub.add_parser("verify", help="check a representation against a complex")
    sp.add_argument("rep")
    sp.add_argument("complex")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("code-of", help="print the code of a representation")
    sp.add_argument("rep")

    sp = sub.add_parser("dual", help="print the Alexander dual")
    sp.add_argument("path")

    sp = sub.add_parser("collapse", help="search for a collapse and print the certificate")
    sp.add_argument("path")
    sp.add_argument("--onto", help="target subcomplex file (default: void)")
    common(sp)

    sp = sub.add_parser("betti", help="print reduced Betti numbers from dimension -1 up")
    sp.add_argument("path")
    sp.add_argument("--field", choices=["Q", "GF2"], default="Q")
    return p


# -- screening ----------------------------------------------------------------------

def _inputs(path: str) -> list[Path]:
    p = Path(path)
    if p.is_dir():
        return sorted(q for q in p.iterdir() if q.is_file())
    return [p]


def _screen_one(args) -> tuple[str, str, dict | None, int]:
    path, opts, is_code = args
    try:
        if is_code:
            res = screen_code(read_code(path), opts)
            exhausted = False
        else:
            res = screen_complex(read_complex(path), opts)
            exhausted = res.exhausted
    except (CurError, OSError) as exc:
        return str(path), f"error: {exc}", None, EXIT_INPUT
    return str(path), res.summary(), res.to_json(), EXIT_BUDGET if exhausted else EXIT_OK


def _cmd_screen(ns, is_code: bool) -> int:
    opts = ScreenOptions(budget=ns.budget, deep_splitting=ns.deep_splitting,
                         all_checks=getattr(ns, "all_checks", False),
                         witness=getattr(ns, "witness", False))
    paths = _inputs(ns.path)
    if not paths:
        print("error: no input files", file=sys.stderr)
        return EXIT_INPUT
    jobs = [(p, opts, is_code) for p in paths]
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            results = list(pool.map(_screen_one, jobs))
    else:
        results = [_screen_one(j) for j in jobs]
    batch = len(paths) > 1 or Path(ns.path).is_dir()
    for name, summary, data, _ in results:
        if ns.json:
            out = {"file": name, **(data or {"error": summary})} if batch else (data or {"error": summary})
            print(json.dumps(out))
        elif batch:
            print(f"{name}: {summary}")
        else:
            print(summary if data is None else _long_text(summary, data, is_code))
    codes = [c for *_, c in results]
    if all(c == EXIT_INPUT for c in codes):
        return EXIT_INPUT
    if all(c == EXIT_BUDGET for c in codes):
        return EXIT_BUDGET
    return EXIT_OK


def _long_text(summary: str, data: dict, is_code: bool) -> str:
    lines = [summary]
    if is_code:
        for r in data["reports"]:
            kinds = ", ".join(k.lower().replace("_", " ") for k in r["kinds"]) or "none"
            site = "{" + " ".join(map(str, r["site"])) + "}"
            lines.append(f"  site {site}: {kinds}")
            for note in r["notes"]:
                lines.append(f"    note: {note}")
        return "\n".join(lines)
    for r in data["reasons"]:
        lines.append(f"  [{r['check']}] {r['object']}: {r['citation']}")
    for c in data["checks"]:
        lines.append(f"  {c['check']}: {c['outcome']}" + (f" ({c['note']})" if "note" in c else ""))
    for n in data["notices"]:
        lines.append(f"  notice: {n}")
    return "\n".join(lines)


# -- construction and verification --------------------------------------------------

def _construct(kind: str, args: list[str]):
    """Returns (representation, target complex, whether the union must be convex)."""
    def need(k):
        if len(args) != k:
            raise ParseError(f"construct {kind} takes {k} argument(s)")
    if kind == "generic":
        need(1)
        cx = read_complex(args[0])
        return generic_representation(cx), cx, False
    if kind == "cone":
        need(1)
        base = read_complex(args[0])
        return cone_representation(base), cone(base), True
    if kind == "tree":
        need(1)
        cx = read_complex(args[0])
        return tree_representation(cx), cx, True
    if kind == "path":
        need(1)
        m = int(args[0])
        return path_representation(m), path(m), True
    if kind == "suspension":
        need(1)
        k = int(args[0])
        return suspension_power_representation(k), suspension_power(k), True
    if kind == "join":
        need(2)
        left, right = Representation.load(args[0]), Representation.load(args[1])
        target = join(nerve_of_collection(left.sets), nerve_of_collection(right.sets))
        return join_representation(left, right), target, True
    if kind == "building":
        need(3)
        rep = Representation.load(args[0])
        sigma, omega = _face_arg(args[1]), _face_arg(args[2])
        target = building_target(nerve_of_collection(rep.sets), sigma, omega)
        return build_cone_over_star(rep, sigma, omega), target, True
    raise ParseError(f"unknown construction {kind!r}")


def _cmd_construct(ns) -> int:
    try:
        rep, target, convex = _construct(ns.kind, ns.args)
    except FailedVerification as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCT
    except (CurError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = verify_representation(rep, target)
    good = report.ok if convex else report.nerve_ok
    if not good:
        print("error: construction does not verify\n" + report.text(), file=sys.stderr)
        return EXIT_CONSTRUCT
    if ns.output:
        rep.save(ns.output)
        print(f"wrote {ns.output}: {rep.n} sets in R^{rep.dim}, target {target}")
    else:
        print(rep.dumps())
    return EXIT_OK


def _cmd_verify(ns) -> int:
    try:
        rep = Representation.load(ns.rep)
        cx = read_complex(ns.complex)
    except (CurError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = verify_representation(rep, cx)
    if ns.json:
        print(json.dumps({"ok": report.ok, "nerve_ok": report.nerve_ok,
                          "union_ok": report.union_ok, "messages": report.messages}))
    else:
        print(report.text())
    return EXIT_OK if report.ok else EXIT_FALSE


def _cmd_code_of(ns) -> int:
    try:
        rep = Representation.load(ns.rep)
    except (CurError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(format_code(code_of_representation(rep)))
    return EXIT_OK


def _cmd_dual(ns) -> int:
    try:
        sys.stdout.write(format_complex(alexander_dual(read_complex(ns.path))))
    except (CurError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def _cmd_collapse(ns) -> int:
    try:
        cx = read_complex(ns.path)
        if ns.onto:
            res = collapses_onto(cx, read_complex(ns.onto), ns.budget)
        else:
            res = is_collapsible(cx, ns.budget)
    except (CurError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if res is NO or res is INDETERMINATE:
        print(json.dumps({"result": res.value}) if ns.json else res.value)
        return EXIT_BUDGET if res is INDETERMINATE else EXIT_OK
    if ns.json:
        print(json.dumps({"result": "YES", "steps": res.to_text().splitlines()}))
    else:
        sys.stdout.write(res.to_text())
    return EXIT_OK


def _cmd_betti(ns) -> int:
    try:
        cx = read_complex(ns.path)
    except (CurError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(reduced_betti(cx, GF2 if ns.field == "GF2" else RATIONAL))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    if os.environ.get("CUR_BUDGET"):
        try:
            _positive(os.environ["CUR_BUDGET"])
        except (ValueError, argparse.ArgumentTypeError):
            print("error: CUR_BUDGET must be a positive integer", file=sys.stderr)
            return EXIT_INPUT
    handlers = {
        "screen": lambda: _cmd_screen(ns, False),
        "code-screen": lambda: _cmd_screen(ns, True),
        "construct": lambda: _cmd_construct(ns),
        "verify": lambda: _cmd_verify(ns),
        "code-of": lambda: _cmd_code_of(ns),
        "dual": lambda: _cmd_dual(ns),
        "collapse": lambda: _cmd_collapse(ns),
        "betti": lambda: _cmd_betti(ns),
    }
    return handlers[ns.command]()


if __name__ == "__main__":
    sys.exit(main())
