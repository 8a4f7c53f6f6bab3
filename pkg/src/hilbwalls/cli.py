"""Command line front end.

Exit codes: 0 success, 1 violation found (monad verbs), 2 bad arguments
or input, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import divisors, monads, svg, walls as wallmod
from .fields import Field
from .stability import Character

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# Serialization


def wall_record(n: int, w: wallmod.Wall) -> dict:
    d = divisors.wall_to_divisor(n, w)
    return {"center": str(w.center), "radius_sq": str(w.radius_sq),
            "witnesses": [{"region": j, "type": list(t.astuple())} for j, t in w.witnesses],
            "divisor": {"h": str(d.h), "delta": str(d.delta)},
            "status": w.status}


def wall_from_record(n: int, rec: dict) -> wallmod.Wall:
    from .ktheory import DimVector
    wit = tuple((x["region"], DimVector(*x["type"], x["region"])) for x in rec["witnesses"])
    return wallmod.Wall(Fraction(rec["center"]), Fraction(rec["radius_sq"]), n, wit, rec["status"])


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _emit(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# --------------------------------------------------------------------------
# Verbs


def cmd_walls(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.saturation_factor < 1:
        raise UsageError("--saturation-factor must be at least 1")
    ws = wallmod.candidate_walls(args.n, exceptions=not args.no_exceptions,
                                 factor=args.saturation_factor, jobs=args.jobs)
    recs = [wall_record(args.n, w) for w in ws]
    if args.format == "json":
        text = _dump({"n": args.n, "walls": recs})
    else:
        lines = [f"{'center':>10} {'radius^2':>10}  {'status':<10} divisor  witnesses"]
        for w, r in zip(ws, recs):
            d = divisors.wall_to_divisor(args.n, w)
            wit = ", ".join(f"A({j}):{t.astuple()}" for j, t in w.witnesses)
            lines.append(f"{r['center']:>10} {r['radius_sq']:>10}  {w.status:<10} {d}  {wit}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    if args.svg:
        _emit(svg.render(walls=ws), args.svg)
    return EXIT_OK


def cmd_cone(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    ws = wallmod.candidate_walls(args.n, factor=args.saturation_factor, jobs=args.jobs)
    rep = divisors.cone_report(args.n, args.space, ws)
    text = _dump(rep.as_dict()) if args.format == "json" else rep.text() + "\n"
    _emit(text, args.output)
    if args.svg:
        _emit(svg.render(walls=ws, cone=rep), args.svg)
    return EXIT_OK


def cmd_divisor(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.center is not None:
        w = wallmod.Wall(Fraction(args.center), Fraction(args.center) ** 2 - 2 * args.n, args.n)
        d = divisors.wall_to_divisor(args.n, w)
    elif args.s is not None and args.k is not None:
        try:
            d = divisors.divisor_at(args.n, Fraction(args.s), args.k)
        except ValueError as e:
            raise UsageError(str(e)) from None
    else:
        raise UsageError("give --center, or both --s and --k")
    out = {"raw": {"h": str(d.h), "delta": str(d.delta)}, "text": str(d)}
    if d.h > 0:
        nd = d.normalized()
        out["normalized"] = {"h": str(nd.h), "delta": str(nd.delta)}
        out["text_normalized"] = str(nd)
    _emit(_dump(out), args.output)
    return EXIT_OK


def _load_monad(path):
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as e:
        raise OSError(f"cannot read {path}: {e}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: line {e.lineno}: {e.msg}") from None
    try:
        return monads.monad_from_dict(data)
    except monads.MonadError as e:
        raise UsageError(f"{path}: {e}") from None


def _parse_rho(text: str, M):
    try:
        rho = tuple(Fraction(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad --rho {text!r}") from None
    if len(rho) != 3:
        raise UsageError("--rho needs three entries")
    return rho


def cmd_monad(args) -> int:
    M = _load_monad(args.input)
    out = {"seed": args.seed}
    code = EXIT_OK
    F = M.field
    if args.action == "check":
        ok = monads.complex_check(M)
        out.update(verdict="complex-ok" if ok else "not-a-complex",
                   equations=monads.equation_count(M))
        code = EXIT_OK if ok else EXIT_VIOLATION
    elif args.action == "tt":
        try:
            T = monads.tt_involution(M)
        except monads.MonadError as e:
            out.update(verdict="tt-not-complex", detail=str(e))
            code = EXIT_VIOLATION
        else:
            out.update(verdict="tt-ok")
            if args.output:
                _emit(_dump(monads.monad_to_dict(T)), args.output)
            else:
                out["monad"] = monads.monad_to_dict(T)
    elif args.action == "destab":
        if args.rho is None:
            raise UsageError("destab needs --rho")
        rho = _parse_rho(args.rho, M)
        try:
            res = monads.find_destabilizer(M, rho, args.mode, args.budget, args.seed, args.target)
        except monads.MonadError as e:
            raise UsageError(str(e)) from None
        out.update(verdict=res.verdict, mode=res.mode, exact=res.exact,
                   rho=[str(x) for x in rho])
        if res.sub is not None:
            out["certificate"] = res.sub.as_dict(F)
            out["pairing"] = str(res.pairing)
            code = EXIT_VIOLATION
    elif args.action == "linebundle":
        try:
            v = monads.line_bundle_test(M, args.samples, args.seed)
        except monads.MonadError as e:
            raise UsageError(str(e)) from None
        out.update(verdict=v.verdict, samples=v.samples)
        if v.witness is not None:
            out["certificate"] = [F.fmt(x) for x in v.witness]
            code = EXIT_VIOLATION
    _emit(_dump(out), None)
    return code


# --------------------------------------------------------------------------
# Parser


def _default_seed() -> int:
    try:
        return int(os.environ.get("HILBWALLS_SEED", "0"))
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--seed", type=int, default=_default_seed())
    common.add_argument("--budget", type=int, default=100)
    common.add_argument("--saturation-factor", type=int, default=1)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--output", default=None)

    p = argparse.ArgumentParser(prog="hilbwalls", allow_abbrev=False,
                                description="Bridgeland walls for Hilb^n of the plane")
    sub = p.add_subparsers(dest="verb", required=True)

    w = sub.add_parser("walls", parents=[common], allow_abbrev=False, help="list candidate walls")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--format", choices=("text", "json"), default="text")
    w.add_argument("--no-exceptions", action="store_true",
                   help="drop the listed exceptional types")
    w.add_argument("--svg", default=None)
    w.set_defaults(func=cmd_walls)

    c = sub.add_parser("cone", parents=[common], allow_abbrev=False, help="divisor cone report")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--space", choices=("p2", "sklyanin"), default="p2")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--svg", default=None)
    c.set_defaults(func=cmd_cone)

    d = sub.add_parser("divisor", parents=[common], allow_abbrev=False, help="divisor at a point or wall")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--s", default=None)
    d.add_argument("--k", type=int, default=None)
    d.add_argument("--center", default=None)
    d.set_defaults(func=cmd_divisor)

    m = sub.add_parser("monad", parents=[common], allow_abbrev=False, help="monad checks")
    m.add_argument("action", choices=("check", "destab", "tt", "linebundle"))
    m.add_argument("--input", required=True)
    m.add_argument("--rho", default=None)
    m.add_argument("--mode", choices=("kernel", "cyclic", "exhaustive"), default="kernel")
    m.add_argument("--target", choices=("semistable", "stable"), default="semistable")
    m.add_argument("--samples", type=int, default=100)
    m.set_defaults(func=cmd_monad)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
