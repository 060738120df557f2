"""Command line interface: ``cliffbreak <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import __version__
from .algebra import Ring, Signature
from .claims import CATALOGUE, DISCREPANCY, FAIL, run_claims
from .errors import CliffordError
from .lie import bivector_algebra, killing_verdict, lie_closure
from .linalg import full_space
from .parser import KEYWORDS, UNITS, eval_text, parse_context, symbol_value
from .report import build_report, generator_entry, to_json, to_text
from .structure import (
    classify_empirical,
    classify_table,
    generated_subalgebra,
    idempotent_split,
    verify_generators,
)

DEFAULT_SEED = 42
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("CLIFFBREAK_SEED")
    if env is None or env == "":
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"CLIFFBREAK_SEED must be an integer, got {env!r}") from None


def _context(name: str):
    try:
        return parse_context(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _elements(texts, ctx):
    return [eval_text(t, ctx) for t in texts]


def _emit(args, payload: dict, text: str, out):
    if getattr(args, "format", "text") == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write(text + "\n")


# ---------------------------------------------------------------------------
# commands

def cmd_classify(args, out) -> int:
    if args.p < 0 or args.q < 0:
        raise UsageError("p and q must be non-negative")
    sig = Signature(args.p, args.q)
    ring = Ring.parse(args.ring)
    table = classify_table(sig, ring)
    prefix = "" if ring is Ring.REAL else f"{ring.value} ⊗ "
    lines = [f"{prefix}Cl({sig.p},{sig.q}) ≅ {table}"]
    payload = {"signature": [sig.p, sig.q], "ring": ring.value, "table": str(table)}
    code = EXIT_OK
    if args.empirical:
        from .algebra import AlgebraDescriptor

        emp = classify_empirical(full_space(AlgebraDescriptor.generic(sig.p, sig.q, ring)))
        payload["empirical"] = str(emp)
        payload["agree"] = emp == table
        lines.append(f"empirical: {emp} ({'agrees' if emp == table else 'DISAGREES'})")
        if emp != table:
            code = EXIT_FAIL
    _emit(args, payload, "\n".join(lines), out)
    return code


def cmd_eval(args, out) -> int:
    ctx = _context(args.algebra)
    value = eval_text(args.expr, ctx)
    _emit(args, {"algebra": args.algebra, "expr": args.expr, "value": str(value)}, str(value), out)
    return EXIT_OK


def cmd_gens_verify(args, out) -> int:
    ctx = _context(args.algebra)
    rep = verify_generators(_elements(args.exprs, ctx), ctx)
    entry = generator_entry(rep, list(args.exprs), args.algebra)
    doc = build_report([entry], algebra_context=args.algebra)
    if args.format == "json":
        out.write(to_json(doc))
    else:
        sig = "none" if rep.signature is None else f"({rep.signature.p},{rep.signature.q})"
        full = "full" if rep.full_algebra else "partial"
        lines = [f"signature {sig}, generated dimension {rep.generated_dimension} of "
                 f"{rep.ambient_dimension} ({full})",
                 f"squares: {', '.join(map(str, rep.squares))}",
                 f"pseudoscalar: {rep.pseudoscalar}"]
        for name, f in entry["details"]["pseudoscalar_factor"].items():
            lines.append(f"pseudoscalar = {f} * {name}")
        for a, b in rep.failing_pairs:
            lines.append(f"not anticommuting: {args.exprs[a]}, {args.exprs[b]}")
        out.write("\n".join(lines) + "\n")
    return EXIT_OK if rep.valid else EXIT_FAIL


def _ambient(args, ctx):
    if args.within:
        return generated_subalgebra(_elements(args.within, ctx), descriptor=ctx)
    return full_space(ctx)


def _classify_or_reason(S) -> str:
    try:
        return str(classify_empirical(S))
    except CliffordError as exc:
        return exc.code


def cmd_centralizer(args, out) -> int:
    from .linalg import solve_commutant

    ctx = _context(args.algebra)
    cent = solve_commutant(_elements(args.exprs, ctx), _ambient(args, ctx))
    iso = _classify_or_reason(cent) if cent.rank else "0"
    basis = [str(r) for r in cent.rows]
    text = [f"centralizer rank {cent.rank}", f"class: {iso}"]
    if args.basis:
        text += [f"  {b}" for b in basis]
    _emit(args, {"rank": cent.rank, "class": iso, "basis": basis}, "\n".join(text), out)
    return EXIT_OK


def cmd_split(args, out) -> int:
    ctx = _context(args.algebra)
    S = _ambient(args, ctx)
    omega = eval_text(args.omega, ctx)
    plus, minus = idempotent_split(S, omega)
    payload = {"rank": S.rank, "class": _classify_or_reason(S), "plus": {}, "minus": {}}
    lines = [f"algebra rank {S.rank}, class {payload['class']}"]
    for label, ideal in (("plus", plus), ("minus", minus)):
        iso = _classify_or_reason(ideal)
        payload[label] = {"rank": ideal.rank, "class": iso}
        sign = "+" if label == "plus" else "-"
        lines.append(f"(1{sign}w)/2 ideal: rank {ideal.rank}, class {iso}")
    _emit(args, payload, "\n".join(lines), out)
    return EXIT_OK


def cmd_lie_verdict(args, out) -> int:
    ctx = _context(args.algebra)
    elems = _elements(args.exprs, ctx)
    L = lie_closure(elems) if args.closure else bivector_algebra(elems)
    v = killing_verdict(L)
    payload = {"dimension": v.dimension, "inertia": list(v.inertia), "nullity": v.nullity,
               "real_form": v.name or "UNKNOWN_FORM"}
    _emit(args, payload, str(v), out)
    return EXIT_OK


def cmd_claims_list(args, out) -> int:
    width = max(len(c.id) for c in CATALOGUE)
    for c in CATALOGUE:
        if not args.filter or c.id.startswith(args.filter):
            out.write(f"{c.id:<{width}}  {c.expected:<11}  {c.description}\n")
    return EXIT_OK


def cmd_claims_run(args, out) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    seed = _seed(args)
    results = run_claims(args.filter, seed=seed, tol=args.tol, jobs=args.jobs)
    doc = build_report(results, seed=seed)
    text = to_json(doc) if args.format == "json" else to_text(doc, verbose=args.verbose)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    if args.figures:
        from .plotting import render_figures

        for path in render_figures(results, args.figures):
            print(f"wrote {path}", file=sys.stderr)
    failed = [r for r in results if r.status == FAIL or r.status != r.expected]
    discrepancies = sum(r.status == DISCREPANCY for r in results)
    if discrepancies:
        print(f"warning: {discrepancies} DISCREPANCY result(s)", file=sys.stderr)
    if failed:
        print(f"error: {len(failed)} claim(s) failed: {', '.join(r.id for r in failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# REPL

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_LET = re.compile(r"^let\s+(\S+)\s*=\s*(.*)$", re.S)
REPL_HELP = """\
expressions are evaluated in the current algebra, e.g. (1+g5)/2
  let NAME = EXPR   bind a name
  :algebra NAME     switch algebra (clears bindings)
  :env              list bindings
  :help             this text
  :quit             leave"""


def run_repl(ctx_name: str, stdin, out, prompt: str = "> ") -> int:
    ctx = _context(ctx_name)
    env: dict = {}
    interactive = hasattr(stdin, "isatty") and stdin.isatty()
    while True:
        if interactive:
            out.write(prompt)
            out.flush()
        line = stdin.readline()
        if not line:
            return EXIT_OK
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line in (":q", ":quit", "quit", "exit"):
                return EXIT_OK
            if line == ":help":
                out.write(REPL_HELP + "\n")
            elif line == ":env":
                for name in sorted(env):
                    out.write(f"{name} = {env[name]}\n")
            elif line.startswith(":algebra"):
                ctx_name = line.split(None, 1)[1] if " " in line else ""
                ctx = _context(ctx_name)
                env.clear()
                out.write(f"algebra {ctx_name}\n")
            elif m := _LET.match(line):
                name, expr = m.group(1), m.group(2)
                if not _NAME.match(name) or name in UNITS or name in KEYWORDS \
                        or symbol_value(name, ctx) is not None:
                    raise UsageError(f"cannot bind {name!r}")
                env[name] = eval_text(expr, ctx, env)
                out.write(f"{name} = {env[name]}\n")
            else:
                out.write(f"{eval_text(line, ctx, env)}\n")
        except CliffordError as exc:
            out.write(f"error: {exc.code}: {exc}\n")
        except UsageError as exc:
            out.write(f"error: {exc}\n")


def cmd_repl(args, out) -> int:
    return run_repl(args.algebra, sys.stdin, out)


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    alg = argparse.ArgumentParser(add_help=False)
    alg.add_argument("--algebra", default="dirac-h", help="dirac-c, dirac-h or cl(p,q)[:r|c|h]")
    within = argparse.ArgumentParser(add_help=False)
    within.add_argument("--within", nargs="+", metavar="EXPR",
                        help="restrict to the subalgebra generated by these elements")

    ap = argparse.ArgumentParser(prog="cliffbreak", description="Exact Clifford algebra toolkit.")
    ap.add_argument("--version", action="version", version=f"cliffbreak {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[fmt], help="isomorphism class of Cl(p,q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--ring", choices=("r", "c", "h"), default="r", help="coefficient ring")
    p.add_argument("--empirical", action="store_true", help="cross-check with the structure classifier")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("eval", parents=[fmt, alg], help="evaluate an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    g = sub.add_parser("gens", help="generator sets").add_subparsers(dest="gens_command", required=True)
    p = g.add_parser("verify", parents=[fmt, alg], help="check a candidate generator set")
    p.add_argument("exprs", nargs="+", metavar="EXPR")
    p.set_defaults(func=cmd_gens_verify)

    p = sub.add_parser("centralizer", parents=[fmt, alg, within], help="centralizer of elements")
    p.add_argument("exprs", nargs="+", metavar="EXPR")
    p.add_argument("--basis", action="store_true", help="print a basis")
    p.set_defaults(func=cmd_centralizer)

    p = sub.add_parser("split", parents=[fmt, alg, within], help="split by a central involution")
    p.add_argument("omega", metavar="EXPR")
    p.set_defaults(func=cmd_split)

    lie = sub.add_parser("lie", help="Lie algebras").add_subparsers(dest="lie_command", required=True)
    p = lie.add_parser("verdict", parents=[fmt, alg], help="real form from the Killing form")
    p.add_argument("exprs", nargs="+", metavar="EXPR")
    p.add_argument("--closure", action="store_true",
                   help="use the commutator closure of the elements instead of their bivectors")
    p.set_defaults(func=cmd_lie_verdict)

    claims = sub.add_parser("claims", help="claim catalogue").add_subparsers(dest="claims_command", required=True)
    p = claims.add_parser("run", parents=[fmt], help="run the claims")
    p.add_argument("--seed", type=int, default=None, help=f"default: $CLIFFBREAK_SEED or {DEFAULT_SEED}")
    p.add_argument("--filter", default=None, metavar="PREFIX")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", default=None, metavar="FILE")
    p.add_argument("--figures", default=None, metavar="DIR", help="also write PNG figures here")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_claims_run)
    p = claims.add_parser("list", help="list claim ids")
    p.add_argument("--filter", default=None, metavar="PREFIX")
    p.set_defaults(func=cmd_claims_list)

    p = sub.add_parser("repl", parents=[alg], help="interactive evaluator")
    p.set_defaults(func=cmd_repl)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    if hasattr(out, "reconfigure"):
        try:
            out.reconfigure(encoding="utf-8")
        except (ValueError, OSError):
            pass
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CliffordError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
