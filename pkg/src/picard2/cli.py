"""Command line interface.

Exit codes: 0 success or true verdict, 1 false verdict, 2 bad input,
3 internal guard (search overflow, failed self-check).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from typing import Callable, Optional

from . import abgroup as ab
from . import oracle
from . import ring2mod as rm
from . import serialize as io
from . import sgp2
from .errors import SearchOverflow, ValidationError

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3

PREDICATES = ("faithful", "full", "esssurj", "chainhom", "htpy")
ORACLE_KINDS = {"faithful": "faithful", "full": "full", "esssurj": "ess_surj"}


class Result:
    def __init__(self, doc: dict, summary: str, code: int = EXIT_OK):
        self.doc, self.summary, self.code = doc, summary, code


def _verdict(ok: bool) -> int:
    return EXIT_OK if ok else EXIT_FALSE


def _yes(ok: bool) -> str:
    return "true" if ok else "false"


def cmd_pi0(doc, args) -> Result:
    g = ab.canonical_group(sgp2.pi0(io.complex_from_json(doc))[0])
    return Result(io.group_to_json(g), f"pi0 = {g.describe()}")


def cmd_pi1(doc, args) -> Result:
    g = ab.canonical_group(sgp2.pi1(io.complex_from_json(doc)))
    return Result(io.group_to_json(g), f"pi1 = {g.describe()}")


def cmd_dis(doc, args) -> Result:
    g = io.group_from_json(doc)
    return Result(io.complex_to_json(sgp2.dis(g)), f"dis({g.describe()})")


def cmd_check(doc, args) -> Result:
    pred = args.predicate
    if pred == "chainhom":
        ok = sgp2.square_commutes(*io.chainhom_parts(doc))
    elif pred == "htpy":
        ok = sgp2.check_2morphism(io.homotopy_from_json(doc))
    else:
        f = io.chainhom_from_json(doc)
        ok = {"faithful": sgp2.is_faithful, "full": sgp2.is_full,
              "esssurj": sgp2.is_essentially_surjective}[pred](f)
    return Result({"type": "verdict", "predicate": pred, "verdict": ok},
                  f"{pred}: {_yes(ok)}", _verdict(ok))


def cmd_kernel(doc, args) -> Result:
    k = sgp2.kernel2(io.chainhom_from_json(doc))
    out = {"type": "kernel2", "complex": io.complex_to_json(k.complex),
           "incl": io.chainhom_to_json(k.incl), "eps": io.homotopy_to_json(k.eps)}
    pi0 = sgp2.pi0(k.complex)[0].describe()
    return Result(out, f"kernel: pi0 = {pi0}, pi1 = {sgp2.pi1(k.complex).describe()}")


def cmd_cokernel(doc, args) -> Result:
    c = sgp2.cokernel2(io.chainhom_from_json(doc))
    out = {"type": "cokernel2", "complex": io.complex_to_json(c.complex),
           "proj": io.chainhom_to_json(c.proj), "pi": io.homotopy_to_json(c.pi)}
    pi0 = sgp2.pi0(c.complex)[0].describe()
    return Result(out, f"cokernel: pi0 = {pi0}, pi1 = {sgp2.pi1(c.complex).describe()}")


def cmd_exact2(doc, args) -> Result:
    gamma, sigma, phi = io.triple_from_json(doc)
    cert = sgp2.two_exactness_witnesses(gamma, sigma, phi)
    out = {"type": "exact2", "verdict": cert.condition1,
           "condition1": cert.condition1, "condition2": cert.condition2,
           "flags": {"gamma0_full": cert.gamma0_full, "gamma0_esssurj": cert.gamma0_esssurj,
                     "sigma0_full": cert.sigma0_full, "sigma0_faithful": cert.sigma0_faithful},
           "gamma0": io.chainhom_to_json(cert.gamma0), "sigma0": io.chainhom_to_json(cert.sigma0)}
    return Result(out, f"2-exact: {_yes(cert.condition1)} (condition 2: {_yes(cert.condition2)})",
                  _verdict(cert.condition1))


def cmd_extension(doc, args) -> Result:
    v = sgp2.extension_conditions(*io.triple_from_json(doc))
    out = {"type": "extension", "verdict": v.condition1, "condition1": v.condition1,
           "condition2": v.condition2, "condition3": v.condition3}
    return Result(out, f"extension: {_yes(v.condition1)}", _verdict(v.condition1))


def cmd_present(doc, args) -> Result:
    p, f, cert = sgp2.projective_presentation(io.complex_from_json(doc))
    out = {"type": "presentation", "P": io.complex_to_json(p), "F": io.chainhom_to_json(f),
           "cert": {"discrete_free": cert.discrete_free,
                    "essentially_surjective": cert.essentially_surjective,
                    "composite_is_cover": cert.composite_is_cover,
                    "homotopy": io.homotopy_to_json(cert.homotopy)}}
    return Result(out, f"P = dis(Z^{p.c0.gens}); certificate {'ok' if cert.ok else 'FAILED'}",
                  EXIT_OK if cert.ok else EXIT_GUARD)


def cmd_present_mod(doc, args) -> Result:
    p, f, cert = rm.module_projective_presentation(io.mod2_from_json(doc))
    out = {"type": "mod-presentation", "P": io.mod2_to_json(p), "F": io.mod2hom_to_json(f),
           "cert": {"discrete_free": cert.discrete_free,
                    "essentially_surjective": cert.essentially_surjective,
                    "composite_is_cover": cert.composite_is_cover,
                    "cover": io.modhom_to_json(cert.cover)}}
    return Result(out, f"P = dis(R^{p.m0.rank}); certificate {'ok' if cert.ok else 'FAILED'}",
                  EXIT_OK if cert.ok else EXIT_GUARD)


def cmd_lift(doc, args) -> Result:
    g, f = io.lift_from_json(doc)
    g_prime, h = sgp2.lift_discrete_free(g, f)
    out = {"type": "lift-result", "G_prime": io.chainhom_to_json(g_prime), "h": io.homotopy_to_json(h)}
    return Result(out, f"lift found; 2-morphism check {_yes(sgp2.check_2morphism(h))}")


def cmd_lift_mod(doc, args) -> Result:
    g, f = io.liftmod_from_json(doc)
    g_prime, h = rm.lift_discrete_free_mod(g, f)
    out = {"type": "liftmod-result", "G_prime": io.mod2hom_to_json(g_prime), "h": io.modhtpy_to_json(h)}
    return Result(out, f"lift found; 2-morphism check {_yes(rm.check_module_2morphism(h))}")


def cmd_pi0_ring(doc, args) -> Result:
    r = rm.pi0_ring(io.ring2_from_json(doc))
    return Result(io.ring_to_json(r), f"pi0 ring of size {r.size}")


def cmd_pi0_mod(doc, args) -> Result:
    m = rm.pi0_module(io.mod2_from_json(doc))
    return Result(io.module_to_json(m), f"pi0 module of size {m.size}")


def cmd_oracle(doc, args) -> Result:
    if args.oracle_command == "predicate":
        kind = ORACLE_KINDS[args.kind]
        rep = oracle.oracle_report(io.chainhom_from_json(doc), kind)
        out = {"type": "oracle-verdict", "kind": args.kind, **rep}
        return Result(out, f"oracle {args.kind}: {_yes(rep['verdict'])}", _verdict(rep["verdict"]))
    if args.oracle_command == "lift":
        g, f = io.lift_from_json(doc)
        res = oracle.oracle_lift_search(g, f, cap=args.cap, jobs=args.jobs)
        out = {"type": "oracle-lift", "found": res.found, "candidates": res.candidates,
               "space": res.space,
               "G_prime": io.chainhom_to_json(res.g_prime) if res.found else None,
               "h": io.homotopy_to_json(res.homotopy) if res.found else None}
        return Result(out, f"oracle lift: {'found' if res.found else 'not found'} "
                           f"after {res.candidates} candidates", _verdict(res.found))
    rep = oracle.verify_all(io.chainhom_from_json(doc))
    ok = all(v["agree"] for v in rep.values())
    out = {"type": "oracle-verify", "verdict": ok,
           **{k if k != "ess_surj" else "esssurj": v for k, v in rep.items()}}
    return Result(out, f"oracle agrees with formulas: {_yes(ok)}", _verdict(ok))


COMMANDS: dict[str, Callable] = {
    "pi0": cmd_pi0, "pi1": cmd_pi1, "dis": cmd_dis, "check": cmd_check,
    "kernel": cmd_kernel, "cokernel": cmd_cokernel, "exact2": cmd_exact2,
    "extension": cmd_extension, "present": cmd_present, "present-mod": cmd_present_mod,
    "lift": cmd_lift, "lift-mod": cmd_lift_mod, "pi0-ring": cmd_pi0_ring,
    "pi0-mod": cmd_pi0_mod, "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="infile", default="-", help="input JSON file, '-' for stdin")
    common.add_argument("--out", dest="outfile", help="write the JSON result here")
    common.add_argument("--format", choices=("json", "summary"), default="summary",
                        help="what to print on standard output")

    parser = argparse.ArgumentParser(prog="picard2", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        if name == "oracle":
            continue
        p = sub.add_parser(name, parents=[common])
        if name == "check":
            p.add_argument("--predicate", choices=PREDICATES, required=True)

    orc = sub.add_parser("oracle").add_subparsers(dest="oracle_command", required=True)
    jobs = argparse.ArgumentParser(add_help=False)
    jobs.add_argument("--jobs", type=int, default=1)
    orc.add_parser("predicate", parents=[common, jobs]).add_argument(
        "--kind", choices=tuple(ORACLE_KINDS), required=True)
    orc.add_parser("lift", parents=[common, jobs]).add_argument(
        "--cap", type=int, default=None, help="candidate cap (default: $PICARD2_CANDIDATE_CAP or 10^7)")
    orc.add_parser("verify-all", parents=[common, jobs])
    return parser


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _read(path: str, stdin) -> str:
    if path == "-":
        return stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def run(argv: Optional[list] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    try:
        text = _read(args.infile, stdin)
    except OSError as exc:
        print(f"error: cannot read {args.infile}: {exc.strerror}", file=stderr)
        return EXIT_INPUT
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", file=stderr)
        return EXIT_INPUT

    try:
        result = COMMANDS[args.command](doc, args)
    except SearchOverflow as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_GUARD
    except ValidationError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except (KeyError, TypeError, IndexError) as exc:
        print(f"error: malformed document: {exc}", file=stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=stderr)
        return EXIT_GUARD

    text = dumps(result.doc)
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text)
    stdout.write(text if args.format == "json" else result.summary + "\n")
    return result.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
