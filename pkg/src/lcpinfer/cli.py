"""Command line front end.

Every subcommand is a thin wrapper over the library.  Input formats: LCP
arrays are whitespace-separated tokens where `w` stands for an unbounded
entry; multisets are one lowercase word per line (blank lines ignored); CNF
input is DIMACS with exactly three literals per clause.  Output is JSON on
stdout unless --text is given (`dot` always prints DOT text).

Exit codes: 0 success / yes-instance, 1 no-instance or unsolvable, 2 usage
or parse error, 3 resource cap exceeded.
"""
import argparse
import json
import sys

from .binary_infer import InvalidLcpArray, enumerate_bwts, infer
from .ccec import from_cnf, parse_dimacs, solve
from .ccec import to_dot as ccec_to_dot
from .cyclic import OMEGA, bwt, ibwt, lcp_array_from_bwt, multiset_from_cyclic_words, parse_lcp
from .dfa import build_dfa, dfa_accepts, dfa_count, dfa_enumerate
from .dfa import to_dot as dfa_to_dot
from .errors import ResourceLimitError
from .oracle import Variant, brute_force_solutions, lcp_variant
from .reductions import bwt_graph, graph_to_dot, sat_to_lcp, single_string_decide

VARIANTS = [v.value for v in Variant]


def _lcp_tokens(entries):
    """JSON-friendly entries: ints, with `w` for unbounded."""
    return ["w" if e == OMEGA else int(e) for e in entries]


def _parse_lcp_arg(text):
    try:
        return parse_lcp(text)
    except ValueError as exc:
        raise _UsageError(f"bad LCP array: {exc}")


class _UsageError(Exception):
    pass


def _read_lines(args):
    if getattr(args, "infile", None):
        with open(args.infile, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return [line.strip() for line in text.splitlines() if line.strip()]


def _read_text(args):
    if getattr(args, "infile", None):
        with open(args.infile, encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def _words(args):
    words = list(args.words) if args.words else _read_lines(args)
    if not words:
        raise _UsageError("no input words")
    return words


def _emit(args, obj, text):
    if getattr(args, "text", False):
        print(text)
    else:
        print(json.dumps(obj, sort_keys=True))


def _cmd_lcp(args):
    variant = Variant(args.variant)
    words = _words(args)
    if variant.is_set:
        entries = lcp_variant(words, variant)
    else:
        if len(words) != 1:
            raise _UsageError(f"variant {variant.value} takes exactly one word")
        entries = lcp_variant(words[0], variant)
    toks = _lcp_tokens(entries)
    _emit(args, {"lcp": toks}, " ".join(map(str, toks)))
    return 0


def _cmd_bwt(args):
    W = multiset_from_cyclic_words(_words(args))
    v = bwt(W)
    _emit(args, {"bwt": v}, v)
    return 0


def _cmd_ibwt(args):
    words = list(ibwt(args.string).words)
    _emit(args, {"words": words}, "\n".join(words))
    return 0


def _cmd_infer(args):
    result = infer(_parse_lcp_arg(args.lcp))
    swaps = sorted([s.lo, s.hi] for s in result.swaps)
    _emit(
        args,
        {"bwt": result.bwt, "swaps": swaps, "rendered": result.rendered()},
        result.rendered(),
    )
    return 0


def _cmd_enumerate(args):
    result = infer(_parse_lcp_arg(args.lcp))
    solutions, truncated = enumerate_bwts(result, args.limit)
    solutions = sorted(solutions)
    _emit(
        args,
        {"solutions": solutions, "truncated": truncated},
        "\n".join(solutions),
    )
    return 0


def _cmd_single(args):
    s = single_string_decide(_parse_lcp_arg(args.lcp), cap=args.cap, jobs=args.jobs)
    if s is None:
        print("no single string realizes this array", file=sys.stderr)
        return 1
    _emit(args, {"string": s}, s)
    return 0


def _cmd_dfa(args):
    try:
        dfa = build_dfa(_parse_lcp_arg(args.lcp), args.sigma)
    except ValueError as exc:
        raise _UsageError(str(exc))
    if args.accepts is not None:
        ok = dfa_accepts(dfa, args.accepts)
        _emit(args, {"accepts": ok}, "yes" if ok else "no")
        return 0 if ok else 1
    if args.enumerate:
        solutions, truncated = dfa_enumerate(dfa, args.limit)
        solutions = sorted(solutions)
        _emit(args, {"solutions": solutions, "truncated": truncated}, "\n".join(solutions))
        return 0
    counts = {
        "count": dfa_count(dfa),
        "states": len(dfa.states),
        "transitions": len(dfa.transitions),
    }
    _emit(args, counts, str(counts["count"]))
    return 0


def _cmd_sat2lcp(args):
    clauses = parse_dimacs(_read_text(args))
    toks = _lcp_tokens(sat_to_lcp(clauses))
    _emit(args, {"lcp": toks}, " ".join(map(str, toks)))
    return 0


def _cmd_ccec_solve(args):
    clauses = parse_dimacs(_read_text(args))
    flips = solve(from_cnf(clauses), cap=args.cap, jobs=args.jobs)
    if flips is None:
        print("unsolvable", file=sys.stderr)
        return 1
    _emit(args, {"flipset": sorted(flips)}, " ".join(map(str, sorted(flips))))
    return 0


def _cmd_oracle(args):
    solutions = brute_force_solutions(
        _parse_lcp_arg(args.lcp),
        args.sigma,
        Variant(args.variant),
        guard=args.guard,
        jobs=args.jobs,
    )
    out = sorted(list(s) if isinstance(s, tuple) else s for s in solutions)
    lines = ["\t".join(s) if isinstance(s, list) else s for s in out]
    _emit(args, {"solutions": out}, "\n".join(lines))
    return 0


def _cmd_dot(args):
    if args.target == "ccec":
        print(ccec_to_dot(from_cnf(parse_dimacs(_read_text(args)))))
    elif args.target == "dfa":
        if args.lcp is None:
            raise _UsageError("dot --target dfa needs --lcp")
        try:
            print(dfa_to_dot(build_dfa(_parse_lcp_arg(args.lcp), args.sigma)))
        except ValueError as exc:
            raise _UsageError(str(exc))
    else:
        if args.lcp is None:
            raise _UsageError("dot --target bwtgraph needs --lcp")
        print(graph_to_dot(bwt_graph(infer(_parse_lcp_arg(args.lcp)))))
    return 0


def _cmd_verify(args):
    entries = list(_parse_lcp_arg(args.lcp))
    payload = json.loads(_read_text(args))
    if not isinstance(payload, dict):
        raise _UsageError("expected a JSON object")
    candidates = []
    if "bwt" in payload:
        candidates.append(("bwt", payload["bwt"]))
    for s in payload.get("solutions", []):
        candidates.append(("bwt", s))
    if "string" in payload:
        candidates.append(("string", payload["string"]))
    if not candidates:
        raise _UsageError("no bwt/solutions/string field to verify")
    for kind, value in candidates:
        if kind == "bwt":
            got = lcp_array_from_bwt(value)
        else:
            got = lcp_variant(value, Variant.CYCLIC_SINGLE)
        if list(got) != entries:
            print(f"mismatch for {value!r}", file=sys.stderr)
            return 1
    _emit(args, {"verified": len(candidates)}, f"ok ({len(candidates)} checked)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcpinfer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--text", action="store_true", help="plain text instead of JSON")
    infile = argparse.ArgumentParser(add_help=False)
    infile.add_argument("--in", dest="infile", metavar="FILE", help="read input from FILE instead of stdin")

    p = sub.add_parser("lcp", parents=[fmt, infile], help="LCP array of words")
    p.add_argument("words", nargs="*", help="input words (default: one per stdin line)")
    p.add_argument("--variant", choices=VARIANTS, default=Variant.CYCLIC_SET.value)
    p.set_defaults(fn=_cmd_lcp)

    p = sub.add_parser("bwt", parents=[fmt, infile], help="BWT of a cyclic multiset")
    p.add_argument("words", nargs="*")
    p.set_defaults(fn=_cmd_bwt)

    p = sub.add_parser("ibwt", parents=[fmt], help="cyclic multiset of a BWT string")
    p.add_argument("string")
    p.set_defaults(fn=_cmd_ibwt)

    p = sub.add_parser("infer", parents=[fmt], help="binary BWT and swap intervals from an LCP array")
    p.add_argument("--lcp", required=True)
    p.set_defaults(fn=_cmd_infer)

    p = sub.add_parser("enumerate", parents=[fmt], help="all binary BWTs realizing an LCP array")
    p.add_argument("--lcp", required=True)
    p.add_argument("--limit", type=int)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("single", parents=[fmt], help="a single cyclic string realizing an LCP array")
    p.add_argument("--lcp", required=True)
    p.add_argument("--cap", type=int, default=1 << 20)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=_cmd_single)

    p = sub.add_parser("dfa", parents=[fmt], help="solution DFA over a general alphabet")
    p.add_argument("--lcp", required=True)
    p.add_argument("--sigma", type=int)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--enumerate", action="store_true")
    mode.add_argument("--accepts", metavar="WORD")
    p.add_argument("--limit", type=int)
    p.set_defaults(fn=_cmd_dfa)

    p = sub.add_parser("sat2lcp", parents=[fmt, infile], help="LCP array of a 3-CNF formula")
    p.set_defaults(fn=_cmd_sat2lcp)

    p = sub.add_parser("ccec-solve", parents=[fmt, infile], help="solve the cycle cover instance of a 3-CNF formula")
    p.add_argument("--cap", type=int, default=1 << 20)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=_cmd_ccec_solve)

    p = sub.add_parser("oracle", parents=[fmt], help="brute-force solution set of an LCP array")
    p.add_argument("--lcp", required=True)
    p.add_argument("--sigma", type=int, default=2)
    p.add_argument("--variant", choices=VARIANTS, default=Variant.CYCLIC_SET.value)
    p.add_argument("--guard", type=int, default=10**7)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("dot", parents=[infile], help="Graphviz rendering of a construction")
    p.add_argument("--target", choices=["ccec", "dfa", "bwtgraph"], required=True)
    p.add_argument("--lcp")
    p.add_argument("--sigma", type=int)
    p.set_defaults(fn=_cmd_dot)

    p = sub.add_parser("verify", parents=[fmt, infile], help="check infer/enumerate/single JSON against an LCP array")
    p.add_argument("--lcp", required=True)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InvalidLcpArray as exc:
        print(f"invalid LCP array: {exc}", file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 3
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
