"""Command-line front end.

Exit codes: 0 on success, 1 when a check or verification fails, 2 on usage
errors (bad flags or violated preconditions).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import config, counting, parking, qanalog
from .algebra import MonomialFunctional, eval_with_functional, parse_expr, parse_rational, substitute
from .errors import OrderTooLarge, PFGrammarError, TooLarge
from .grammar import builtin_grammar, derive_n, parse_grammar

DEFAULT_SEED = 1729

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(PFGrammarError):
    pass


def _rat(text: str) -> Fraction:
    return parse_rational(text)


def _emit(args, human: str, obj) -> None:
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(human)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required flag(s): " + ", ".join("--" + m for m in missing))


def _str(x) -> str:
    return str(Fraction(x))


# -- count ------------------------------------------------------------------------

COUNT_METHODS = {
    "basic": ["formula", "inclexcl", "bruteforce"],
    "rational": ["formula", "inclexcl", "bruteforce"],
    "periodic": ["formula", "bruteforce", "egf", "grammar"],
    "u": ["inclexcl", "bruteforce"],
}


def _count_method(args, method: str) -> Fraction:
    kind = args.kind
    if kind == "basic":
        _need(args, "alpha", "beta", "n")
        u = parking.basic_threshold_vector(args.alpha, args.beta, args.n)
        if method == "formula":
            return counting.count_basic(args.alpha, args.beta, args.n)
        if method == "inclexcl":
            return counting.count_u_incl_excl(u)
        if args.alpha.denominator != 1 or args.beta.denominator != 1:
            raise UsageError("brute force needs integer alpha and beta")
        return Fraction(counting.count_bruteforce(u, max_enum=args.max_enum))
    if kind == "rational":
        _need(args, "a", "b")
        if method == "formula":
            return Fraction(counting.count_rational(args.a, args.b))
        counting.count_rational(args.a, args.b)  # gcd check
        u = parking.ab_threshold_vector(args.a, args.b, args.b)
        if method == "inclexcl":
            return counting.count_u_incl_excl(u)
        return Fraction(counting.count_bruteforce(u, max_enum=args.max_enum))
    if kind == "periodic":
        _need(args, "a", "b")
        a, b, k = args.a, args.b, args.k or 1
        if method == "formula":
            return Fraction(counting.count_periodic_specsum(a, b, k))
        if method == "bruteforce":
            return Fraction(counting.count_periodic_bruteforce(a, b, k, max_enum=args.max_enum))
        if method == "egf":
            return Fraction(counting.count_periodic_egf(a, b, k))
        return Fraction(counting.count_periodic_grammar_unscaled(a, b, k, max_order=args.max_order))
    _need(args, "u")
    if method == "inclexcl":
        return counting.count_u_incl_excl(args.u)
    return Fraction(counting.count_bruteforce(args.u, max_enum=args.max_enum))


def cmd_count(args) -> int:
    methods = COUNT_METHODS[args.kind]
    if args.method and args.method not in methods:
        raise UsageError(f"method {args.method!r} not available for {args.kind}; choose from {methods}")
    if not args.all_methods:
        value = _count_method(args, args.method or methods[0])
        _emit(args, _str(value), {"kind": args.kind, "value": _str(value)})
        return EXIT_OK
    results: dict[str, str | None] = {}
    lines = []
    for m in methods:
        try:
            v = _count_method(args, m)
        except (TooLarge, OrderTooLarge) as exc:
            results[m] = None
            lines.append(f"{m}: skipped ({exc})")
            continue
        results[m] = _str(v)
        lines.append(f"{m}: {_str(v)}")
    values = {v for v in results.values() if v is not None}
    verdict = "AGREE" if len(values) == 1 else "DISAGREE"
    lines.append(verdict)
    _emit(args, "\n".join(lines), {"kind": args.kind, "results": results, "verdict": verdict})
    return EXIT_OK if verdict == "AGREE" else EXIT_FAIL


# -- qpoly ------------------------------------------------------------------------


def _qpoly_and_thresholds(args):
    kind = args.kind
    if kind == "classical":
        _need(args, "n")
        return qanalog.q_classical(args.n), tuple(range(1, args.n + 1))
    if kind == "basic":
        _need(args, "a", "b", "n")
        return qanalog.q_basic(args.a, args.b, args.n), parking.basic_threshold_vector(args.a, args.b, args.n)
    if kind == "lemma52":
        _need(args, "l", "k")
        return qanalog.q_lemma52(args.l, args.k), parking.basic_threshold_vector(1, args.k, args.l)
    if kind == "thm24":
        _need(args, "a", "b", "d")
        poly = qanalog.q_theorem24(args.a, args.b, args.d)
        return poly, parking.ab_threshold_vector(args.a, args.b, args.b * args.d)
    if kind == "finalcor":
        _need(args, "b", "d")
        return qanalog.q_final_corollary(args.b, args.d), parking.block_threshold_vector(args.b, args.d)
    _need(args, "u")
    return qanalog.q_bruteforce(args.u, max_enum=args.max_enum), tuple(args.u)


def cmd_qpoly(args) -> int:
    poly, u = _qpoly_and_thresholds(args)
    dense = qanalog.dense_strings(poly)
    lines = [qanalog.human(poly), "dense: " + ",".join(dense)]
    obj = {"kind": args.kind, "human": qanalog.human(poly), "dense": dense}
    status = EXIT_OK
    if args.check:
        try:
            ok = qanalog.q_bruteforce(u, max_enum=args.max_enum) == poly
        except TooLarge:
            lines.append("CHECK SKIPPED (beyond enumeration bound)")
            obj["check"] = "skipped"
        else:
            lines.append("CHECK OK" if ok else "CHECK FAILED")
            obj["check"] = "ok" if ok else "failed"
            status = EXIT_OK if ok else EXIT_FAIL
    _emit(args, "\n".join(lines), obj)
    return status


# -- derive -----------------------------------------------------------------------


def _parse_subst(text: str | None) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    if not text:
        return out
    for item in text.split(","):
        name, sep, val = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"bad substitution {item!r}; expected name=value")
        out[name.strip()] = _rat(val)
    return out


def _parse_hook(text: str, grammar_vars) -> MonomialFunctional:
    kind, _, params = text.partition(":")
    opts = dict(_parse_subst(params)) if params else {}
    k = opts.get("k")
    if k is None:
        k = sum(1 for v in grammar_vars if v.startswith("t") and v[1:].isdigit())
    k = int(k)
    if k < 1:
        raise UsageError("hook needs t-variables; pass k=<int>")
    if kind == "spec":
        if "b" not in opts:
            raise UsageError("spec hook needs b=<int>")
        return counting.spec_hook(k, int(opts["b"]))
    if kind == "neutral":
        return counting.neutral_t_hook(k)
    raise UsageError(f"unknown hook {kind!r}; use spec:b=<int>[,k=<int>] or neutral[:k=<int>]")


def cmd_derive(args) -> int:
    if args.grammar_file:
        grammar = parse_grammar(Path(args.grammar_file).read_text())
    elif args.grammar:
        grammar = builtin_grammar(args.grammar, order=args.n)
    else:
        raise UsageError("give -g NAME or --grammar-file PATH")
    start = parse_expr(args.start)
    result = derive_n(grammar, start, args.n, max_order=args.max_order)
    subst = _parse_subst(args.subst)
    if args.hook:
        hook = _parse_hook(args.hook, grammar.rules)
        value = eval_with_functional(result, subst, hook)
        _emit(args, _str(value), {"value": _str(value)})
        return EXIT_OK
    if subst:
        result = substitute(result, subst)
    if result.is_constant():
        value = result.constant_value()
        _emit(args, _str(value), {"value": _str(value)})
    else:
        _emit(args, str(result), result.to_json_obj())
    return EXIT_OK


# -- convert / check / enumerate / spec -------------------------------------------


def cmd_convert(args) -> int:
    d = args.direction
    if d == "dyck2pf":
        _need(args, "path")
        path = parking.parse_path(args.path)
        if args.a is not None and args.a != path.a or args.b is not None and args.b != path.b:
            raise UsageError(f"path goes to ({path.b},{path.a}), not ({args.b},{args.a})")
        seq = parking.pf_of_path(path)
        _emit(args, parking.format_seq(seq), list(seq))
        return EXIT_OK
    _need(args, "seq")
    seq = parking.parse_int_seq(args.seq)
    if d == "ab2u":
        out = parking.ab_to_u_pf(seq)
        _emit(args, parking.format_seq(out), list(out))
    elif d == "u2ab":
        out = parking.u_to_ab_pf(seq)
        _emit(args, parking.format_seq(out), list(out))
    else:
        _need(args, "a", "b")
        path = parking.dyck_path_of(seq, args.a, args.b)
        _emit(args, str(path), {"a": path.a, "b": path.b, "path": str(path)})
    return EXIT_OK


def cmd_check(args) -> int:
    _need(args, "seq")
    seq = parking.parse_int_seq(args.seq)
    if args.u is not None:
        ok = parking.is_u_parking(seq, args.u)
    elif args.x is not None:
        ok = parking.is_x_parking(seq, args.x)
    elif args.a is not None and args.b is not None:
        ok = parking.is_ab_parking(seq, args.a, args.b)
    else:
        raise UsageError("give -u THRESHOLDS, -x WEIGHTS, or -a/-b for the 0-indexed (a,b) form")
    _emit(args, "true" if ok else "false", {"parking": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_enumerate(args) -> int:
    if args.u is not None:
        u = args.u
    elif args.a is not None and args.b is not None:
        u = parking.ab_threshold_vector(args.a, args.b, args.b * (args.k or 1))
    else:
        raise UsageError("give -u THRESHOLDS or -a/-b [-k]")
    seqs = parking.enumerate_u_parking(u, max_enum=args.max_enum)
    if args.ab_form:
        seqs = [parking.u_to_ab_pf(s) for s in seqs]
    _emit(args, "\n".join(parking.format_seq(s) for s in seqs), [list(s) for s in seqs])
    return EXIT_OK


def cmd_spec(args) -> int:
    if args.seq is not None:
        seq = parking.parse_int_seq(args.seq)
        m = args.m if args.m is not None else max(seq, default=0)
        j = parking.specification(seq, m)
        _emit(args, parking.format_seq(j), list(j))
        return EXIT_OK
    _need(args, "k", "b")
    comps = counting.spec_compositions(args.k, args.b)
    _emit(args, "\n".join(parking.format_seq(J) for J in comps), [list(J) for J in comps])
    return EXIT_OK


# -- verify -----------------------------------------------------------------------


def _rand_rational(rng: random.Random, nonzero: bool = True) -> Fraction:
    while True:
        x = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
        if x or not nonzero:
            return x


def _fmt_list(xs) -> str:
    return "[" + ",".join(str(x) for x in xs) + "]"


def _suite_abel(args, rng, trials):
    for _ in range(trials):
        k = args.k or rng.randint(1, 4)
        n = args.n or rng.randint(1, 6)
        xs = [_rand_rational(rng) for _ in range(k)]
        lhs, rhs = counting.abel_identity_sides(xs, n)
        yield lhs == rhs, f"abel k={k} n={n} xs={_fmt_list(xs)} value={lhs}"


def _suite_cor3(args, rng, trials):
    for _ in range(trials):
        k = args.k or rng.randint(1, 4)
        n = args.n or rng.randint(1, 6)
        x = _rand_rational(rng)
        while x == k:
            x = _rand_rational(rng)
        lhs, rhs = counting.cor3_sides(x, n, k)
        yield lhs == rhs, f"cor3 x={x} n={n} k={k} value={lhs}"


def _suite_scaling(args, rng, trials):
    factors = [Fraction(2), Fraction(3), Fraction(5, 2)]
    for _ in range(trials):
        n = args.n or rng.randint(1, 6)
        u = [_rand_rational(rng, nonzero=False) for _ in range(n)]
        f = rng.choice(factors)
        yield counting.check_scaling(u, f), f"scaling u={_fmt_list(u)} factor={f}"


def _suite_thm15(args, rng, trials):
    cases = [(args.a, args.b, args.k or 1)] if args.a and args.b else [(3, 2, 2), (2, 3, 2)]
    for a, b, k in cases:
        report = counting.periodic_report(a, b, k, max_enum=args.max_enum, max_order=args.max_order)
        done = {m: v for m, v in report.items() if v is not None}
        ok = len(set(done.values())) == 1
        detail = " ".join(f"{m}={v}" for m, v in report.items())
        yield ok, f"thm15 a={a} b={b} k={k} {detail} {'AGREE' if ok else 'DISAGREE'}"


def _suite_thm24(args, rng, trials):
    cases = [(args.a, args.b, args.d)] if args.a and args.b and args.d else [(3, 2, 1), (3, 2, 2), (4, 3, 1)]
    for a, b, d in cases:
        formula = qanalog.q_theorem24(a, b, d)
        brute = qanalog.q_bruteforce(parking.ab_threshold_vector(a, b, d * b), max_enum=args.max_enum)
        yield formula == brute, f"thm24 a={a} b={b} d={d} poly={formula}"


SUITES = {
    "abel": _suite_abel,
    "cor3": _suite_cor3,
    "scaling": _suite_scaling,
    "thm15": _suite_thm15,
    "thm24": _suite_thm24,
}


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    trials = args.trials if args.trials is not None else (10 if args.quick else 100)
    rng = random.Random(args.seed)
    lines, summary, all_ok = [], {}, True
    for name in names:
        passed = total = 0
        for ok, desc in SUITES[name](args, rng, trials):
            total += 1
            passed += ok
            lines.append(f"{'PASS' if ok else 'FAIL'} {desc}")
        summary[name] = {"passed": passed, "total": total}
        all_ok &= passed == total
    for name, s in summary.items():
        lines.append(f"{name}: {s['passed']}/{s['total']} PASS")
    lines.append("ALL PASS" if all_ok else "FAILURES")
    _emit(args, "\n".join(lines), {"seed": args.seed, "summary": summary, "ok": all_ok})
    return EXIT_OK if all_ok else EXIT_FAIL


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-order", type=int, default=None,
                        help=f"derivative order cap (env {config.ORDER_ENV}, default 12)")
    common.add_argument("--max-enum", type=int, default=None,
                        help=f"brute-force length cap (env {config.ENUM_ENV}, default 8)")

    parser = argparse.ArgumentParser(prog="pfgrammar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count parking functions")
    p.add_argument("kind", choices=list(COUNT_METHODS))
    p.add_argument("-a", type=int)
    p.add_argument("-b", type=int)
    p.add_argument("-k", type=int)
    p.add_argument("-n", type=int)
    p.add_argument("--alpha", type=_rat)
    p.add_argument("--beta", type=_rat)
    p.add_argument("-u", type=parking.parse_rational_seq)
    p.add_argument("--method", choices=sorted({m for ms in COUNT_METHODS.values() for m in ms}))
    p.add_argument("--all-methods", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("qpoly", parents=[common], help="q-analogue polynomials")
    p.add_argument("kind", choices=["classical", "basic", "lemma52", "thm24", "finalcor", "bruteforce"])
    p.add_argument("-a", type=int)
    p.add_argument("-b", type=int)
    p.add_argument("-n", type=int)
    p.add_argument("-l", type=int)
    p.add_argument("-k", type=_rat, help="weight (a-1)/b for lemma52; p/q allowed")
    p.add_argument("-d", type=int)
    p.add_argument("-u", type=parking.parse_rational_seq)
    p.add_argument("--check", action="store_true", help="compare against brute force")
    p.set_defaults(func=cmd_qpoly)

    p = sub.add_parser("derive", parents=[common], help="apply a grammar derivative")
    p.add_argument("-g", "--grammar", help="G | H | Hprime:k | H1:a:b | K:k | F")
    p.add_argument("--grammar-file", help="file of '<var> -> <expression>' rules")
    p.add_argument("-s", "--start", required=True, help="start expression, e.g. z1*z2")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--subst", help="comma-separated name=value")
    p.add_argument("--hook", help="spec:b=<int>[,k=<int>] or neutral[:k=<int>]")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("convert", parents=[common], help="convert between representations")
    p.add_argument("direction", choices=["ab2u", "u2ab", "pf2dyck", "dyck2pf"])
    p.add_argument("-s", "--seq")
    p.add_argument("-p", "--path")
    p.add_argument("-a", type=int)
    p.add_argument("-b", type=int)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("check", parents=[common], help="test a sequence for parking")
    p.add_argument("-s", "--seq")
    p.add_argument("-u", type=parking.parse_rational_seq)
    p.add_argument("-x", type=parking.parse_rational_seq)
    p.add_argument("-a", type=int)
    p.add_argument("-b", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", parents=[common], help="list parking functions")
    p.add_argument("-u", type=parking.parse_rational_seq)
    p.add_argument("-a", type=int)
    p.add_argument("-b", type=int)
    p.add_argument("-k", type=int)
    p.add_argument("--ab-form", action="store_true", help="print 0-indexed (a,b) form")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("spec", parents=[common], help="spec(k,b) compositions or a sequence's specification")
    p.add_argument("-k", type=int)
    p.add_argument("-b", type=int)
    p.add_argument("-s", "--seq")
    p.add_argument("-m", type=int)
    p.set_defaults(func=cmd_spec)

    p = sub.add_parser("verify", parents=[common], help="batch identity checks")
    p.add_argument("suite", choices=[*SUITES, "all"])
    p.add_argument("-k", "--k", type=int)
    p.add_argument("-n", "--n", type=int)
    p.add_argument("-a", type=int)
    p.add_argument("-b", type=int)
    p.add_argument("-d", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--quick", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PFGrammarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
