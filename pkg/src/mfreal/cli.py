"""Command-line entry point.

    mfreal parse   'x : N |- succ(x) in N'
    mfreal interp  --in star.mtt
    mfreal eval    'ap(lam x. succ(x), y)' --bind y=4
    mfreal check   '|- star in N1'
    mfreal setcode 'Pi x : N1. N' --check
    mfreal suite   --which conversions --seed 1 --size 100
    mfreal realize --principle extfun
    mfreal derive  --check proof.der

Exit status: 0 when everything Holds (or checks), 1 on any Fails or error,
2 when the only shortfall is an Unknown and `--strict` is given, 64 on
usage errors.  JSON reports carry `"schema": 1` and print numerals of the
model as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import interp, judgements, pca, principles, rules
from . import syntax as S
from .logic import Budget, Verdict

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64
SUITES = ("conversions", "substitution", "coding", "laws", "corpus", "lemma")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    fuel: int = 100_000
    enum_bound: int = 64
    depth: int = 32
    seed: int = 0
    format: str = "text"
    strict: bool = False

    def budget(self) -> Budget:
        return Budget(fuel=self.fuel, enum_bound=self.enum_bound, depth=self.depth)


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError(f"{text} is not positive")
    return n


def _seed(text: str) -> int:
    n = int(text)
    if not 0 <= n < 1 << 64:
        raise argparse.ArgumentTypeError("the seed is a 64-bit natural")
    return n


def _binding(text: str) -> tuple:
    name, sep, value = text.partition("=")
    if not sep or not value.isdigit() or not name:
        raise argparse.ArgumentTypeError(f"expected x=n, got {text!r}")
    return name, int(value)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=_positive, default=100_000)
    common.add_argument("--enum-bound", type=_positive, default=64)
    common.add_argument("--depth", type=_positive, default=32)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--strict", action="store_true",
                        help="exit 2 when an outcome is Unknown")

    def with_input(p):
        p.add_argument("text", nargs="?", help="the input; omit it to use --in")
        p.add_argument("--in", dest="infile", metavar="FILE")

    top = _Parser(prog="mfreal", description="Realizability model of mTT with set codes.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", parents=[common], help="parse and pretty-print")
    with_input(p)
    p.add_argument("--as", dest="kind", choices=("judgement", "term", "type", "context"),
                   default=None, help="what to parse (default: guess)")

    p = sub.add_parser("interp", parents=[common], help="the PCA program of a term")
    with_input(p)
    p.add_argument("--vars", default="", help="comma-separated variables to abstract, in order")
    p.add_argument("--program", action="store_true", help="print the program, not its code")

    p = sub.add_parser("eval", parents=[common], help="evaluate a term")
    with_input(p)
    p.add_argument("--bind", type=_binding, action="append", default=[], metavar="x=n")

    p = sub.add_parser("check", parents=[common], help="check judgements in the model")
    with_input(p)

    p = sub.add_parser("setcode", parents=[common], help="the code of a set")
    with_input(p)
    p.add_argument("--check", action="store_true", help="also check the coding condition")

    p = sub.add_parser("suite", parents=[common], help="run a validation suite")
    p.add_argument("--which", choices=SUITES + ("all",), default="all")
    p.add_argument("--size", type=_positive, default=None)

    p = sub.add_parser("realize", parents=[common], help="realizers of the principles")
    p.add_argument("--principle", choices=tuple(principles.PRINCIPLES), required=True)
    p.add_argument("--validate", action="store_true")

    p = sub.add_parser("derive", parents=[common], help="check derivation files")
    p.add_argument("--check", metavar="FILE", dest="check_file")
    p.add_argument("--rules", action="store_true", help="list the rule table")
    return top


# ---------------------------------------------------------------------------


def _read_input(args) -> str:
    if args.infile is not None:
        if args.text is not None:
            raise UsageError("give the input either inline or with --in, not both")
        with open(args.infile, encoding="utf-8") as fh:
            return fh.read()
    if args.text is None:
        raise UsageError("no input: give it inline or with --in")
    return args.text


def _lines(text: str) -> list:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _status(verdicts) -> int:
    verdicts = list(verdicts)
    if any(v.fails for v in verdicts):
        return EXIT_FAIL
    if any(v.unknown for v in verdicts):
        return EXIT_UNKNOWN
    return EXIT_OK


class Output:
    def __init__(self, config: RunConfig):
        self.config = config

    def emit(self, command: str, payload: dict, text: str) -> None:
        if self.config.format == "json":
            body = {"schema": 1, "command": command, **payload}
            print(json.dumps(body, indent=2, ensure_ascii=False))
        else:
            print(text)


def _guess_kind(text: str) -> str:
    if "|-" in text:
        return "judgement"
    try:
        S.parse_term(text)
        return "term"
    except S.ParseError:
        return "type"


def cmd_parse(args, config, out) -> int:
    text = _read_input(args).strip()
    kind = args.kind or _guess_kind(text)
    node = S.parse(text, kind)
    shown = S.show_context(node) if kind == "context" else S.pretty_print(node)
    out.emit("parse", {"kind": kind, "pretty": shown}, shown)
    return EXIT_OK


def cmd_interp(args, config, out) -> int:
    t = S.parse_term(_read_input(args).strip())
    xs = [x.strip() for x in args.vars.split(",") if x.strip()]
    prog = interp.closed_program(t, xs)
    code = prog.code if prog.concrete else pca.encode(prog)
    pretty = pca.pretty(prog)
    out.emit("interp", {"code": str(code), "program": pretty},
             pretty if args.program else str(code))
    return EXIT_OK


def cmd_eval(args, config, out) -> int:
    t = S.parse_term(_read_input(args).strip())
    env = {}
    for name, value in args.bind:
        env[name] = value
    missing = S.free_vars(t) - set(env)
    if missing:
        raise UsageError(f"unbound variables: {', '.join(sorted(missing))} (use --bind x=n)")
    r = interp.evaluate(t, env, config.fuel)
    if isinstance(r, pca.Converged):
        out.emit("eval", {"result": "converged", "value": str(r.value), "steps": r.steps},
                 str(r.value))
        return EXIT_OK
    status = "stuck" if r.stuck else "diverged"
    out.emit("eval", {"result": status, "fuel": r.fuel}, f"{status} (fuel {r.fuel})")
    return EXIT_FAIL if r.stuck else EXIT_UNKNOWN


def cmd_check(args, config, out) -> int:
    lines = _lines(_read_input(args))
    rows, verdicts = [], []
    for ln in lines:
        v = judgements.check_judgement(S.parse_judgement(ln), config.budget())
        verdicts.append(v)
        rows.append({"judgement": ln, "verdict": v.to_json()})
    text = "\n".join(f"{_verdict_text(r['verdict'])}  {r['judgement']}" for r in rows)
    out.emit("check", {"results": rows}, text)
    return _status(verdicts)


def _verdict_text(v: dict) -> str:
    return v["status"] if "reason" not in v else f"{v['status']}({v['reason']})"


def cmd_setcode(args, config, out) -> int:
    A = S.parse_type(_read_input(args).strip())
    code_term = S.hat(A)
    r = interp.evaluate(code_term, {}, config.fuel)
    if not isinstance(r, pca.Converged):
        raise ValueError("the code did not evaluate within the fuel")
    payload = {"set": S.show(A), "code_term": S.show(code_term), "code": str(r.value)}
    lines = [str(r.value)]
    verdicts = []
    if args.check:
        v = judgements.check_coding(A, {}, config.budget(), config.seed)
        verdicts.append(v)
        payload["coding"] = v.to_json()
        lines.append(f"coding condition: {v}")
    out.emit("setcode", payload, "\n".join(lines))
    return _status(verdicts)


def run_suite(which: str, config: RunConfig, size: int | None = None) -> tuple:
    """(json payload, verdict-like outcome) of one suite."""
    budget = config.budget()
    seed = config.seed
    if which == "conversions":
        rep = judgements.run_conversion_suite(seed, size or 500, budget)
        return rep.to_json(), _report_status(rep.disagree, rep.unknown)
    if which == "substitution":
        rep = judgements.run_substitution_suite(seed, size or 1000, budget)
        return rep.to_json(), _report_status(rep.disagree, rep.unknown)
    if which == "coding":
        rep = judgements.run_coding_suite(seed, budget)
        return rep.to_json(), _report_status(rep.disagree, rep.unknown)
    if which == "laws":
        rep = judgements.relation_laws(seed, size or 30, budget)
        return {"suite": "laws", **rep.to_json()}, _report_status(len(rep.violations), 0)
    if which == "corpus":
        rep = judgements.run_corpus(budget, derivations=judgements.load_corpus_derivations())
        bad = rep["counts"]["Fails"] + (rep["total"] - rep["derived"])
        surprise = sum(1 for e in rep["entries"]
                       if e["verdict"]["status"] == "Unknown" and e["expected"] != "Unknown")
        return {"suite": "corpus", **rep}, _report_status(bad, surprise)
    if which == "lemma":
        rep = principles.run_lemma_suite(seed, size or 200,
                                         Budget(fuel=config.fuel, enum_bound=16,
                                                depth=config.depth))
        return {"suite": "lemma", **rep}, _report_status(rep["disagreements"], 0)
    raise UsageError(f"unknown suite {which}")


def _report_status(failures: int, unknowns: int) -> Verdict:
    from .logic import FAILS, HOLDS, unknown
    if failures:
        return FAILS
    return unknown("enum_bound") if unknowns else HOLDS


def cmd_suite(args, config, out) -> int:
    names = SUITES if args.which == "all" else (args.which,)
    reports, verdicts, text = [], [], []
    for name in names:
        payload, v = run_suite(name, config, args.size)
        reports.append(payload)
        verdicts.append(v)
        text.append(f"{name}: {_summary(payload)} -> {v}")
    out.emit("suite", {"seed": str(config.seed), "reports": reports}, "\n".join(text))
    return _status(verdicts)


def _summary(payload: dict) -> str:
    if "agree" in payload:
        return (f"{payload['total']} checked, {payload['agree']} agree, "
                f"{payload['disagree']} disagree, {payload['unknown']} unknown")
    if payload.get("suite") == "laws":
        parts = [f"{law} {row['decided']}/{row['violations']}"
                 for law, row in payload["laws"].items()]
        return "decided/violations: " + ", ".join(parts)
    if payload.get("suite") == "corpus":
        c = payload["counts"]
        return (f"{payload['total']} judgements, {payload['derived']} derivations ok, "
                f"{c['Holds']} Holds, {c['Unknown']} Unknown, {c['Fails']} Fails")
    return (f"{payload['total']} formulas, {payload['decided']} decided, "
            f"{payload['disagreements']} disagreements")


def cmd_realize(args, config, out) -> int:
    code = principles.realizer(args.principle)
    payload = {"principle": args.principle, "realizer": str(code),
               "program": pca.pretty(pca.decode(code))}
    lines = [str(code)]
    verdicts = []
    if args.validate:
        rep = principles.VALIDATORS[args.principle](config.budget())
        payload["validation"] = rep.to_json()
        verdicts.append(rep.verdict)
        lines.append(f"validation: {rep.verdict} on {len(rep.instances)} instances")
    out.emit("realize", payload, "\n".join(lines))
    return _status(verdicts)


def cmd_derive(args, config, out) -> int:
    if args.rules:
        table = [{"name": r.name, "display": r.display, "group": r.group, "schema": r.schema()}
                 for r in rules.rule_table()]
        text = "\n".join(f"{r['display']:<22} {r['schema']}" for r in table)
        out.emit("derive", {"rules": table}, text)
        return EXIT_OK
    if args.check_file is None:
        raise UsageError("derive needs --check FILE or --rules")
    with open(args.check_file, encoding="utf-8") as fh:
        items = rules.parse_derivations(fh.read())
    rows, failed = [], 0
    for i, item in enumerate(items):
        res = rules.check_derivation(item.derivation)
        failed += not res.ok
        rows.append({"index": i, "conclusion": S.show_judgement(item.derivation.conclusion),
                     "size": item.derivation.size(), **res.to_json()})
    text = "\n".join(f"{r['index']}: {'ok' if r['ok'] else 'error at ' + r['path']}"
                     + ("" if r["ok"] else f" ({r['rule']}): {r['message']}")
                     for r in rows)
    out.emit("derive", {"derivations": rows}, text or "no derivations")
    return EXIT_FAIL if failed or not rows else EXIT_OK


COMMANDS = {"parse": cmd_parse, "interp": cmd_interp, "eval": cmd_eval, "check": cmd_check,
            "setcode": cmd_setcode, "suite": cmd_suite, "realize": cmd_realize,
            "derive": cmd_derive}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"mfreal: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    config = RunConfig(args.fuel, args.enum_bound, args.depth, args.seed, args.format,
                       args.strict)
    try:
        code = COMMANDS[args.command](args, config, Output(config))
    except UsageError as e:
        print(f"mfreal: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (S.ParseError, rules.DerivationSyntaxError, OSError, ValueError) as e:
        print(f"mfreal: error: {e}", file=sys.stderr)
        return EXIT_FAIL
    if code == EXIT_UNKNOWN and not config.strict:
        return EXIT_OK
    return code


if __name__ == "__main__":
    sys.exit(main())
