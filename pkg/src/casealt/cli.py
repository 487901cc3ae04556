"""Command-line front end.

Exit codes: 0 success / YES; 1 unknown token or bad input; 2 no parse;
3 inference does not hold (``infer``).  ``suite`` exits 0 iff every verdict
matches its expectation, 1 otherwise.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from casealt.entailment import UnsupportedShape, analyze_sentence, entails
from casealt.lexicon import BUILTINS, LexiconError, UnknownToken, dump_lexicon, resolve_lexicon
from casealt.parser import NoParse, parse, render_derivation, sentence_semantics
from casealt.suite import run_suite
from casealt.terms import FuelExhausted, print_term

EXIT_OK, EXIT_INPUT, EXIT_NOPARSE, EXIT_NO = 0, 1, 2, 3


def _tokens(words: Sequence[str]) -> list[str]:
    return [tok for w in words for tok in w.split()]


def _lexicon(name: str):
    try:
        return resolve_lexicon(name)
    except (OSError, LexiconError) as exc:
        raise SystemExit(f"casealt: {exc}") from None


def cmd_parse(args: argparse.Namespace) -> int:
    lexicon = _lexicon(args.lexicon)
    sentences = [_tokens(args.sentence)] if args.sentence else []
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            sentences += [line.split() for line in fh if line.strip() and not line.startswith("#")]
    if not sentences:
        print("casealt: nothing to parse", file=sys.stderr)
        return EXIT_INPUT

    status = EXIT_OK
    for tokens in sentences:
        try:
            result = parse(tokens, lexicon)
        except UnknownToken as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_INPUT
        print(f"# {' '.join(tokens)}: {len(result.derivations)} derivation(s)")
        if not result.derivations:
            status = EXIT_NOPARSE
        for n, root in enumerate(result.derivations, 1):
            print(f"[{n}] {root.rule_tree()}")
            if args.show_tree:
                print(render_derivation(root))
            if args.show_sem:
                lf = sentence_semantics(root, lexicon)
                print(f"    LF: {print_term(lf, lexicon.closure.syntax)}")
    return status


def cmd_infer(args: argparse.Namespace) -> int:
    lexicon = _lexicon(args.lexicon)
    analyses = []
    for side, text in (("premise", args.premise), ("conclusion", args.conclusion)):
        try:
            analyses.append(analyze_sentence(text.split(), lexicon))
        except UnknownToken as exc:
            print(f"{side}: {exc}", file=sys.stderr)
            return EXIT_INPUT
        except NoParse as exc:
            print(f"{side}: {exc}", file=sys.stderr)
            return EXIT_NOPARSE
        except (UnsupportedShape, FuelExhausted) as exc:
            print(f"{side}: {exc}", file=sys.stderr)
            return EXIT_INPUT
    premise, conclusion = analyses
    syntax = lexicon.closure.syntax
    print(f"premise:    {print_term(premise.logical_form, syntax)}")
    print(f"conclusion: {print_term(conclusion.logical_form, syntax)}")
    verdict = entails(premise.normal_form, conclusion.normal_form)
    if verdict.diagnostic:
        print(f"note: {verdict.diagnostic}")
    print("YES" if verdict.holds else "NO")
    return EXIT_OK if verdict.holds else EXIT_NO


def cmd_suite(args: argparse.Namespace) -> int:
    names = list(BUILTINS) if args.lexicon == "all" else [args.lexicon]
    report = run_suite([BUILTINS[n]() for n in names])
    print(report.dumps() if args.format == "json" else report.render_text())
    return EXIT_OK if report.ok else EXIT_INPUT


def cmd_lexicon_dump(args: argparse.Namespace) -> int:
    sys.stdout.write(dump_lexicon(_lexicon(args.lexicon)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="casealt", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse pre-segmented sentences")
    p.add_argument("sentence", nargs="*", help="morphemes separated by whitespace")
    p.add_argument("--lexicon", default="bekki", help="bekki, ccgbank, or a lexicon file")
    p.add_argument("--file", help="file with one whitespace-segmented sentence per line")
    p.add_argument("--show-sem", action="store_true", help="print closed logical forms")
    p.add_argument("--show-tree", action="store_true", help="print derivation trees")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("infer", help="check whether a premise entails a conclusion")
    p.add_argument("premise")
    p.add_argument("conclusion")
    p.add_argument("--lexicon", default="bekki")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("suite", help="run the built-in passive/causative inference suite")
    p.add_argument("--lexicon", default="all", choices=["all", *BUILTINS])
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("lexicon-dump", help="print a lexicon in file format")
    p.add_argument("--lexicon", default="bekki")
    p.set_defaults(func=cmd_lexicon_dump)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
