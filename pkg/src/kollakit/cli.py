"""Command-line front end: ``kolla <command> ...``.

Data goes to stdout (or ``--output``), diagnostics to stderr. Exit status is
0 on success, 1 for bad input and 2 for internal errors. Options fall back to
``KOLLA_*`` environment variables when not given on the command line.
"""

from __future__ import annotations

import argparse
import os
import sys
import traceback
from pathlib import Path
from typing import Optional, Sequence

from .classify import NormalizationTable, annotate_pair
from .hangul import Lexicon, default_lexicon, read_tagged_file, tokenize
from .m2 import (M2Corpus, build_sentence, lint, merge_corpora, parse_m2, serialize_m2,
                 split_by_annotator)
from .rubric import COLUMN_ORDERS, ESSAY_MAJOR, GROUPS, kappa_report, parse_scores
from .scorer import SELECTIONS, SENTENCE, evaluate, hypothesis_from_text
from .stats import corpus_stats

ENV_PREFIX = "KOLLA_"


class InputError(Exception):
    """Bad input or broken contract; reported with exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name, default)


def _score_range(text: str) -> tuple[int, int]:
    try:
        low, high = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX, got {text!r}") from None
    if low > high:
        raise argparse.ArgumentTypeError(f"empty score range {text!r}")
    return low, high


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_m2(path: str) -> M2Corpus:
    try:
        return parse_m2(_read(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _lines(text: str) -> list[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line.rstrip("\r") for line in lines]


def _write(args, text: str) -> None:
    if args.output and args.output != "-":
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _lexicon(args) -> Lexicon:
    path = args.lexicon or _env("LEXICON")
    return Lexicon.from_file(path) if path else default_lexicon()


def _key_values(pairs) -> str:
    return "".join(f"{key}={value}\n" for key, value in pairs)


def cmd_annotate(args) -> int:
    lexicon = _lexicon(args)
    sources = _lines(_read(args.source))
    targets = _lines(_read(args.target))
    if len(sources) != len(targets):
        raise InputError(f"line count {len(sources)} vs {len(targets)}")
    if args.source_pos:
        sources = read_tagged_file(_read(args.source_pos), lexicon)
    if args.target_pos:
        targets = read_tagged_file(_read(args.target_pos), lexicon)
    if len(sources) != len(targets):
        raise InputError(f"token-annotation line count {len(sources)} vs {len(targets)}")
    normalization = NormalizationTable.from_file(args.normalization) if args.normalization else None

    sentences = []
    for src, tgt in zip(sources, targets):
        edits = annotate_pair(src, tgt, args.annotator_id, lexicon=lexicon,
                              normalization=normalization)
        if isinstance(src, str):
            text = normalization.apply(src) if normalization else src
            tokens = [t.surface for t in tokenize(text, lexicon)]
        else:
            tokens = [t.surface for t in src]
        sentences.append(build_sentence(tokens, edits, [args.annotator_id], noop=not args.no_noop))
    _write(args, serialize_m2(M2Corpus(tuple(sentences))))
    return 0


def cmd_merge(args) -> int:
    corpora = [_read_m2(path) for path in args.files]
    _write(args, serialize_m2(merge_corpora(corpora)))
    return 0


def cmd_split(args) -> int:
    corpus = _read_m2(args.file)
    for annotator, part in split_by_annotator(corpus).items():
        path = Path(f"{args.prefix}.{annotator}.m2")
        path.write_text(serialize_m2(part), encoding="utf-8")
        print(path)
    return 0


def cmd_score(args) -> int:
    gold = _read_m2(args.gold)
    text = _read(args.hyp)
    fmt = args.hyp_format
    if fmt == "auto":
        first = next((line for line in _lines(text) if line.strip()), "")
        fmt = "m2" if first.startswith("S ") or first == "S" else "text"
    if fmt == "m2":
        hyp = _read_m2(args.hyp)
    else:
        hyp = hypothesis_from_text(_lines(text), gold, lexicon=_lexicon(args))
    report = evaluate(hyp, gold, args.beta, match_labels=args.match_labels,
                      selection=args.selection)
    agg = report.aggregate
    if args.report:
        lines = [
            f"{'TP':>6} {'FP':>6} {'FN':>6} {'Prec':>8} {'Rec':>8} {'F' + str(args.beta):>8}",
            f"{agg.tp:>6} {agg.fp:>6} {agg.fn:>6} {report.precision:>8.4f} "
            f"{report.recall:>8.4f} {report.f_beta:>8.4f}",
            "",
            "chosen reference  sentences",
        ]
        lines += [f"{a:>16}  {n:>9}" for a, n in report.chosen_distribution().items()]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        pairs = [("tp", agg.tp), ("fp", agg.fp), ("fn", agg.fn),
                 ("precision", f"{report.precision:.4f}"), ("recall", f"{report.recall:.4f}"),
                 (f"f{args.beta}", f"{report.f_beta:.4f}")]
        pairs += [(f"chosen.annotator.{a}", n) for a, n in report.chosen_distribution().items()]
        sys.stdout.write(_key_values(pairs))
    return 0


def cmd_kappa(args) -> int:
    sheets = []
    for group, path in zip(GROUPS, (args.fb, args.fi, args.hb, args.hi)):
        try:
            sheets.append(parse_scores(_read(path), group, column_order=args.column_order,
                                       score_range=args.score_range))
        except ValueError as exc:
            raise InputError(f"{path}: {exc}") from None
    report = kappa_report(sheets, require_all=True)
    values = [report.per_group[g] for g in GROUPS] + [report.overall]
    names = [g.name for g in GROUPS] + ["All"]
    if args.report:
        sys.stdout.write(" ".join(f"{n:>6}" for n in names) + "\n"
                         + " ".join(f"{v:.4f}" for v in values) + "\n")
    else:
        sys.stdout.write(_key_values((f"kappa.{n}", f"{v:.4f}") for n, v in zip(names, values)))
    return 0


def cmd_stats(args) -> int:
    stats = corpus_stats(_read_m2(args.file))
    if args.report:
        width = max([len(k) for k, _ in stats.as_pairs()] + [1])
        sys.stdout.write("".join(f"{k:<{width}}  {v}\n" for k, v in stats.as_pairs()))
    else:
        sys.stdout.write(_key_values(stats.as_pairs()))
    return 0


def cmd_validate(args) -> int:
    corpus = _read_m2(args.file)
    findings = lint(corpus, args.expect_annotators)
    for finding in findings:
        print(finding)
    sys.stdout.write(_key_values([("sentences", len(corpus)), ("findings", len(findings))]))
    return 1 if findings else 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kolla", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def lexicon_opt(p):
        p.add_argument("--lexicon", help="particle lexicon file (surface<TAB>ADP|PART)")

    p = sub.add_parser("annotate", help="classify edits of line-aligned source/target files into M2")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--annotator-id", type=int, default=int(_env("ANNOTATOR_ID", 0)))
    p.add_argument("--no-noop", action="store_true", help="omit noop lines for unchanged sentences")
    p.add_argument("--normalization", help="pattern<TAB>replacement table applied before tokenizing")
    p.add_argument("--source-pos", help="surface/POS token file aligned with SOURCE")
    p.add_argument("--target-pos", help="surface/POS token file aligned with TARGET")
    p.add_argument("-o", "--output")
    lexicon_opt(p)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("merge", help="merge per-annotator M2 files into one multi-reference file")
    p.add_argument("files", nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("split", help="write one M2 file per annotator (PREFIX.<id>.m2)")
    p.add_argument("file")
    p.add_argument("--prefix", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("score", help="multi-reference edit-level P/R/F-beta")
    p.add_argument("hyp")
    p.add_argument("gold")
    p.add_argument("--beta", type=float, default=float(_env("BETA", 0.5)))
    p.add_argument("--hyp-format", choices=("auto", "m2", "text"), default="auto")
    p.add_argument("--match-labels", action="store_true", help="require labels to match too")
    p.add_argument("--selection", choices=SELECTIONS, default=SENTENCE,
                   help="best reference per sentence, or the assignment maximising corpus F")
    p.add_argument("--report", action="store_true", help="human-readable table")
    lexicon_opt(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("kappa", help="Cohen's kappa per learner group and pooled")
    for name in ("fb", "fi", "hb", "hi"):
        p.add_argument(name)
    p.add_argument("--column-order", choices=COLUMN_ORDERS,
                   default=_env("COLUMN_ORDER", ESSAY_MAJOR))
    p.add_argument("--score-range", type=_score_range,
                   default=_score_range(_env("SCORE_RANGE", "0:10")), metavar="MIN:MAX")
    p.add_argument("--report", action="store_true", help="human-readable table")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("stats", help="corpus statistics of an M2 file")
    p.add_argument("file")
    p.add_argument("--report", action="store_true", help="aligned text instead of key=value")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("validate", help="parse and lint an M2 file")
    p.add_argument("file")
    p.add_argument("--expect-annotators", type=int,
                   default=int(_env("EXPECT_ANNOTATORS", 2)))
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "beta", 1.0) <= 0:
            raise InputError("--beta must be positive")
        return args.func(args)
    except InputError as exc:
        print(f"kolla: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"kolla: error: {exc}", file=sys.stderr)
        return 1
    except Exception:
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
