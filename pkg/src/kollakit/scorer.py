"""Edit-level GEC evaluation against one or more reference annotators.

Each sentence is scored against every gold annotator and the reference that
maximises sentence-level F-beta is kept; corpus precision, recall and F-beta
are computed from the summed counts of the chosen references.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .classify import Edit, annotate_pair
from .hangul import Lexicon
from .m2 import AnnotatedSentence, M2Corpus, build_sentence


class CorpusMismatchError(ValueError):
    def __init__(self, message: str, sentence: int):
        super().__init__(message)
        self.sentence = sentence


@dataclass(frozen=True)
class MatchCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn) < 0:
            raise ValueError("match counts must be non-negative")

    def __add__(self, other: "MatchCounts") -> "MatchCounts":
        return MatchCounts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)

    @property
    def precision(self) -> float:
        return precision(self.tp, self.fp)

    @property
    def recall(self) -> float:
        return recall(self.tp, self.fn)

    def f_beta(self, beta: float = 0.5) -> float:
        return f_beta(self.precision, self.recall, beta)


def precision(tp: int, fp: int) -> float:
    return 1.0 if tp + fp == 0 else tp / (tp + fp)


def recall(tp: int, fn: int) -> float:
    return 1.0 if tp + fn == 0 else tp / (tp + fn)


def f_beta(p: float, r: float, beta: float = 0.5) -> float:
    if beta <= 0:
        raise ValueError("beta must be positive")
    b2 = beta * beta
    denom = b2 * p + r
    if denom == 0:
        return 0.0
    return (1 + b2) * p * r / denom


def _key(edit: Edit, with_label: bool):
    if with_label:
        return (edit.start, edit.end, edit.replacement, edit.label)
    return (edit.start, edit.end, edit.replacement)


def match_edits(hyp: Iterable[Edit], gold: Iterable[Edit], *,
                match_labels: bool = False) -> MatchCounts:
    """Count one-to-one matches on (span, replacement); noops are ignored."""
    h = Counter(_key(e, match_labels) for e in hyp if not e.is_noop)
    g = Counter(_key(e, match_labels) for e in gold if not e.is_noop)
    tp = sum((h & g).values())
    return MatchCounts(tp, sum(h.values()) - tp, sum(g.values()) - tp)


@dataclass(frozen=True)
class EvalReport:
    per_sentence: tuple[tuple[int, MatchCounts], ...]
    aggregate: MatchCounts
    beta: float = 0.5
    precision: float = field(init=False)
    recall: float = field(init=False)
    f_beta: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "precision", self.aggregate.precision)
        object.__setattr__(self, "recall", self.aggregate.recall)
        object.__setattr__(self, "f_beta", self.aggregate.f_beta(self.beta))

    def chosen_distribution(self) -> dict[int, int]:
        return dict(sorted(Counter(a for a, _ in self.per_sentence).items()))


def best_reference(hyp: Sequence[Edit], sentence: AnnotatedSentence, annotators: Sequence[int],
                   beta: float = 0.5, match_labels: bool = False) -> tuple[int, MatchCounts]:
    """Pick the annotator whose edits give the highest sentence F-beta.

    Ties go to more true positives, then to the lower annotator id.
    """
    best = None
    for annotator in sorted(annotators):
        counts = match_edits(hyp, sentence.edits_for(annotator), match_labels=match_labels)
        key = (counts.f_beta(beta), counts.tp, -annotator)
        if best is None or key > best[0]:
            best = (key, annotator, counts)
    return best[1], best[2]


SENTENCE, CORPUS = "sentence", "corpus"
SELECTIONS = (SENTENCE, CORPUS)


def _climb(table: list[dict[int, MatchCounts]], choice: list[int], beta: float) -> list[int]:
    """Switch single sentences to another reference while corpus F strictly rises."""
    total = MatchCounts()
    for row, a in zip(table, choice):
        total = total + row[a]
    improved = True
    while improved:
        improved = False
        for i, row in enumerate(table):
            current = row[choice[i]]
            base = MatchCounts(total.tp - current.tp, total.fp - current.fp, total.fn - current.fn)
            best_f, best_a = total.f_beta(beta), choice[i]
            for a in sorted(row):
                f = (base + row[a]).f_beta(beta)
                if f > best_f:
                    best_f, best_a = f, a
            if best_a != choice[i]:
                choice[i] = best_a
                total = base + row[best_a]
                improved = True
    return choice


def _corpus_choice(table: list[dict[int, MatchCounts]], first: list[int], annotators: Sequence[int],
                   beta: float) -> list[int]:
    starts = [list(first)] + [[a] * len(table) for a in sorted(annotators)]
    best, best_f = None, -1.0
    for start in starts:
        choice = _climb(table, start, beta)
        total = MatchCounts()
        for row, a in zip(table, choice):
            total = total + row[a]
        if total.f_beta(beta) > best_f:
            best, best_f = choice, total.f_beta(beta)
    return best


def evaluate(hyp_corpus: M2Corpus, gold_corpus: M2Corpus, beta: float = 0.5, *,
             hyp_annotator: int = 0, match_labels: bool = False,
             selection: str = SENTENCE) -> EvalReport:
    """Score a system M2 (its ``hyp_annotator`` edits) against a multi-reference gold M2.

    Every annotator id seen anywhere in the gold corpus is a reference for
    every sentence; an annotator with no edits on a sentence stands for the
    unchanged source.

    With ``selection="sentence"`` each sentence keeps the reference with the
    best sentence-level F. Summed over a corpus this can fall slightly below
    the score against one fixed annotator. ``selection="corpus"`` instead
    searches reference assignments by single-sentence switches that raise
    corpus F, starting from the per-sentence choice and from every fixed
    annotator, so its result is never below any single-reference score.
    """
    if selection not in SELECTIONS:
        raise ValueError(f"selection must be one of {SELECTIONS}, got {selection!r}")
    if len(hyp_corpus) != len(gold_corpus):
        raise CorpusMismatchError(
            f"hypothesis has {len(hyp_corpus)} sentences, gold has {len(gold_corpus)}",
            min(len(hyp_corpus), len(gold_corpus)) + 1)
    annotators = gold_corpus.annotators or [0]
    per_sentence = []
    table = []
    for index, (hyp, gold) in enumerate(zip(hyp_corpus, gold_corpus), 1):
        if hyp.source_tokens != gold.source_tokens:
            raise CorpusMismatchError(f"source tokens differ at sentence {index}", index)
        mine = hyp.edits_for(hyp_annotator)
        per_sentence.append(best_reference(mine, gold, annotators, beta, match_labels))
        if selection == CORPUS:
            table.append({a: match_edits(mine, gold.edits_for(a), match_labels=match_labels)
                          for a in annotators})
    if selection == CORPUS:
        choice = _corpus_choice(table, [a for a, _ in per_sentence], annotators, beta)
        per_sentence = [(a, row[a]) for a, row in zip(choice, table)]
    total = MatchCounts()
    for _, counts in per_sentence:
        total = total + counts
    return EvalReport(tuple(per_sentence), total, beta)


def hypothesis_from_text(lines: Sequence[str], gold_corpus: M2Corpus, *,
                         lexicon: Optional[Lexicon] = None) -> M2Corpus:
    """Turn plain corrected sentences (one per gold sentence) into a system M2."""
    if len(lines) != len(gold_corpus):
        raise CorpusMismatchError(
            f"hypothesis has {len(lines)} lines, gold has {len(gold_corpus)} sentences",
            min(len(lines), len(gold_corpus)) + 1)
    sentences = []
    for gold, line in zip(gold_corpus, lines):
        edits = annotate_pair(" ".join(gold.source_tokens), line, 0, lexicon=lexicon)
        sentences.append(build_sentence(gold.source_tokens, edits, noop=False))
    return M2Corpus(tuple(sentences))
