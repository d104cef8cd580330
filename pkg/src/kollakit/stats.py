"""Corpus-level counts for a multi-annotator M2 file."""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass, field

from .m2 import M2Corpus


def is_punctuation(token: str) -> bool:
    return all(unicodedata.category(ch).startswith("P") for ch in token)


@dataclass(frozen=True)
class CorpusStats:
    sentence_count: int = 0
    reference_count: int = 0
    annotator_count: int = 0
    token_count: int = 0
    word_count: int = 0
    edit_count: int = 0
    error_label_histogram: dict[str, int] = field(default_factory=dict)
    edits_per_annotator: dict[int, int] = field(default_factory=dict)

    def as_pairs(self) -> list[tuple[str, object]]:
        pairs: list[tuple[str, object]] = [
            ("sentences", self.sentence_count),
            ("references", self.reference_count),
            ("annotators", self.annotator_count),
            ("tokens", self.token_count),
            ("words", self.word_count),
            ("edits", self.edit_count),
        ]
        pairs += [(f"edits.annotator.{a}", n) for a, n in self.edits_per_annotator.items()]
        pairs += [(f"label[{label}]", n) for label, n in self.error_label_histogram.items()]
        return pairs


def corpus_stats(corpus: M2Corpus) -> CorpusStats:
    """Count sentences, references, tokens and edits.

    Every annotator id in the corpus counts as one reference per sentence,
    whether or not that annotator changed the sentence. ``word_count``
    excludes tokens made only of punctuation.
    """
    annotators = corpus.annotators
    labels: Counter = Counter()
    per_annotator: Counter = Counter({a: 0 for a in annotators})
    tokens = words = 0
    for sentence in corpus:
        tokens += len(sentence.source_tokens)
        words += sum(not is_punctuation(t) for t in sentence.source_tokens)
        for edit in sentence.edits:
            if edit.is_noop:
                continue
            labels[edit.label] += 1
            per_annotator[edit.annotator] += 1
    return CorpusStats(
        sentence_count=len(corpus),
        reference_count=len(corpus) * len(annotators),
        annotator_count=len(annotators),
        token_count=tokens,
        word_count=words,
        edit_count=sum(labels.values()),
        error_label_histogram=dict(sorted(labels.items())),
        edits_per_annotator=dict(sorted(per_annotator.items())),
    )
