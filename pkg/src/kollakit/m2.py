"""Multi-annotator M2 files: parse, serialize, apply and lint."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .classify import NOOP_LABEL, Edit

FIELD_SEP = "|||"


class M2ParseError(ValueError):
    def __init__(self, lineno: int, reason: str):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno
        self.reason = reason


@dataclass(frozen=True)
class AnnotatedSentence:
    source_tokens: tuple[str, ...]
    edits: tuple[Edit, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "source_tokens", tuple(self.source_tokens))
        object.__setattr__(self, "edits", tuple(self.edits))
        problem = _sentence_problem(self.source_tokens, self.edits)
        if problem:
            raise ValueError(problem)

    @property
    def annotators(self) -> list[int]:
        return sorted({e.annotator for e in self.edits})

    def edits_for(self, annotator: int) -> list[Edit]:
        """Real (non-noop) edits of one annotator, in file order."""
        return [e for e in self.edits if e.annotator == annotator and not e.is_noop]


@dataclass(frozen=True)
class M2Corpus:
    sentences: tuple[AnnotatedSentence, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    def __getitem__(self, index):
        return self.sentences[index]

    @property
    def annotators(self) -> list[int]:
        return sorted({e.annotator for s in self.sentences for e in s.edits})


def _sentence_problem(tokens: Sequence[str], edits: Sequence[Edit]) -> Optional[str]:
    n = len(tokens)
    by_annotator: dict[int, list[Edit]] = {}
    for edit in edits:
        if not edit.is_noop and edit.end > n:
            return f"span {edit.start} {edit.end} out of bounds for {n} tokens"
        by_annotator.setdefault(edit.annotator, []).append(edit)
    for annotator, group in by_annotator.items():
        if any(e.is_noop for e in group) and len(group) > 1:
            return f"annotator {annotator} mixes a noop with other edits"
        spans = sorted(e.src_span for e in group if not e.is_noop)
        for (_, prev_end), (start, end) in zip(spans, spans[1:]):
            if start < prev_end:
                return f"overlapping spans for annotator {annotator} ending at {prev_end} and {start} {end}"
    return None


def _parse_edit(line: str, lineno: int) -> Edit:
    fields = line[2:].split(FIELD_SEP)
    if len(fields) != 6:
        raise M2ParseError(lineno, f"expected 6 '|||'-separated fields, found {len(fields)}")
    span, label, correction, required, comment, annotator = fields
    indices = span.split(" ")
    if len(indices) != 2:
        raise M2ParseError(lineno, f"expected 'start end', got {span!r}")
    try:
        start, end = int(indices[0]), int(indices[1])
    except ValueError:
        raise M2ParseError(lineno, f"non-integer span {span!r}") from None
    try:
        annotator_id = int(annotator)
    except ValueError:
        raise M2ParseError(lineno, f"non-integer annotator id {annotator!r}") from None
    if annotator_id < 0:
        raise M2ParseError(lineno, f"negative annotator id {annotator_id}")
    if (start, end) == (-1, -1):
        if label != NOOP_LABEL:
            raise M2ParseError(lineno, "span -1 -1 is reserved for noop edits")
    elif not 0 <= start <= end:
        raise M2ParseError(lineno, f"invalid span {start} {end}")
    if correction != correction.strip():
        raise M2ParseError(lineno, "correction has surrounding whitespace")
    return Edit(start, end, label, correction, annotator_id, required, comment)


def parse_m2(text: str) -> M2Corpus:
    """Parse M2 text into a corpus, reporting the 1-based line of any error."""
    sentences: list[AnnotatedSentence] = []
    tokens: Optional[list[str]] = None
    edits: list[Edit] = []
    edit_lines: list[int] = []

    def flush():
        nonlocal tokens
        if tokens is None:
            return
        problem = _sentence_problem(tokens, edits)
        if problem:
            _raise_at(tokens, edits, edit_lines)
        sentences.append(AnnotatedSentence(tuple(tokens), tuple(edits)))
        tokens = None
        edits.clear()
        edit_lines.clear()

    for lineno, line in enumerate(text.split("\n"), 1):
        line = line.rstrip("\r")
        if not line.strip():
            flush()
        elif line.startswith("S ") or line == "S":
            if tokens is not None:
                raise M2ParseError(lineno, "S line without a preceding blank line")
            tokens = line[2:].split(" ") if len(line) > 2 else []
            if any(not t for t in tokens):
                raise M2ParseError(lineno, "empty token (repeated space) in S line")
        elif line.startswith("A "):
            if tokens is None:
                raise M2ParseError(lineno, "A line outside a sentence block")
            edit = _parse_edit(line, lineno)
            if not edit.is_noop and edit.end > len(tokens):
                raise M2ParseError(lineno, f"span {edit.start} {edit.end} out of bounds "
                                           f"for {len(tokens)} tokens")
            edits.append(edit)
            edit_lines.append(lineno)
        else:
            raise M2ParseError(lineno, f"unrecognised line {line[:20]!r}")
    flush()
    return M2Corpus(tuple(sentences))


def _raise_at(tokens, edits, edit_lines):
    # find the first A line whose addition makes the block invalid
    for k in range(1, len(edits) + 1):
        problem = _sentence_problem(tokens, edits[:k])
        if problem:
            raise M2ParseError(edit_lines[k - 1], problem)


def format_edit(edit: Edit) -> str:
    return "A " + FIELD_SEP.join([
        f"{edit.start} {edit.end}", edit.label, edit.replacement,
        edit.required, edit.comment, str(edit.annotator),
    ])


def format_sentence(sentence: AnnotatedSentence) -> str:
    lines = ["S " + " ".join(sentence.source_tokens)]
    lines.extend(format_edit(e) for e in sentence.edits)
    return "\n".join(lines)


def serialize_m2(corpus: M2Corpus) -> str:
    if not corpus.sentences:
        return ""
    return "\n\n".join(format_sentence(s) for s in corpus.sentences) + "\n"


def build_sentence(source_tokens: Sequence[str], edits: Iterable[Edit],
                   annotators: Iterable[int] = (), noop: bool = True) -> AnnotatedSentence:
    """Assemble a block, adding noop lines for listed annotators with no edits."""
    edits = list(edits)
    if noop:
        present = {e.annotator for e in edits}
        edits.extend(Edit.noop(a) for a in annotators if a not in present)
        edits.sort(key=lambda e: e.annotator)
    return AnnotatedSentence(tuple(source_tokens), tuple(edits))


def apply_edits(sentence: AnnotatedSentence, annotator: int) -> str:
    """Realise one annotator's corrected sentence."""
    mine = [e for e in sentence.edits if e.annotator == annotator]
    if sentence.edits and not mine:
        raise KeyError(f"annotator {annotator} has no annotations for this sentence")
    out: list[str] = []
    pos = 0
    for edit in sorted((e for e in mine if not e.is_noop), key=lambda e: (e.start, e.end)):
        out.extend(sentence.source_tokens[pos:edit.start])
        out.extend(edit.replacement.split())
        pos = edit.end
    out.extend(sentence.source_tokens[pos:])
    return " ".join(out)


@dataclass(frozen=True)
class Finding:
    sentence: int  # 1-based
    kind: str
    message: str

    def __str__(self) -> str:
        return f"sentence {self.sentence}: {self.kind}: {self.message}"


def lint(corpus: M2Corpus, expect_annotators: int = 2) -> list[Finding]:
    """Audit a corpus; never raises.

    Sentences without noop lines are accepted as having unchanged
    references for the missing annotators, unless the corpus elsewhere
    uses noop lines, in which case every annotator must appear.
    """
    findings: list[Finding] = []
    uses_noop = any(e.is_noop for s in corpus for e in s.edits)
    for index, sentence in enumerate(corpus, 1):
        ids = sentence.annotators
        for annotator in ids:
            spans = [e.src_span for e in sentence.edits if e.annotator == annotator and not e.is_noop]
            if spans != sorted(spans):
                findings.append(Finding(index, "span-order",
                                        f"annotator {annotator} spans are not ascending"))
        if ids:
            missing = sorted(set(range(max(ids) + 1)) - set(ids))
            if missing:
                findings.append(Finding(index, "id-gap",
                                        f"annotator ids {ids} skip {missing}"))
        too_high = [a for a in ids if a >= expect_annotators]
        if too_high or (uses_noop and len(ids) != expect_annotators):
            findings.append(Finding(index, "annotator-count",
                                    f"{len(ids)} annotators {ids}, expected {expect_annotators}"))
        for edit in sentence.edits:
            if edit.is_noop or edit.replacement or edit.label.startswith("U:"):
                continue
            findings.append(Finding(index, "empty-correction",
                                    f"empty correction for {edit.label!r} at {edit.start} {edit.end}"))
    return findings


def split_by_annotator(corpus: M2Corpus) -> dict[int, M2Corpus]:
    """One single-annotator corpus per annotator id, each renumbered to id 0."""
    out = {}
    for annotator in corpus.annotators:
        sentences = []
        for s in corpus:
            edits = tuple(Edit(e.start, e.end, e.label, e.replacement, 0, e.required, e.comment)
                          for e in s.edits if e.annotator == annotator)
            sentences.append(AnnotatedSentence(s.source_tokens, edits))
        out[annotator] = M2Corpus(tuple(sentences))
    return out


class MergeError(ValueError):
    def __init__(self, message: str, sentence: Optional[int] = None):
        super().__init__(message)
        self.sentence = sentence


def merge_corpora(corpora: Sequence[M2Corpus]) -> M2Corpus:
    """Union the A lines of several corpora over identical S lines.

    Annotator ids are renumbered 0..k-1 by (input position, original id).
    """
    if not corpora:
        return M2Corpus()
    count = len(corpora[0])
    for pos, corpus in enumerate(corpora[1:], 1):
        if len(corpus) != count:
            raise MergeError(f"input {pos} has {len(corpus)} sentences, input 0 has {count}")
    mapping: dict[tuple[int, int], int] = {}
    for pos, corpus in enumerate(corpora):
        for annotator in corpus.annotators:
            mapping[pos, annotator] = len(mapping)
    sentences = []
    for index in range(count):
        tokens = corpora[0][index].source_tokens
        edits = []
        for pos, corpus in enumerate(corpora):
            sentence = corpus[index]
            if sentence.source_tokens != tokens:
                raise MergeError(f"S line mismatch at sentence {index + 1} (input {pos})",
                                 index + 1)
            edits.extend(Edit(e.start, e.end, e.label, e.replacement, mapping[pos, e.annotator],
                              e.required, e.comment) for e in sentence.edits)
        sentences.append(AnnotatedSentence(tokens, tuple(edits)))
    return M2Corpus(tuple(sentences))
