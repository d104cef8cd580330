"""Error typology and edit classification for Korean learner sentences."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from .alignment import AlignCosts, AlignOp, DEFAULT_COSTS, OpKind, align, merge_ops
from .hangul import ADP, Eojeol, Lexicon, default_lexicon, nfc, tokenize

ARROW = "→"
NOOP_LABEL = "noop"
NONE_FIELD = "-NONE-"
REQUIRED = "REQUIRED"


class LabelCode(enum.Enum):
    R_ADP_UNNECESSARY = "R_ADP_UNNECESSARY"
    R_ADP_MISSING = "R_ADP_MISSING"
    R_ADP_SUBSTITUTION = "R_ADP_SUBSTITUTION"
    R_SPELL = "R_SPELL"
    M_WB = "M_WB"
    U_WB = "U_WB"
    R_ORDER = "R_ORDER"
    M_OTHER = "M_OTHER"
    U_OTHER = "U_OTHER"
    R_OTHER = "R_OTHER"


_FIXED = {
    LabelCode.R_SPELL: "R:SPELL",
    LabelCode.M_WB: "M:WB",
    LabelCode.U_WB: "U:WB",
    LabelCode.R_ORDER: "R:ORDER",
    LabelCode.M_OTHER: "M:OTHER",
    LabelCode.U_OTHER: "U:OTHER",
    LabelCode.R_OTHER: "R:OTHER",
}
_FIXED_BY_TEXT = {text: code for code, text in _FIXED.items()}

_TAG = r"[^\s+→:]+"
_UNNECESSARY_RE = re.compile(rf"^R:({_TAG})\+({_TAG}) {ARROW} ({_TAG})$")
_MISSING_RE = re.compile(rf"^R:({_TAG}) {ARROW} ({_TAG})\+({_TAG})$")
_SUBSTITUTION_RE = re.compile(rf"^R:({_TAG})\+({_TAG}) {ARROW} ({_TAG})\+({_TAG})$")


@dataclass(frozen=True)
class ErrorLabel:
    """One error category, with POS and particle-kind parameters for the
    functional-morpheme codes.

    For ``R_ADP_SUBSTITUTION`` the content word is shared, so ``pos_j``
    always equals ``pos_i``.
    """

    code: LabelCode
    pos_i: Optional[str] = None
    pos_j: Optional[str] = None
    kind_i: Optional[str] = None
    kind_j: Optional[str] = None

    def render(self) -> str:
        code = self.code
        if code in _FIXED:
            return _FIXED[code]
        if code is LabelCode.R_ADP_UNNECESSARY:
            return f"R:{self.pos_i}+{self.kind_i} {ARROW} {self.pos_j}"
        if code is LabelCode.R_ADP_MISSING:
            return f"R:{self.pos_i} {ARROW} {self.pos_j}+{self.kind_j}"
        return f"R:{self.pos_i}+{self.kind_i} {ARROW} {self.pos_i}+{self.kind_j}"

    __str__ = render

    @classmethod
    def parse(cls, text: str) -> "ErrorLabel":
        if text in _FIXED_BY_TEXT:
            return cls(_FIXED_BY_TEXT[text])
        match = _SUBSTITUTION_RE.match(text)
        if match:
            pos_i, kind_i, pos_j, kind_j = match.groups()
            if pos_i != pos_j:
                raise ValueError(f"substitution label with differing POS: {text!r}")
            return cls(LabelCode.R_ADP_SUBSTITUTION, pos_i, pos_i, kind_i, kind_j)
        match = _UNNECESSARY_RE.match(text)
        if match:
            pos_i, kind_i, pos_j = match.groups()
            return cls(LabelCode.R_ADP_UNNECESSARY, pos_i, pos_j, kind_i, None)
        match = _MISSING_RE.match(text)
        if match:
            pos_i, pos_j, kind_j = match.groups()
            return cls(LabelCode.R_ADP_MISSING, pos_i, pos_j, None, kind_j)
        raise ValueError(f"not a recognised error label: {text!r}")


@dataclass(frozen=True)
class Edit:
    """One annotated correction, i.e. one M2 ``A`` line.

    ``label`` is kept as text so labels from other typologies survive a
    round trip; :attr:`error_label` parses it on demand. Deletions carry an
    empty ``replacement``.
    """

    start: int
    end: int
    label: str
    replacement: str
    annotator: int = 0
    required: str = REQUIRED
    comment: str = NONE_FIELD

    def __post_init__(self):
        if self.replacement != self.replacement.strip():
            raise ValueError(f"replacement has surrounding whitespace: {self.replacement!r}")
        if self.annotator < 0:
            raise ValueError("annotator id must be non-negative")
        if not self.is_noop and not 0 <= self.start <= self.end:
            raise ValueError(f"invalid span {self.start}..{self.end}")

    @property
    def src_span(self) -> tuple[int, int]:
        return (self.start, self.end)

    @property
    def is_noop(self) -> bool:
        return self.start == -1 and self.end == -1

    @property
    def error_label(self) -> ErrorLabel:
        return ErrorLabel.parse(self.label)

    @classmethod
    def noop(cls, annotator: int) -> "Edit":
        return cls(-1, -1, NOOP_LABEL, NONE_FIELD, annotator)


def _pos(token: Eojeol, other: Eojeol) -> str:
    if token.pos:
        return token.pos
    if token.particle_kind == ADP:
        return "NOUN"
    # same content word as a counterpart that carries a postposition
    if token.particle is None and token.stem == other.stem and other.particle_kind == ADP:
        return "NOUN"
    return "X"


def classify(op: AlignOp, source: Sequence[Eojeol], target: Sequence[Eojeol]) -> ErrorLabel:
    """Label one non-EQUAL alignment operation.

    Structural operations (boundary and order) are decided first; a
    substitution is then split by whether the content stem survives.
    """
    kind = op.kind
    if kind is OpKind.EQUAL:
        raise ValueError("EQUAL operations carry no error")
    if kind is OpKind.SPLIT:
        return ErrorLabel(LabelCode.M_WB)
    if kind is OpKind.MERGE:
        return ErrorLabel(LabelCode.U_WB)
    if kind is OpKind.TRANSPOSE:
        return ErrorLabel(LabelCode.R_ORDER)
    if kind is OpKind.INSERT:
        return ErrorLabel(LabelCode.M_OTHER)
    if kind is OpKind.DELETE:
        return ErrorLabel(LabelCode.U_OTHER)

    src = source[op.src_span[0]]
    tgt = target[op.tgt_span[0]]
    if src.stem != tgt.stem:
        return ErrorLabel(LabelCode.R_SPELL)
    pos_i, pos_j = _pos(src, tgt), _pos(tgt, src)
    if src.particle and not tgt.particle:
        return ErrorLabel(LabelCode.R_ADP_UNNECESSARY, pos_i, pos_j, src.particle_kind, None)
    if tgt.particle and not src.particle:
        return ErrorLabel(LabelCode.R_ADP_MISSING, pos_i, pos_j, None, tgt.particle_kind)
    if src.particle and tgt.particle and src.particle != tgt.particle:
        return ErrorLabel(LabelCode.R_ADP_SUBSTITUTION, pos_i, pos_i,
                          src.particle_kind, tgt.particle_kind)
    return ErrorLabel(LabelCode.R_OTHER)


# ---------------------------------------------------------------------------
# Normalization table applied before tokenization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalizationTable:
    """Ordered literal substring rewrites applied to both sides of a pair."""

    rules: tuple[tuple[str, str], ...] = ()

    def apply(self, text: str) -> str:
        text = nfc(text)
        for pattern, replacement in self.rules:
            text = text.replace(pattern, replacement)
        return text

    @classmethod
    def parse(cls, text: str) -> "NormalizationTable":
        rules = []
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0]:
                raise ValueError(f"line {lineno}: expected 'pattern<TAB>replacement'")
            rules.append((nfc(parts[0]), nfc(parts[1])))
        return cls(tuple(rules))

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "NormalizationTable":
        return cls.parse(Path(path).read_text(encoding="utf-8"))


def _as_tokens(value: Union[str, Sequence[Eojeol]], lexicon: Lexicon,
               normalization: Optional[NormalizationTable]) -> list[Eojeol]:
    if isinstance(value, str):
        if normalization is not None:
            value = normalization.apply(value)
        return tokenize(value, lexicon)
    return list(value)


def annotate_pair(source: Union[str, Sequence[Eojeol]], target: Union[str, Sequence[Eojeol]],
                  annotator: int = 0, *, lexicon: Optional[Lexicon] = None,
                  costs: AlignCosts = DEFAULT_COSTS,
                  normalization: Optional[NormalizationTable] = None) -> list[Edit]:
    """Tokenize, align and classify a (learner, corrected) sentence pair.

    Either side may be given as raw text or as pre-built eojeols (for
    instance with POS tags from a side file).

    >>> [e.label for e in annotate_pair("비행기 음식이 안 막였습니다 .", "비행기 음식을 안 먹었습니다 .")]
    ['R:NOUN+ADP → NOUN+ADP', 'R:SPELL']
    """
    lexicon = lexicon or default_lexicon()
    src = _as_tokens(source, lexicon, normalization)
    tgt = _as_tokens(target, lexicon, normalization)
    edits = []
    for op in merge_ops(align(src, tgt, costs)):
        if op.kind is OpKind.EQUAL:
            continue
        label = classify(op, src, tgt)
        edits.append(Edit(op.src_span[0], op.src_span[1], label.render(),
                          " ".join(op.tgt_tokens), annotator))
    return edits
