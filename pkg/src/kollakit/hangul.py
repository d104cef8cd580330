"""Korean text primitives.

Tokenization into eojeols, syllable/jamo decomposition, jamo-level
similarity and suffix stripping against a closed functional-morpheme
lexicon.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

HANGUL_START = 0xAC00
HANGUL_END = 0xD7A3

CHOSEONG = (
    'ㄱ', 'ㄲ', 'ㄴ', 'ㄷ', 'ㄸ', 'ㄹ', 'ㅁ', 'ㅂ', 'ㅃ', 'ㅅ',
    'ㅆ', 'ㅇ', 'ㅈ', 'ㅉ', 'ㅊ', 'ㅋ', 'ㅌ', 'ㅍ', 'ㅎ',
)
JUNGSEONG = (
    'ㅏ', 'ㅐ', 'ㅑ', 'ㅒ', 'ㅓ', 'ㅔ', 'ㅕ', 'ㅖ', 'ㅗ', 'ㅘ',
    'ㅙ', 'ㅚ', 'ㅛ', 'ㅜ', 'ㅝ', 'ㅞ', 'ㅟ', 'ㅠ', 'ㅡ', 'ㅢ', 'ㅣ',
)
# index 0 is "no final consonant"
JONGSEONG = (
    '', 'ㄱ', 'ㄲ', 'ㄳ', 'ㄴ', 'ㄵ', 'ㄶ', 'ㄷ', 'ㄹ', 'ㄺ',
    'ㄻ', 'ㄼ', 'ㄽ', 'ㄾ', 'ㄿ', 'ㅀ', 'ㅁ', 'ㅂ', 'ㅄ', 'ㅅ',
    'ㅆ', 'ㅇ', 'ㅈ', 'ㅊ', 'ㅋ', 'ㅌ', 'ㅍ', 'ㅎ',
)

_CHO_INDEX = {c: i for i, c in enumerate(CHOSEONG)}
_JUNG_INDEX = {c: i for i, c in enumerate(JUNGSEONG)}
_JONG_INDEX = {c: i for i, c in enumerate(JONGSEONG) if c}

ADP = "ADP"
PART = "PART"
PARTICLE_KINDS = (ADP, PART)


def nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def is_hangul_syllable(char: str) -> bool:
    return len(char) == 1 and HANGUL_START <= ord(char) <= HANGUL_END


# ---------------------------------------------------------------------------
# Jamo decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JamoString:
    """Jamo units of a text plus the per-character grouping needed to rebuild it.

    ``units`` is what similarity is computed over. ``groups`` records how many
    units each original character produced (2 or 3 for a syllable, 1 for a
    passthrough character), which keeps recomposition lossless even when the
    input contains bare compatibility jamo.
    """

    units: tuple[str, ...]
    groups: tuple[int, ...] = field(repr=False, default=())
    syllabic: tuple[bool, ...] = field(repr=False, default=())

    def __len__(self) -> int:
        return len(self.units)

    def __iter__(self):
        return iter(self.units)

    def __getitem__(self, index):
        return self.units[index]


def decompose_syllable(char: str) -> tuple[str, ...]:
    """Split one precomposed syllable into (initial, medial[, final])."""
    code = ord(char) - HANGUL_START
    cho, rest = divmod(code, 21 * 28)
    jung, jong = divmod(rest, 28)
    if jong:
        return (CHOSEONG[cho], JUNGSEONG[jung], JONGSEONG[jong])
    return (CHOSEONG[cho], JUNGSEONG[jung])


def compose_syllable(cho: str, jung: str, jong: str = '') -> str:
    jong_idx = _JONG_INDEX[jong] if jong else 0
    return chr(HANGUL_START + (_CHO_INDEX[cho] * 21 + _JUNG_INDEX[jung]) * 28 + jong_idx)


def decompose_jamo(text: str) -> JamoString:
    """Expand every precomposed syllable of ``NFC(text)`` into jamo.

    >>> decompose_jamo("먹").units
    ('ㅁ', 'ㅓ', 'ㄱ')
    """
    units: list[str] = []
    groups: list[int] = []
    syllabic: list[bool] = []
    for char in nfc(text):
        if is_hangul_syllable(char):
            parts = decompose_syllable(char)
            units.extend(parts)
            groups.append(len(parts))
            syllabic.append(True)
        else:
            units.append(char)
            groups.append(1)
            syllabic.append(False)
    return JamoString(tuple(units), tuple(groups), tuple(syllabic))


def recompose_jamo(jamo: JamoString) -> str:
    out = []
    pos = 0
    for size, is_syllable in zip(jamo.groups, jamo.syllabic):
        chunk = jamo.units[pos:pos + size]
        pos += size
        out.append(compose_syllable(*chunk) if is_syllable else chunk[0])
    return "".join(out)


def levenshtein(a: Sequence, b: Sequence) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        current = [i]
        for j, y in enumerate(b, 1):
            current.append(min(previous[j] + 1,
                               current[j - 1] + 1,
                               previous[j - 1] + (x != y)))
        previous = current
    return previous[-1]


@lru_cache(maxsize=65536)
def _jamo_distance(a: str, b: str) -> tuple[int, int]:
    ja = decompose_jamo(a).units
    jb = decompose_jamo(b).units
    return levenshtein(ja, jb), max(len(ja), len(jb))


def jamo_dissimilarity(a: str, b: str) -> Fraction:
    """Exact ``1 - jamo_similarity(a, b)``; the substitution cost used by the aligner."""
    a, b = nfc(a), nfc(b)
    if a > b:
        a, b = b, a
    dist, longest = _jamo_distance(a, b)
    if longest == 0:
        return Fraction(0)
    return Fraction(dist, longest)


def jamo_similarity(a: str, b: str) -> float:
    """One minus the jamo edit distance normalised by the longer jamo length.

    Two empty strings are fully similar.
    """
    return float(1 - jamo_dissimilarity(a, b))


# ---------------------------------------------------------------------------
# Functional-morpheme lexicon
# ---------------------------------------------------------------------------

class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class Lexicon:
    entries: tuple[tuple[str, str], ...]

    def __post_init__(self):
        for surface, kind in self.entries:
            if kind not in PARTICLE_KINDS:
                raise LexiconError(f"unknown particle kind {kind!r} for {surface!r}")
            if not surface or any(ch.isspace() for ch in surface):
                raise LexiconError(f"invalid particle surface {surface!r}")
        # longest first, stable on file order
        ordered = sorted(self.entries, key=lambda e: -len(e[0]))
        object.__setattr__(self, "_ordered", tuple(ordered))
        object.__setattr__(self, "_kinds", {s: k for s, k in reversed(self.entries)})

    def __contains__(self, surface: str) -> bool:
        return surface in self._kinds

    def kind(self, particle: str) -> Optional[str]:
        return self._kinds.get(particle)

    def strip(self, surface: str) -> tuple[str, Optional[str]]:
        for particle, _ in self._ordered:
            if len(particle) < len(surface) and surface.endswith(particle):
                return surface[:-len(particle)], particle
        return surface, None

    @classmethod
    def parse(cls, text: str) -> "Lexicon":
        entries = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise LexiconError(f"line {lineno}: expected 'surface<TAB>kind', got {raw!r}")
            entries.append((nfc(parts[0].strip()), parts[1].strip()))
        return cls(tuple(entries))

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "Lexicon":
        return cls.parse(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    text = resources.files("kollakit").joinpath("data/particles.tsv").read_text(encoding="utf-8")
    return Lexicon.parse(text)


def strip_particle(surface: str, lexicon: Optional[Lexicon] = None) -> tuple[str, Optional[str]]:
    """Split ``surface`` into (stem, particle) by longest lexicon suffix.

    The stem is never empty: a token that is itself a particle comes back
    unsplit.
    """
    return (lexicon or default_lexicon()).strip(nfc(surface))


# ---------------------------------------------------------------------------
# Eojeol and tokenization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Eojeol:
    surface: str
    stem: str
    particle: Optional[str] = None
    pos: Optional[str] = None
    particle_kind: Optional[str] = None

    def __post_init__(self):
        if not self.surface or any(ch.isspace() for ch in self.surface):
            raise ValueError(f"eojeol surface must be non-empty without whitespace: {self.surface!r}")
        if self.stem + (self.particle or "") != self.surface:
            raise ValueError(f"stem {self.stem!r} + particle {self.particle!r} != {self.surface!r}")

    @classmethod
    def from_surface(cls, surface: str, lexicon: Optional[Lexicon] = None,
                     pos: Optional[str] = None) -> "Eojeol":
        lexicon = lexicon or default_lexicon()
        surface = nfc(surface)
        stem, particle = lexicon.strip(surface)
        kind = lexicon.kind(particle) if particle else None
        return cls(surface, stem, particle, pos, kind)

    def __str__(self) -> str:
        return self.surface


def tokenize(sentence_text: str, lexicon: Optional[Lexicon] = None) -> list[Eojeol]:
    return [Eojeol.from_surface(tok, lexicon) for tok in nfc(sentence_text).split()]


def parse_tagged_line(line: str, lexicon: Optional[Lexicon] = None) -> list[Eojeol]:
    """Read one ``surface/POS surface/POS ...`` line of a token-annotation file."""
    tokens = []
    for item in line.split():
        surface, sep, pos = item.rpartition("/")
        if not sep or not surface or not pos:
            raise ValueError(f"expected surface/POS, got {item!r}")
        tokens.append(Eojeol.from_surface(surface, lexicon, pos=pos))
    return tokens


def read_tagged_file(text: str, lexicon: Optional[Lexicon] = None) -> list[list[Eojeol]]:
    return [parse_tagged_line(line, lexicon) for line in text.splitlines()]


def surfaces(tokens: Iterable[Union[str, Eojeol]]) -> list[str]:
    return [t.surface if isinstance(t, Eojeol) else nfc(t) for t in tokens]
