"""Independent reference implementations used only by the tests.

Nothing here imports the code under test.
"""

from __future__ import annotations

import itertools
import math
import unicodedata
from fractions import Fraction
from functools import lru_cache

_JAMO_PREFIXES = ("HANGUL CHOSEONG ", "HANGUL JUNGSEONG ", "HANGUL JONGSEONG ")


def nfd_jamo(text: str) -> list[str]:
    """Jamo via Unicode NFD, mapped to compatibility letters by character name."""
    out = []
    for ch in unicodedata.normalize("NFD", text):
        name = unicodedata.name(ch, "")
        if name.startswith(_JAMO_PREFIXES):
            out.append(unicodedata.lookup("HANGUL LETTER " + name.split(" ", 2)[2]))
        else:
            out.append(ch)
    return out


def brute_edit_distance(a, b) -> int:
    """Textbook recursive Levenshtein definition, memoised on suffix positions."""
    a, b = tuple(a), tuple(b)

    @lru_cache(maxsize=None)
    def d(i, j):
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        return min(d(i + 1, j) + 1, d(i, j + 1) + 1, d(i + 1, j + 1) + (a[i] != b[j]))

    return d(0, 0)


def jamo_cost(a: str, b: str) -> Fraction:
    ja, jb = nfd_jamo(a), nfd_jamo(b)
    longest = max(len(ja), len(jb))
    return Fraction(brute_edit_distance(ja, jb), longest) if longest else Fraction(0)


class ScriptCostOracle:
    """Minimal edit-script cost over a fixed token alphabet.

    Costs are integers scaled by a common denominator for the alphabet.
    ``minimal`` recurses over the first operation of the script and memoises
    on suffix pairs; ``enumerate_all`` lists every script explicitly.
    """

    def __init__(self, alphabet, indel=Fraction(1), transpose=Fraction(1), boundary=Fraction(1, 2)):
        self.alphabet = list(alphabet)
        subs = {(a, b): jamo_cost(a, b) for a in alphabet for b in alphabet if a != b}
        self.scale = math.lcm(indel.denominator, transpose.denominator, boundary.denominator,
                              *(c.denominator for c in subs.values()))
        s = self.scale
        self.sub = {k: int(v * s) for k, v in subs.items()}
        self.indel, self.trans, self.boundary = int(indel * s), int(transpose * s), int(boundary * s)
        self._memo = {}

    def substitution(self, a: str, b: str) -> int:
        if a == b:
            return 0
        if (a, b) not in self.sub:
            self.sub[a, b] = int(jamo_cost(a, b) * self.scale)
        return self.sub[a, b]

    def minimal(self, s: tuple, t: tuple) -> int:
        memo = self._memo
        key = (s, t)
        if key in memo:
            return memo[key]
        if not s and not t:
            return 0
        best = math.inf
        if s:
            best = min(best, self.indel + self.minimal(s[1:], t))
        if t:
            best = min(best, self.indel + self.minimal(s, t[1:]))
        if s and t:
            best = min(best, self.substitution(s[0], t[0]) + self.minimal(s[1:], t[1:]))
        if len(s) >= 2 and t and s[0] + s[1] == t[0]:
            best = min(best, self.boundary + self.minimal(s[2:], t[1:]))
        if s and len(t) >= 2 and t[0] + t[1] == s[0]:
            best = min(best, self.boundary + self.minimal(s[1:], t[2:]))
        if len(s) >= 2 and len(t) >= 2 and s[0] != s[1] and s[0] == t[1] and s[1] == t[0]:
            best = min(best, self.trans + self.minimal(s[2:], t[2:]))
        memo[key] = best
        return best

    def enumerate_all(self, s: tuple, t: tuple):
        """Yield the cost of every edit script from ``s`` to ``t`` (no memo)."""
        if not s and not t:
            yield 0
            return
        if s:
            for c in self.enumerate_all(s[1:], t):
                yield self.indel + c
        if t:
            for c in self.enumerate_all(s, t[1:]):
                yield self.indel + c
        if s and t:
            head = self.substitution(s[0], t[0])
            for c in self.enumerate_all(s[1:], t[1:]):
                yield head + c
        if len(s) >= 2 and t and s[0] + s[1] == t[0]:
            for c in self.enumerate_all(s[2:], t[1:]):
                yield self.boundary + c
        if s and len(t) >= 2 and t[0] + t[1] == s[0]:
            for c in self.enumerate_all(s[1:], t[2:]):
                yield self.boundary + c
        if len(s) >= 2 and len(t) >= 2 and s[0] != s[1] and s[0] == t[1] and s[1] == t[0]:
            for c in self.enumerate_all(s[2:], t[2:]):
                yield self.trans + c

    def op_cost(self, kind: str, src_tokens, tgt_tokens) -> int:
        if kind == "EQUAL":
            return 0
        if kind == "SUBSTITUTE":
            return self.substitution(src_tokens[0], tgt_tokens[0])
        if kind in ("INSERT", "DELETE"):
            return self.indel
        if kind == "TRANSPOSE":
            return self.trans
        return self.boundary


def sequences(alphabet, max_len: int):
    for length in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


def kappa_by_marginals(a, b) -> Fraction:
    """Cohen's kappa from an explicit contingency table, in exact arithmetic."""
    labels = sorted(set(a) | set(b), key=repr)
    n = len(a)
    table = {(x, y): 0 for x in labels for y in labels}
    for x, y in zip(a, b):
        table[x, y] += 1
    p_o = Fraction(sum(table[x, x] for x in labels), n)
    row = {x: Fraction(sum(table[x, y] for y in labels), n) for x in labels}
    col = {y: Fraction(sum(table[x, y] for x in labels), n) for y in labels}
    p_e = sum(row[x] * col[x] for x in labels)
    if p_e == 1:
        return Fraction(1)
    return (p_o - p_e) / (1 - p_e)


def apply_m2_edits_by_hand(tokens, edits):
    """Apply (start, end, replacement) triples right to left."""
    out = list(tokens)
    for start, end, replacement in sorted(edits, key=lambda e: (e[0], e[1]), reverse=True):
        out[start:end] = replacement.split()
    return out
