"""Token-level alignment of a learner sentence with its correction.

The aligner is a weighted edit distance over eojeols extended with adjacent
transpositions and 1->2 / 2->1 boundary operations. All costs are exact
rationals; internally they are scaled to a common integer denominator so the
dynamic program compares integers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .hangul import Eojeol, jamo_dissimilarity, surfaces

Token = Union[str, Eojeol]


class OpKind(enum.Enum):
    EQUAL = "EQUAL"
    SUBSTITUTE = "SUBSTITUTE"
    INSERT = "INSERT"
    DELETE = "DELETE"
    TRANSPOSE = "TRANSPOSE"
    SPLIT = "SPLIT"
    MERGE = "MERGE"


# span lengths (source, target) each kind must have
_SHAPES = {
    OpKind.EQUAL: (1, 1),
    OpKind.SUBSTITUTE: (1, 1),
    OpKind.INSERT: (0, 1),
    OpKind.DELETE: (1, 0),
    OpKind.TRANSPOSE: (2, 2),
    OpKind.SPLIT: (1, 2),
    OpKind.MERGE: (2, 1),
}

# tie-break preference when several operations reach the same optimum
PREFERENCE = (
    OpKind.EQUAL, OpKind.MERGE, OpKind.SPLIT, OpKind.TRANSPOSE,
    OpKind.SUBSTITUTE, OpKind.DELETE, OpKind.INSERT,
)
_RANK = {kind: r for r, kind in enumerate(PREFERENCE)}


@dataclass(frozen=True)
class AlignOp:
    kind: OpKind
    src_span: tuple[int, int]
    tgt_span: tuple[int, int]
    src_tokens: tuple[str, ...] = ()
    tgt_tokens: tuple[str, ...] = ()

    def __repr__(self) -> str:
        s0, s1 = self.src_span
        t0, t1 = self.tgt_span
        return f"{self.kind.value}({s0}..{s1},{t0}..{t1})"


@dataclass(frozen=True)
class AlignCosts:
    insert: Fraction = Fraction(1)
    delete: Fraction = Fraction(1)
    transpose: Fraction = Fraction(1)
    split: Fraction = Fraction(1, 2)
    merge: Fraction = Fraction(1, 2)

    def __post_init__(self):
        for name in ("insert", "delete", "transpose", "split", "merge"):
            value = getattr(self, name)
            if isinstance(value, float):
                value = Fraction(str(value))
            value = Fraction(value)
            if value < 0:
                raise ValueError(f"{name} cost must be non-negative")
            object.__setattr__(self, name, value)


DEFAULT_COSTS = AlignCosts()


def is_transposition(a: Sequence[str], b: Sequence[str]) -> bool:
    return len(a) == 2 and len(b) == 2 and a[0] != a[1] and a[0] == b[1] and a[1] == b[0]


def op_cost(op: AlignOp, costs: AlignCosts = DEFAULT_COSTS) -> Fraction:
    if op.kind is OpKind.EQUAL:
        return Fraction(0)
    if op.kind is OpKind.SUBSTITUTE:
        return _substitution_cost(op.src_tokens[0], op.tgt_tokens[0])
    return {
        OpKind.INSERT: costs.insert,
        OpKind.DELETE: costs.delete,
        OpKind.TRANSPOSE: costs.transpose,
        OpKind.SPLIT: costs.split,
        OpKind.MERGE: costs.merge,
    }[op.kind]


def script_cost(ops: Sequence[AlignOp], costs: AlignCosts = DEFAULT_COSTS) -> Fraction:
    return sum((op_cost(op, costs) for op in ops), Fraction(0))


@lru_cache(maxsize=262144)
def _substitution_cost(a: str, b: str) -> Fraction:
    return jamo_dissimilarity(a, b)


def align(source: Sequence[Token], target: Sequence[Token],
          costs: AlignCosts = DEFAULT_COSTS) -> list[AlignOp]:
    """Minimum-cost edit script turning ``source`` into ``target``.

    Ties are resolved by preferring, at each step of the backtrace, EQUAL,
    MERGE, SPLIT, TRANSPOSE, SUBSTITUTE, DELETE, INSERT in that order.
    """
    src = surfaces(source)
    tgt = surfaces(target)
    n, m = len(src), len(tgt)

    pairs = {(a, b): _substitution_cost(a, b) for a in set(src) for b in set(tgt) if a != b}
    scale = math.lcm(costs.insert.denominator, costs.delete.denominator,
                     costs.transpose.denominator, costs.split.denominator,
                     costs.merge.denominator, *(c.denominator for c in pairs.values()))

    def scaled(value: Fraction) -> int:
        return value.numerator * (scale // value.denominator)

    ins, dele = scaled(costs.insert), scaled(costs.delete)
    trans, split, merge = scaled(costs.transpose), scaled(costs.split), scaled(costs.merge)
    sub_int = {key: c.numerator * (scale // c.denominator) for key, c in pairs.items()}

    # candidates(i, j) -> [(kind, di, dj, cost)] for ops ending at cell (i, j)
    def candidates(i: int, j: int):
        out = []
        if i and j:
            a, b = src[i - 1], tgt[j - 1]
            if a == b:
                out.append((OpKind.EQUAL, 1, 1, 0))
            else:
                out.append((OpKind.SUBSTITUTE, 1, 1, sub_int[a, b]))
            if i >= 2 and src[i - 2] + a == b:
                out.append((OpKind.MERGE, 2, 1, merge))
            if j >= 2 and tgt[j - 2] + b == a:
                out.append((OpKind.SPLIT, 1, 2, split))
            if i >= 2 and j >= 2 and is_transposition(src[i - 2:i], tgt[j - 2:j]):
                out.append((OpKind.TRANSPOSE, 2, 2, trans))
        if i:
            out.append((OpKind.DELETE, 1, 0, dele))
        if j:
            out.append((OpKind.INSERT, 0, 1, ins))
        return out

    # forward pass, inlined for speed; must agree with candidates()
    table = [[j * ins for j in range(m + 1)]]
    for i in range(1, n + 1):
        prev = table[i - 1]
        row = [prev[0] + dele]
        a = src[i - 1]
        a_prev = src[i - 2] if i >= 2 else None
        for j in range(1, m + 1):
            b = tgt[j - 1]
            best = prev[j - 1] + (0 if a == b else sub_int[a, b])
            c = prev[j] + dele
            if c < best:
                best = c
            c = row[j - 1] + ins
            if c < best:
                best = c
            if a_prev is not None:
                if a_prev + a == b:
                    c = table[i - 2][j - 1] + merge
                    if c < best:
                        best = c
                if j >= 2:
                    b_prev = tgt[j - 2]
                    if a_prev == b and a == b_prev and a != b:
                        c = table[i - 2][j - 2] + trans
                        if c < best:
                            best = c
            if j >= 2 and tgt[j - 2] + b == a:
                c = prev[j - 2] + split
                if c < best:
                    best = c
            row.append(best)
        table.append(row)

    ops: list[AlignOp] = []
    i, j = n, m
    while i or j:
        best = None
        for kind, di, dj, c in candidates(i, j):
            if table[i - di][j - dj] + c == table[i][j]:
                if best is None or _RANK[kind] < _RANK[best[0]]:
                    best = (kind, di, dj)
        kind, di, dj = best
        ops.append(AlignOp(kind, (i - di, i), (j - dj, j),
                           tuple(src[i - di:i]), tuple(tgt[j - dj:j])))
        i, j = i - di, j - dj
    ops.reverse()
    return ops


def _rewrite(window: Sequence[AlignOp]) -> Optional[AlignOp]:
    kinds = [op.kind for op in window]
    src_span = (window[0].src_span[0], window[-1].src_span[1])
    tgt_span = (window[0].tgt_span[0], window[-1].tgt_span[1])
    src_tokens = tuple(t for op in window for t in op.src_tokens)
    tgt_tokens = tuple(t for op in window for t in op.tgt_tokens)
    if len(src_tokens) != src_span[1] - src_span[0] or len(tgt_tokens) != tgt_span[1] - tgt_span[0]:
        return None

    if OpKind.EQUAL in kinds:
        # DELETE EQUAL INSERT or INSERT EQUAL DELETE around a swapped pair
        if len(window) != 3 or kinds[1] is not OpKind.EQUAL:
            return None
        if {kinds[0], kinds[2]} != {OpKind.DELETE, OpKind.INSERT}:
            return None
        if is_transposition(src_tokens, tgt_tokens):
            return AlignOp(OpKind.TRANSPOSE, src_span, tgt_span, src_tokens, tgt_tokens)
        return None

    if not set(kinds) <= {OpKind.DELETE, OpKind.INSERT}:
        return None
    if OpKind.DELETE not in kinds or OpKind.INSERT not in kinds:
        return None
    if len(src_tokens) == 1 and len(tgt_tokens) == 2 and "".join(tgt_tokens) == src_tokens[0]:
        return AlignOp(OpKind.SPLIT, src_span, tgt_span, src_tokens, tgt_tokens)
    if len(src_tokens) == 2 and len(tgt_tokens) == 1 and "".join(src_tokens) == tgt_tokens[0]:
        return AlignOp(OpKind.MERGE, src_span, tgt_span, src_tokens, tgt_tokens)
    if is_transposition(src_tokens, tgt_tokens):
        return AlignOp(OpKind.TRANSPOSE, src_span, tgt_span, src_tokens, tgt_tokens)
    return None


def _unit_ops(op: AlignOp) -> list[AlignOp]:
    """Break multi-token INSERT/DELETE ops into single-token ones."""
    s0, s1 = op.src_span
    t0, t1 = op.tgt_span
    if op.kind is OpKind.DELETE and s1 - s0 > 1:
        return [AlignOp(OpKind.DELETE, (k, k + 1), (t0, t0), (op.src_tokens[k - s0],), ())
                for k in range(s0, s1)]
    if op.kind is OpKind.INSERT and t1 - t0 > 1:
        return [AlignOp(OpKind.INSERT, (s0, s0), (k, k + 1), (), (op.tgt_tokens[k - t0],))
                for k in range(t0, t1)]
    return [op]


def merge_ops(ops: Sequence[AlignOp]) -> list[AlignOp]:
    """Fold adjacent DELETE/INSERT runs into SPLIT, MERGE or TRANSPOSE ops.

    Ops must carry their token texts (as produced by :func:`align`).
    INSERT/DELETE ops spanning several tokens are accepted and come back as
    single-token ops when no rewrite applies.
    """
    out: list[AlignOp] = []
    k = 0
    while k < len(ops):
        for width in (3, 2):
            window = ops[k:k + width]
            if len(window) == width:
                rewritten = _rewrite(window)
                if rewritten is not None:
                    out.append(rewritten)
                    k += width
                    break
        else:
            out.extend(_unit_ops(ops[k]))
            k += 1
    return out


def check_script(ops: Sequence[AlignOp], n_source: int, n_target: int) -> None:
    """Raise ``ValueError`` unless ``ops`` partitions both sequences with valid shapes."""
    s = t = 0
    for op in ops:
        (s0, s1), (t0, t1) = op.src_span, op.tgt_span
        if (s0, t0) != (s, t):
            raise ValueError(f"{op!r} does not continue at ({s}, {t})")
        if (s1 - s0, t1 - t0) != _SHAPES[op.kind]:
            raise ValueError(f"{op!r} has the wrong span shape for {op.kind.value}")
        src, tgt = op.src_tokens, op.tgt_tokens
        if op.kind is OpKind.EQUAL and src != tgt:
            raise ValueError(f"{op!r} joins unequal tokens")
        if op.kind is OpKind.TRANSPOSE and not is_transposition(src, tgt):
            raise ValueError(f"{op!r} is not a transposition")
        if op.kind is OpKind.SPLIT and "".join(tgt) != src[0]:
            raise ValueError(f"{op!r} does not concatenate")
        if op.kind is OpKind.MERGE and "".join(src) != tgt[0]:
            raise ValueError(f"{op!r} does not concatenate")
        s, t = s1, t1
    if (s, t) != (n_source, n_target):
        raise ValueError(f"script ends at ({s}, {t}), expected ({n_source}, {n_target})")


def apply_script(ops: Sequence[AlignOp], source: Sequence[Token]) -> list[str]:
    src = surfaces(source)
    out: list[str] = []
    for op in ops:
        if op.kind is OpKind.EQUAL:
            out.extend(src[op.src_span[0]:op.src_span[1]])
        else:
            out.extend(op.tgt_tokens)
    return out
