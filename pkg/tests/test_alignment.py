from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kollakit.alignment import (AlignCosts, AlignOp, OpKind, align, apply_script, check_script,
                                merge_ops, script_cost)
from oracles import ScriptCostOracle, sequences

E, S, I, D = OpKind.EQUAL, OpKind.SUBSTITUTE, OpKind.INSERT, OpKind.DELETE
T, SP, M = OpKind.TRANSPOSE, OpKind.SPLIT, OpKind.MERGE

TOKENS = ["할", "수", "할수", "있다", "음식이", "음식을", "먹었다", "막였다", "빨리", "매우"]
token_lists = st.lists(st.sampled_from(TOKENS), max_size=6)


def shape(ops):
    return [(op.kind, op.src_span, op.tgt_span) for op in ops]


def test_airplane_alignment():
    src = ["비행기", "음식이", "안", "막였습니다", "."]
    tgt = ["비행기", "음식을", "안", "먹었습니다", "."]
    assert shape(align(src, tgt)) == [
        (E, (0, 1), (0, 1)), (S, (1, 2), (1, 2)), (E, (2, 3), (2, 3)),
        (S, (3, 4), (3, 4)), (E, (4, 5), (4, 5)),
    ]


def test_identity_is_all_equal():
    toks = ["나는", "학교에", "갔다"]
    assert [op.kind for op in align(toks, toks)] == [E, E, E]
    assert align([], []) == []


def test_split_merge_transpose():
    assert shape(align(["할수", "있다"], ["할", "수", "있다"])) == [(SP, (0, 1), (0, 2)), (E, (1, 2), (2, 3))]
    assert shape(align(["할", "수", "있다"], ["할수", "있다"])) == [(M, (0, 2), (0, 1)), (E, (2, 3), (1, 2))]
    assert shape(align(["빨리", "먹었다"], ["먹었다", "빨리"])) == [(T, (0, 2), (0, 2))]


def test_inserts_and_deletes():
    assert shape(align(["a"], [])) == [(D, (0, 1), (0, 0))]
    assert shape(align([], ["a"])) == [(I, (0, 0), (0, 1))]


def test_near_miss_prefers_substitution():
    ops = align(["막였습니다"], ["먹었습니다"])
    assert [op.kind for op in ops] == [S]
    assert script_cost(ops) == Fraction(2, 13)


def test_unrelated_tokens_substitute_rather_than_delete_insert():
    # substitution costs at most 1, delete + insert always 2
    ops = align(["가"], ["너"])
    assert [op.kind for op in ops] == [S]
    ops = align(["a", "b"], ["b"])
    assert shape(ops) == [(D, (0, 1), (0, 0)), (E, (1, 2), (0, 1))]


def test_tie_break_order_with_custom_costs():
    costs = AlignCosts(transpose=2)
    # transpose (2) ties with two full substitutions (1 + 1); TRANSPOSE wins the tie
    ops = align(["x", "y"], ["y", "x"], costs)
    assert [op.kind for op in ops] == [T]
    # split (3/2) ties with substitute "ab"->"a" (1/2) + insert (1); SPLIT wins the tie
    ops = align(["ab"], ["a", "b"], AlignCosts(split=Fraction(3, 2)))
    assert [op.kind for op in ops] == [SP]


def test_costs_accept_floats_exactly():
    assert AlignCosts(split=0.5).split == Fraction(1, 2)
    with pytest.raises(ValueError):
        AlignCosts(insert=-1)


def test_merge_ops_examples():
    ops = [AlignOp(D, (0, 1), (0, 0), ("할수",), ()),
           AlignOp(I, (1, 1), (0, 2), (), ("할", "수"))]
    assert shape(merge_ops(ops)) == [(SP, (0, 1), (0, 2))]

    ops = [AlignOp(D, (0, 1), (0, 0), ("빨리",), ()),
           AlignOp(I, (1, 1), (0, 1), (), ("매우",))]
    assert merge_ops(ops) == ops

    # src [w_j, w_i] vs tgt [w_i, w_j] as DELETE + EQUAL + INSERT
    ops = [AlignOp(D, (0, 1), (0, 0), ("먹었다",), ()),
           AlignOp(E, (1, 2), (0, 1), ("빨리",), ("빨리",)),
           AlignOp(I, (2, 2), (1, 2), (), ("먹었다",))]
    assert shape(merge_ops(ops)) == [(T, (0, 2), (0, 2))]


def test_merge_ops_merge_and_reverse_transposition():
    ops = [AlignOp(D, (0, 1), (0, 0), ("할",), ()),
           AlignOp(D, (1, 2), (0, 0), ("수",), ()),
           AlignOp(I, (2, 2), (0, 1), (), ("할수",))]
    assert shape(merge_ops(ops)) == [(M, (0, 2), (0, 1))]

    ops = [AlignOp(I, (0, 0), (0, 1), (), ("b",)),
           AlignOp(E, (0, 1), (1, 2), ("a",), ("a",)),
           AlignOp(D, (1, 2), (2, 2), ("b",), ())]
    assert shape(merge_ops(ops)) == [(T, (0, 2), (0, 2))]


def test_merge_ops_splits_multi_token_leftovers():
    ops = [AlignOp(I, (0, 0), (0, 2), (), ("x", "y"))]
    out = merge_ops(ops)
    assert shape(out) == [(I, (0, 0), (0, 1)), (I, (0, 0), (1, 2))]
    check_script(out, 0, 2)


def test_check_script_rejects_bad_scripts():
    with pytest.raises(ValueError):
        check_script([AlignOp(E, (0, 1), (0, 1), ("a",), ("b",))], 1, 1)
    with pytest.raises(ValueError):
        check_script([AlignOp(SP, (0, 1), (0, 2), ("ab",), ("a", "c"))], 1, 2)
    with pytest.raises(ValueError):
        check_script([AlignOp(S, (0, 1), (0, 1), ("a",), ("b",))], 2, 1)


@settings(max_examples=300)
@given(token_lists, token_lists)
def test_script_reproduces_target(src, tgt):
    ops = align(src, tgt)
    check_script(ops, len(src), len(tgt))
    assert apply_script(ops, src) == tgt
    merged = merge_ops(ops)
    check_script(merged, len(src), len(tgt))
    assert apply_script(merged, src) == tgt


@settings(max_examples=300)
@given(token_lists, token_lists)
def test_cost_is_symmetric(src, tgt):
    forward, backward = align(src, tgt), align(tgt, src)
    assert script_cost(forward) == script_cost(backward)


def test_exhaustive_oracle_agrees_with_enumeration():
    alphabet = ("가", "나", "가나")
    oracle = ScriptCostOracle(alphabet)
    for s in sequences(alphabet, 3):
        for t in sequences(alphabet, 3):
            assert oracle.minimal(s, t) == min(oracle.enumerate_all(s, t))


def test_small_alphabet_costs_match_oracle_length3():
    alphabet = ("가", "나", "가나", "나가", "각")
    oracle = ScriptCostOracle(alphabet)
    for s in sequences(alphabet, 3):
        for t in sequences(alphabet, 3):
            ops = align(s, t)
            got = sum(oracle.op_cost(op.kind.value, op.src_tokens, op.tgt_tokens) for op in ops)
            assert got == oracle.minimal(s, t), (s, t, ops)
            assert script_cost(ops) * oracle.scale == got
