import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kollakit.classify import Edit
from kollakit.m2 import AnnotatedSentence, M2Corpus, build_sentence, parse_m2
from kollakit.scorer import (CorpusMismatchError, MatchCounts, evaluate, f_beta,
                             hypothesis_from_text, match_edits)
from conftest import AIRPLANE_M2, AIRPLANE_SOURCE, AIRPLANE_TARGET_0, AIRPLANE_TARGET_1

GOLD0 = [Edit(1, 2, "R:NOUN+ADP → NOUN+ADP", "음식을", 0), Edit(3, 4, "R:SPELL", "먹었습니다", 0)]


def restrict(corpus, annotator):
    return M2Corpus(tuple(AnnotatedSentence(s.source_tokens, tuple(
        Edit(e.start, e.end, e.label, e.replacement, 0, e.required, e.comment)
        for e in s.edits if e.annotator == annotator)) for s in corpus))


def test_match_examples():
    assert match_edits(GOLD0, GOLD0) == MatchCounts(2, 0, 0)
    assert match_edits([], GOLD0) == MatchCounts(0, 0, 2)
    assert match_edits([Edit(3, 4, "R:SPELL", "맞았습니다")], GOLD0) == MatchCounts(0, 1, 2)


def test_labels_are_diagnostic_unless_requested():
    hyp = [Edit(3, 4, "R:OTHER", "먹었습니다")]
    assert match_edits(hyp, GOLD0).tp == 1
    assert match_edits(hyp, GOLD0, match_labels=True).tp == 0


def test_matching_is_one_to_one_and_ignores_noops():
    hyp = [Edit(0, 0, "M:OTHER", "x"), Edit(0, 0, "M:OTHER", "x")]
    assert match_edits(hyp, [Edit(0, 0, "M:OTHER", "x")]) == MatchCounts(1, 1, 0)
    assert match_edits([Edit.noop(0)], [Edit.noop(0)]) == MatchCounts(0, 0, 0)


def test_f_beta_formula():
    assert f_beta(0.5, 1.0, 0.5) == pytest.approx(0.5556, abs=5e-5)
    p, r, b = Fraction(1, 2), Fraction(1), Fraction(1, 2)
    # weighted harmonic mean of P and R with weight b^2 on recall
    harmonic = 1 / ((1 / (1 + b * b)) * (1 / p) + (b * b / (1 + b * b)) * (1 / r))
    assert f_beta(0.5, 1.0, 0.5) == pytest.approx(float(harmonic), abs=1e-15)
    assert f_beta(0.0, 0.0) == 0.0
    with pytest.raises(ValueError):
        f_beta(1.0, 1.0, 0)


def test_zero_denominator_conventions():
    counts = MatchCounts(0, 0, 3)
    assert (counts.precision, counts.recall, counts.f_beta()) == (1.0, 0.0, 0.0)
    assert MatchCounts().f_beta() == 1.0
    with pytest.raises(ValueError):
        MatchCounts(-1, 0, 0)


def test_airplane_annotator1_hypothesis():
    gold = parse_m2(AIRPLANE_M2)
    hyp = M2Corpus((AnnotatedSentence(gold[0].source_tokens,
                                      (Edit(3, 4, "R:SPELL", "맞았습니다", 0),)),))
    report = evaluate(hyp, gold)
    assert report.per_sentence[0][0] == 1
    assert (report.precision, report.recall, report.f_beta) == (1.0, 1.0, 1.0)
    single = evaluate(hyp, restrict(gold, 0))
    assert single.f_beta == 0.0


def test_unchanged_hypothesis_gets_zero_recall():
    gold = parse_m2(AIRPLANE_M2)
    hyp = M2Corpus((AnnotatedSentence(gold[0].source_tokens),))
    report = evaluate(hyp, gold)
    assert (report.precision, report.recall, report.f_beta) == (1.0, 0.0, 0.0)


def test_tie_breaks_prefer_tp_then_lower_id():
    tokens = ("가", "나")
    gold = AnnotatedSentence(tokens, (Edit(0, 1, "R:SPELL", "거", 0), Edit(0, 1, "R:SPELL", "거", 1)))
    report = evaluate(M2Corpus((AnnotatedSentence(tokens, (Edit(0, 1, "R:SPELL", "거"),)),)),
                      M2Corpus((gold,)))
    assert report.per_sentence[0][0] == 0


def test_plain_text_hypothesis():
    gold = parse_m2(AIRPLANE_M2)
    report = evaluate(hypothesis_from_text([AIRPLANE_TARGET_1], gold), gold)
    assert report.f_beta == 1.0
    report = evaluate(hypothesis_from_text([AIRPLANE_TARGET_0], gold), gold)
    assert report.f_beta == 1.0 and report.per_sentence[0][0] == 0
    with pytest.raises(CorpusMismatchError):
        hypothesis_from_text([AIRPLANE_SOURCE, AIRPLANE_SOURCE], gold)


def test_mismatch_errors_name_sentence():
    gold = parse_m2("S 가\n\nS 나\n")
    with pytest.raises(CorpusMismatchError) as info:
        evaluate(parse_m2("S 가\n\nS 다\n"), gold)
    assert info.value.sentence == 2
    with pytest.raises(CorpusMismatchError):
        evaluate(parse_m2("S 가\n"), gold)
    with pytest.raises(ValueError):
        evaluate(gold, gold, selection="global")


def random_edits(rng, n, annotator):
    out, pos = [], 0
    while pos < n:
        if rng.random() < 0.4:
            end = min(n, pos + rng.randint(0, 1))
            out.append(Edit(pos, end, "R:OTHER", rng.choice("xyz"), annotator))
            pos = max(end, pos + 1)
        else:
            pos += 1
    return out


def random_two_reference_corpus(rng):
    gold, hyp = [], []
    for _ in range(rng.randint(1, 6)):
        tokens = tuple(f"t{i}" for i in range(rng.randint(1, 5)))
        gold.append(build_sentence(tokens, random_edits(rng, len(tokens), 0)
                                   + random_edits(rng, len(tokens), 1), [0, 1]))
        hyp.append(AnnotatedSentence(tokens, tuple(random_edits(rng, len(tokens), 0))))
    return M2Corpus(tuple(hyp)), M2Corpus(tuple(gold))


@pytest.mark.parametrize("seed", range(50))
def test_sentence_level_dominance(seed):
    hyp, gold = random_two_reference_corpus(random.Random(seed))
    report = evaluate(hyp, gold)
    for (chosen, counts), h, g in zip(report.per_sentence, hyp, gold):
        for a in (0, 1):
            single = match_edits(h.edits_for(0), g.edits_for(a))
            assert counts.f_beta() >= single.f_beta()


@pytest.mark.parametrize("seed", range(50))
def test_corpus_selection_dominates_every_single_reference(seed):
    hyp, gold = random_two_reference_corpus(random.Random(seed))
    multi = evaluate(hyp, gold, selection="corpus")
    for a in (0, 1):
        assert multi.f_beta >= evaluate(hyp, restrict(gold, a)).f_beta


def test_sentence_selection_can_lose_to_a_fixed_reference_at_corpus_level():
    # per-sentence maxima do not add up to a corpus maximum
    losses = 0
    for seed in range(200):
        hyp, gold = random_two_reference_corpus(random.Random(seed))
        multi = evaluate(hyp, gold).f_beta
        if any(multi < evaluate(hyp, restrict(gold, a)).f_beta for a in (0, 1)):
            losses += 1
    assert losses > 0


@given(st.randoms(use_true_random=False))
def test_self_score_and_duplicate_reference(rng):
    hyp, gold = random_two_reference_corpus(rng)
    for a in gold.annotators:
        assert evaluate(restrict(gold, a), gold).f_beta == 1.0
    # append a copy of annotator 0 as annotator 2
    dup = M2Corpus(tuple(AnnotatedSentence(s.source_tokens, s.edits + tuple(
        Edit(e.start, e.end, e.label, e.replacement, 2, e.required, e.comment)
        for e in s.edits if e.annotator == 0)) for s in gold))
    assert evaluate(hyp, dup).aggregate == evaluate(hyp, gold).aggregate
    assert evaluate(hyp, dup, selection="corpus").f_beta == evaluate(hyp, gold, selection="corpus").f_beta
    for selection in ("sentence", "corpus"):
        report = evaluate(restrict(gold, 0), dup, selection=selection)
        assert 0.0 <= report.precision <= 1.0 and 0.0 <= report.recall <= 1.0
