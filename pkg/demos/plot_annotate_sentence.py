"""
Annotating a learner sentence
=============================

Align a learner sentence with two corrections, label each edit and write
the result as one multi-annotator M2 block.
"""

from kollakit import annotate_pair, build_sentence, serialize_m2, M2Corpus, align, merge_ops
from kollakit.hangul import decompose_jamo, jamo_similarity, tokenize

source = "비행기 음식이 안 막였습니다 ."
fixed_grammar = "비행기 음식을 안 먹었습니다 ."
fixed_meaning = "비행기 음식이 안 맞았습니다 ."

# each eojeol is split into a content stem and a trailing particle
for tok in tokenize(source):
    print(f"{tok.surface:8} stem={tok.stem:6} particle={tok.particle} kind={tok.particle_kind}")

# the misspelt verb and its correction differ in two jamo out of thirteen
print(decompose_jamo("막였습니다").units)
print(decompose_jamo("먹었습니다").units)
print("similarity", round(jamo_similarity("막였습니다", "먹었습니다"), 4))

# token alignment, before and after the split/merge/transpose rewrite
ops = merge_ops(align(source.split(), fixed_grammar.split()))
print(ops)

# one call does tokenize + align + classify
edits = annotate_pair(source, fixed_grammar, 0) + annotate_pair(source, fixed_meaning, 1)
for e in edits:
    print(e.annotator, e.src_span, e.label, e.replacement)

block = build_sentence(source.split(), edits, annotators=[0, 1])
print(serialize_m2(M2Corpus((block,))))

# spacing and order errors get structural labels
for src, tgt in [("할수 있다", "할 수 있다"), ("할 수 있다", "할수 있다"), ("빨리 먹었다", "먹었다 빨리")]:
    print(src, "->", tgt, [e.label for e in annotate_pair(src, tgt)])
