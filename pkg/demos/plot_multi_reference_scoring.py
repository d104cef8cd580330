"""
Scoring against two references
==============================

A system output that matches either annotator should not be penalised.
"""

from kollakit import parse_m2, evaluate, hypothesis_from_text
from kollakit.m2 import split_by_annotator

gold = parse_m2(
    "S 비행기 음식이 안 막였습니다 .\n"
    "A 1 2|||R:NOUN+ADP → NOUN+ADP|||음식을|||REQUIRED|||-NONE-|||0\n"
    "A 3 4|||R:SPELL|||먹었습니다|||REQUIRED|||-NONE-|||0\n"
    "A 3 4|||R:SPELL|||맞았습니다|||REQUIRED|||-NONE-|||1\n"
)

# a plain corrected sentence is turned into edits first
system = hypothesis_from_text(["비행기 음식이 안 맞았습니다 ."], gold)
print(system[0].edits)

both = evaluate(system, gold)
print("two references :", both.precision, both.recall, round(both.f_beta, 4),
      "chosen", both.chosen_distribution())

only_first = split_by_annotator(gold)[0]
one = evaluate(system, only_first)
print("annotator 0 only:", one.precision, one.recall, round(one.f_beta, 4))

# leaving the sentence alone proposes nothing: P=1 by convention, R=0
unchanged = hypothesis_from_text(["비행기 음식이 안 막였습니다 ."], gold)
r = evaluate(unchanged, gold)
print("no edits:", r.precision, r.recall, r.f_beta)

# per-sentence best references need not add up to the best corpus score;
# selection="corpus" searches assignments so no fixed reference beats it
print(evaluate(system, gold, selection="corpus").f_beta)
