"""Korean learner-corpus tooling.

Error annotation of sentence pairs, multi-annotator M2 files, multi-reference
GEC scoring and rubric-score agreement.
"""

from .alignment import AlignCosts, AlignOp, OpKind, align, merge_ops
from .classify import Edit, ErrorLabel, LabelCode, NormalizationTable, annotate_pair, classify
from .hangul import (Eojeol, JamoString, Lexicon, decompose_jamo, default_lexicon,
                     jamo_similarity, recompose_jamo, strip_particle, tokenize)
from .m2 import (AnnotatedSentence, M2Corpus, M2ParseError, apply_edits, build_sentence, lint,
                 merge_corpora, parse_m2, serialize_m2, split_by_annotator)
from .rubric import (KappaReport, LearnerGroup, RubricDimension, ScoreSheet, cohen_kappa,
                     kappa_report, parse_scores)
from .scorer import EvalReport, MatchCounts, evaluate, hypothesis_from_text, match_edits
from .stats import CorpusStats, corpus_stats

__version__ = "0.1.0"

__all__ = [
    "AlignCosts", "AlignOp", "AnnotatedSentence", "CorpusStats", "Edit", "Eojeol",
    "ErrorLabel", "EvalReport", "JamoString", "KappaReport", "LabelCode", "LearnerGroup",
    "Lexicon", "M2Corpus", "M2ParseError", "MatchCounts", "NormalizationTable", "OpKind",
    "RubricDimension", "ScoreSheet", "align", "annotate_pair", "apply_edits",
    "build_sentence", "classify", "cohen_kappa", "corpus_stats", "decompose_jamo",
    "default_lexicon", "evaluate", "hypothesis_from_text", "jamo_similarity",
    "kappa_report", "lint", "match_edits", "merge_corpora", "merge_ops", "parse_m2",
    "parse_scores", "recompose_jamo", "serialize_m2", "split_by_annotator",
    "strip_particle", "tokenize",
]
