"""
Corpus statistics and the command line
======================================

Build a small two-annotator corpus, lint it, count it, then do the same
through ``kolla``.
"""

import subprocess
import sys
import tempfile
from pathlib import Path

from kollakit import annotate_pair, build_sentence, corpus_stats, lint, M2Corpus, serialize_m2

pairs = [
    ("저는 학교에 갔어요 .", "저는 학교에 갔어요 .", "저는 학교에 갔습니다 ."),
    ("친구 같이 공부해요 .", "친구와 같이 공부해요 .", "친구와 같이 공부해요 ."),
    ("한국어 를 할수 있다 .", "한국어를 할 수 있다 .", "한국어를 할 수 있다 ."),
]
blocks = []
for src, t0, t1 in pairs:
    edits = annotate_pair(src, t0, 0) + annotate_pair(src, t1, 1)
    blocks.append(build_sentence(src.split(), edits, [0, 1]))
corpus = M2Corpus(tuple(blocks))
print(serialize_m2(corpus))

print(lint(corpus, expect_annotators=2))
for key, value in corpus_stats(corpus).as_pairs():
    print(key, value)

# the same through the CLI
workdir = Path(tempfile.mkdtemp())
(workdir / "src.txt").write_text("\n".join(p[0] for p in pairs) + "\n", encoding="utf-8")
for k in (0, 1):
    (workdir / f"t{k}.txt").write_text("\n".join(p[k + 1] for p in pairs) + "\n", encoding="utf-8")


def kolla(*args):
    out = subprocess.run([sys.executable, "-m", "kollakit", *map(str, args)],
                         capture_output=True, text=True)
    print("$ kolla", *args, f"(exit {out.returncode})")
    print(out.stdout + out.stderr)


kolla("annotate", workdir / "src.txt", workdir / "t0.txt", "-o", workdir / "a0.m2")
kolla("annotate", workdir / "src.txt", workdir / "t1.txt", "--annotator-id", 1, "-o", workdir / "a1.m2")
kolla("merge", workdir / "a0.m2", workdir / "a1.m2", "-o", workdir / "gold.m2")
kolla("validate", workdir / "gold.m2")
kolla("stats", workdir / "gold.m2", "--report")
kolla("score", workdir / "t1.txt", workdir / "gold.m2", "--report")
