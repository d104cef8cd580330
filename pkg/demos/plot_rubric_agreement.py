"""
Rater agreement on the essay rubric
===================================

Ten rubric dimensions, twenty-five essays per learner group, two raters.
"""

import numpy as np

from kollakit.rubric import (DIMENSIONS, GROUPS, N_COLUMNS, cohen_kappa, kappa_report,
                             parse_scores)

for d in DIMENSIONS:
    print(f"{d.category.value:10} {d.key}")

rng = np.random.default_rng(0)


def fake_file(agreement):
    first = rng.integers(3, 11, N_COLUMNS)
    noise = rng.integers(3, 11, N_COLUMNS)
    second = np.where(rng.random(N_COLUMNS) < agreement, first, noise)
    return "\n".join(",".join(map(str, row)) for row in (first, second)) + "\n"


sheets = [parse_scores(fake_file(a), g) for g, a in zip(GROUPS, (0.85, 0.8, 0.8, 0.7))]
print(sheets[0].ratings.shape)

report = kappa_report(sheets)
for g, k in report.per_group.items():
    print(g.name, round(k, 4))
# pooled over all 1,000 pairs versus the plain average of the four groups
print("All", round(report.overall, 4), "mean", round(report.mean_of_groups, 4))

# small cases worth knowing by heart
print(cohen_kappa([1, 2, 1, 2], [1, 2, 2, 2]))
print(cohen_kappa([1, 2], [2, 1]))

# two raters guessing independently land near zero
a, b = rng.integers(0, 11, 100_000), rng.integers(0, 11, 100_000)
print(round(cohen_kappa(a, b), 4))
