"""Essay rubric, per-group score sheets and Cohen's kappa agreement."""

from __future__ import annotations

import csv
import enum
import io
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Mapping, Optional, Sequence

import numpy as np

N_ESSAYS = 25
N_RATERS = 2


class Category(enum.Enum):
    EXPRESSION = "expression"
    STRUCTURE = "structure"
    CONTENT = "content"


class RubricDimension(enum.Enum):
    GRAMMATICAL_ACCURACY = ("grammatical_accuracy", Category.EXPRESSION)
    VOCABULARY_USE = ("vocabulary_use", Category.EXPRESSION)
    EXPRESSIONS = ("expressions", Category.EXPRESSION)
    INTERNAL_STRUCTURE = ("internal_structure", Category.STRUCTURE)
    ESSAY_ORGANIZATION = ("essay_organization", Category.STRUCTURE)
    PARAGRAPH_COHERENCY = ("paragraph_coherency", Category.STRUCTURE)
    LENGTH = ("length", Category.STRUCTURE)
    TOPIC_CLARITY = ("topic_clarity", Category.CONTENT)
    DETAILED_EXPLANATION = ("detailed_explanation", Category.CONTENT)
    CREATIVITY = ("creativity", Category.CONTENT)

    @property
    def key(self) -> str:
        return self.value[0]

    @property
    def category(self) -> Category:
        return self.value[1]


DIMENSIONS = tuple(RubricDimension)
N_DIMENSIONS = len(DIMENSIONS)
N_COLUMNS = N_ESSAYS * N_DIMENSIONS


class LearnerGroup(enum.Enum):
    FB = "foreign beginner"
    FI = "foreign intermediate"
    HB = "heritage beginner"
    HI = "heritage intermediate"


GROUPS = tuple(LearnerGroup)

ESSAY_MAJOR = "essay-major"
DIM_MAJOR = "dim-major"
COLUMN_ORDERS = (ESSAY_MAJOR, DIM_MAJOR)


class ScoreFileError(ValueError):
    def __init__(self, message: str, row: Optional[int] = None, column: Optional[int] = None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.row = row
        self.column = column


@dataclass(frozen=True)
class ScoreSheet:
    """Ratings of one learner group, shaped (essay, dimension, rater)."""

    group: LearnerGroup
    ratings: np.ndarray

    def __post_init__(self):
        ratings = np.asarray(self.ratings)
        if ratings.shape != (N_ESSAYS, N_DIMENSIONS, N_RATERS):
            raise ValueError(f"ratings must have shape {(N_ESSAYS, N_DIMENSIONS, N_RATERS)}, "
                             f"got {ratings.shape}")
        if not np.issubdtype(ratings.dtype, np.integer):
            raise ValueError("ratings must be integers")
        ratings = ratings.copy()
        ratings.setflags(write=False)
        object.__setattr__(self, "ratings", ratings)

    def rater(self, k: int) -> np.ndarray:
        """Flat essay-major ratings (250 values) of rater ``k``."""
        return self.ratings[:, :, k].reshape(-1)


def _int_or_none(cell: str) -> Optional[int]:
    try:
        return int(cell.strip())
    except ValueError:
        return None


def parse_scores(file_text: str, group: LearnerGroup, *, column_order: str = ESSAY_MAJOR,
                 score_range: tuple[int, int] = (0, 10)) -> ScoreSheet:
    """Read a 2 x 250 score file; a leading non-numeric row is taken as a header.

    Row and column numbers in errors are 1-based and count the header row.
    """
    if column_order not in COLUMN_ORDERS:
        raise ValueError(f"column_order must be one of {COLUMN_ORDERS}")
    low, high = score_range
    rows = [(n, row) for n, row in enumerate(csv.reader(io.StringIO(file_text.lstrip("\ufeff"))), 1)
            if any(cell.strip() for cell in row)]
    if rows and all(_int_or_none(cell) is None for cell in rows[0][1]):
        rows = rows[1:]
    if len(rows) != N_RATERS:
        raise ScoreFileError(f"expected {N_RATERS} data rows, found {len(rows)}")

    grid = np.empty((N_ESSAYS, N_DIMENSIONS, N_RATERS), dtype=np.int64)
    for rater, (rowno, row) in enumerate(rows):
        if len(row) != N_COLUMNS:
            column = N_COLUMNS + 1 if len(row) > N_COLUMNS else len(row) + 1
            raise ScoreFileError(f"expected {N_COLUMNS} columns, found {len(row)}", rowno, column)
        for col, cell in enumerate(row):
            value = _int_or_none(cell)
            if value is None:
                raise ScoreFileError(f"non-integer score {cell!r}", rowno, col + 1)
            if not low <= value <= high:
                raise ScoreFileError(f"score {value} outside {low}..{high}", rowno, col + 1)
            if column_order == ESSAY_MAJOR:
                essay, dim = divmod(col, N_DIMENSIONS)
            else:
                dim, essay = divmod(col, N_ESSAYS)
            grid[essay, dim, rater] = value
    return ScoreSheet(group, grid)


def cohen_kappa(a: Sequence[Hashable], b: Sequence[Hashable]) -> float:
    """Unweighted Cohen's kappa over the labels the two raters actually used.

    Computed from integer counts as (n*agree - sum m_a*m_b) / (n^2 - sum m_a*m_b),
    so only the final division rounds. When chance agreement is total (both
    raters used one and the same label) the result is 1.0.
    """
    a = a.tolist() if isinstance(a, np.ndarray) else list(a)
    b = b.tolist() if isinstance(b, np.ndarray) else list(b)
    if len(a) != len(b):
        raise ValueError(f"rating sequences differ in length: {len(a)} vs {len(b)}")
    if not a:
        raise ValueError("cannot compute kappa on empty ratings")
    n = len(a)
    agree = sum(x == y for x, y in zip(a, b))
    ma, mb = Counter(a), Counter(b)
    chance = sum(count * mb[label] for label, count in ma.items())
    if chance == n * n:
        return 1.0
    return (n * agree - chance) / (n * n - chance)


@dataclass(frozen=True)
class KappaReport:
    per_group: Mapping[LearnerGroup, float]
    overall: Optional[float]

    @property
    def mean_of_groups(self) -> float:
        """Unweighted mean of the group kappas, the alternative to pooling."""
        return float(np.mean(list(self.per_group.values())))


def kappa_report(sheets: Sequence[ScoreSheet], *, require_all: bool = False) -> KappaReport:
    """Per-group kappa over 250 pairs each; overall kappa pools all groups.

    The overall value is only computed when all four groups are present;
    otherwise it is ``None`` (or an error with ``require_all``).
    """
    seen = [s.group for s in sheets]
    duplicates = sorted({g.name for g in seen if seen.count(g) > 1})
    if duplicates:
        raise ValueError(f"duplicate group(s): {', '.join(duplicates)}")
    missing = [g.name for g in GROUPS if g not in seen]
    if missing and require_all:
        raise ValueError(f"missing group(s): {', '.join(missing)}")

    ordered = sorted(sheets, key=lambda s: GROUPS.index(s.group))
    per_group = {s.group: cohen_kappa(s.rater(0), s.rater(1)) for s in ordered}
    overall = None
    if not missing:
        overall = cohen_kappa(np.concatenate([s.rater(0) for s in ordered]),
                              np.concatenate([s.rater(1) for s in ordered]))
    return KappaReport(per_group, overall)
