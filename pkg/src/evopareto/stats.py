"""Friedman test with Nemenyi post-hoc and critical-difference grouping.

Scores arrive as an (n datasets x m algorithms) table plus a direction flag;
datasets are typically (problem, run) cells.  Ranking is 1 = best with
average ranks on ties.  The Friedman statistic is the plain chi-square form
(no Iman-Davenport correction); the Nemenyi critical difference uses an
embedded table of studentized-range-derived q values at alpha = 0.05.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import chi2, rankdata

# q_0.05 for 2..10 compared algorithms (studentized range / sqrt(2)).
_Q_ALPHA_005 = {
    2: 1.960, 3: 2.343, 4: 2.569, 5: 2.728, 6: 2.850,
    7: 2.949, 8: 3.031, 9: 3.102, 10: 3.164,
}


@dataclass(frozen=True)
class ScoreTable:
    algorithms: tuple[str, ...]
    datasets: tuple[str, ...]
    scores: np.ndarray  # (n datasets, m algorithms)
    better: str = "higher"

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=np.float64)
        object.__setattr__(self, "scores", scores)
        n, m = scores.shape
        if m != len(self.algorithms) or n != len(self.datasets):
            raise ValueError("score matrix shape does not match labels")
        if n < 2 or m < 2:
            raise ValueError("need at least 2 datasets and 2 algorithms")
        if self.better not in ("higher", "lower"):
            raise ValueError("better must be 'higher' or 'lower'")
        if not np.all(np.isfinite(scores)):
            raise ValueError("score table has missing or non-finite cells")


@dataclass(frozen=True)
class CDResult:
    algorithms: tuple[str, ...]
    mean_ranks: np.ndarray
    statistic: float
    p_value: float
    critical_difference: float
    groups: tuple[tuple[str, ...], ...]


def rank_rows(table: ScoreTable) -> np.ndarray:
    """Per-dataset ranks, 1 = best under the table's direction, ties averaged."""
    oriented = -table.scores if table.better == "higher" else table.scores
    return np.vstack([rankdata(row, method="average") for row in oriented])


def friedman(table: ScoreTable) -> tuple[float, float]:
    """Friedman chi-square statistic and p-value (m - 1 degrees of freedom)."""
    n, m = table.scores.shape
    if m < 3:
        raise ValueError("the chi-square approximation needs at least 3 algorithms")
    mean_ranks = rank_rows(table).mean(axis=0)
    statistic = 12.0 * n / (m * (m + 1)) * (np.sum(mean_ranks ** 2) - m * (m + 1) ** 2 / 4.0)
    return float(statistic), float(chi2.sf(statistic, m - 1))


def nemenyi_cd(m: int, n: int, alpha: float = 0.05) -> float:
    """Nemenyi critical difference: q_alpha(m) * sqrt(m(m+1) / 6n)."""
    if alpha != 0.05:
        raise ValueError("only alpha = 0.05 is supported (embedded q table)")
    if m not in _Q_ALPHA_005:
        raise ValueError(f"m = {m} outside the embedded table range 2..10")
    if n < 1:
        raise ValueError("n must be >= 1")
    return _Q_ALPHA_005[m] * np.sqrt(m * (m + 1) / (6.0 * n))


def cd_groups(mean_ranks: Sequence[float], critical_difference: float) -> list[tuple[int, ...]]:
    """Maximal windows of algorithms whose extreme mean ranks differ by <= CD.

    Returns tuples of indices into ``mean_ranks``; every algorithm belongs to
    at least one group and no emitted group is a subset of another.
    """
    ranks = np.asarray(mean_ranks, dtype=np.float64)
    order = np.argsort(ranks, kind="stable")
    sorted_ranks = ranks[order]
    windows: list[tuple[int, ...]] = []
    for start in range(len(order)):
        end = start
        while end + 1 < len(order) and sorted_ranks[end + 1] - sorted_ranks[start] <= critical_difference:
            end += 1
        windows.append(tuple(sorted(order[start : end + 1].tolist())))
    maximal = []
    for w in windows:
        members = set(w)
        if not any(members < set(other) for other in windows):
            if w not in maximal:
                maximal.append(w)
    return maximal


def friedman_nemenyi(table: ScoreTable, alpha: float = 0.05) -> CDResult:
    """Full comparison pipeline: ranks, test, CD, and diagram groups."""
    statistic, p_value = friedman(table)
    mean_ranks = rank_rows(table).mean(axis=0)
    cd = nemenyi_cd(len(table.algorithms), len(table.datasets), alpha)
    groups = tuple(
        tuple(table.algorithms[i] for i in group)
        for group in cd_groups(mean_ranks, cd)
    )
    return CDResult(
        algorithms=table.algorithms,
        mean_ranks=mean_ranks,
        statistic=statistic,
        p_value=p_value,
        critical_difference=cd,
        groups=groups,
    )
