"""Greedy coalition-manipulation heuristics for Borda.

REVERSE builds whole ballots; LSLG and LSLA fill a ColumnMatrix one score at
a time, in the manner of list-scheduling and bin-packing heuristics.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field
from typing import Optional

from .election import ScoreProfile, ValidationError, gaps
from .matrix import ColumnMatrix, VoteMatrix


class Status(str, enum.Enum):
    SUCCESS = "Success"
    FAILURE = "Failure"


class TiePolicy(str, enum.Enum):
    """LSLA tie-break between columns with equal average desired score."""

    MIN_FILL = "minfill"
    INDEX_ORDER = "index"


class LslgTie(str, enum.Enum):
    """LSLG tie-break between unfilled columns with equal totals."""

    HIGHEST_INDEX = "high"
    LOWEST_INDEX = "low"


@dataclass(frozen=True)
class Placement:
    iteration: int
    column: int
    score: int
    column_sum: int


@dataclass(frozen=True)
class GreedyOutcome:
    status: Status
    matrix: Optional[ColumnMatrix]
    trace: tuple[Placement, ...] = field(default=(), repr=False)

    @property
    def ok(self) -> bool:
        return self.status is Status.SUCCESS


class ScorePool:
    """The multiset S_n: n copies of each score 0..m-2, kept as per-value counts."""

    def __init__(self, m: int, n: int):
        self.top = m - 2
        self.counts = [n] * (m - 1) if m >= 2 else []
        self.size = n * (m - 1) if m >= 2 else 0

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        for v in range(self.top, -1, -1):
            yield from [v] * self.counts[v]

    def largest(self) -> int:
        if self.size == 0:
            raise ValueError("score pool is empty")
        while self.counts[self.top] == 0:
            self.top -= 1
        return self.top

    def remove(self, value: int) -> None:
        if not 0 <= value < len(self.counts) or self.counts[value] == 0:
            raise ValueError(f"score {value} not in pool")
        self.counts[value] -= 1
        self.size -= 1

    def pop_largest(self) -> int:
        v = self.largest()
        self.remove(v)
        return v


def choose_score(remaining_gap: int, pool: ScorePool) -> int:
    """Largest pooled score that fits in the remaining gap, else the largest overall."""
    top = pool.largest()
    for v in range(min(remaining_gap, top), -1, -1):
        if pool.counts[v]:
            return v
    return top


def reverse(profile: ScoreProfile) -> tuple[int, VoteMatrix]:
    m, d = profile.m, profile.distinguished
    current = list(profile.scores)
    others = profile.competitors
    rows = []
    while max(current) > current[d - 1]:
        # ascending current score; equal scores keep ascending index
        order = sorted(others, key=lambda i: (current[i - 1], i))
        row = [0] * m
        row[d - 1] = m - 1
        for rank, cand in enumerate(order):
            row[cand - 1] = m - 2 - rank
        for i in range(m):
            current[i] += row[i]
        rows.append(tuple(row))
    return len(rows), VoteMatrix(m, tuple(rows))


def _empty_columns(profile: ScoreProfile, n: int) -> list[list[int]]:
    cols: list[list[int]] = [[] for _ in range(profile.m)]
    cols[profile.distinguished - 1] = [profile.m - 1] * n
    return cols


def _finish(profile: ScoreProfile, n: int, cols, trace) -> GreedyOutcome:
    d = profile.distinguished
    totals = [sum(c) + s for c, s in zip(cols, profile.scores)]
    bounds = gaps(profile, n).gaps
    matrix = ColumnMatrix(profile.m, n, d, tuple(map(tuple, cols)), bounds)
    if totals[d - 1] >= max(totals):
        return GreedyOutcome(Status.SUCCESS, matrix, tuple(trace))
    return GreedyOutcome(Status.FAILURE, None, tuple(trace))


def lslg(
    profile: ScoreProfile,
    n: int,
    tie: LslgTie = LslgTie.HIGHEST_INDEX,
    record_trace: bool = False,
) -> GreedyOutcome:
    """Largest remaining score into the unfilled column with the lowest total."""
    if n < 1:
        raise ValidationError(f"lslg needs n >= 1, got {n}")
    sign = -1 if LslgTie(tie) is LslgTie.HIGHEST_INDEX else 1
    cols = _empty_columns(profile, n)
    pool = ScorePool(profile.m, n)
    # heap of (current total, signed candidate)
    heap = [(profile.score(i), sign * i) for i in profile.competitors]
    heapq.heapify(heap)
    trace = []
    it = 0
    while len(pool):
        total, key = heapq.heappop(heap)
        c = sign * key
        v = pool.pop_largest()
        col = cols[c - 1]
        col.append(v)
        it += 1
        if record_trace:
            trace.append(Placement(it, c, v, sum(col)))
        if len(col) < n:
            heapq.heappush(heap, (total + v, key))
    return _finish(profile, n, cols, trace)


def lsla(
    profile: ScoreProfile,
    n: int,
    tie_policy: TiePolicy = TiePolicy.MIN_FILL,
    record_trace: bool = False,
) -> GreedyOutcome:
    """Best-fitting score into the column with the largest average desired score."""
    if n < 1:
        raise ValidationError(f"lsla needs n >= 1, got {n}")
    tie_policy = TiePolicy(tie_policy)
    g = gaps(profile, n)
    cols = _empty_columns(profile, n)
    pool = ScorePool(profile.m, n)
    remaining = {i: g[i] for i in profile.competitors}
    filled = {i: 0 for i in profile.competitors}
    trace = []
    it = 0
    while len(pool):
        best = None
        for i in profile.competitors:
            slots = n - filled[i]
            if slots == 0:
                continue
            if best is None:
                best = i
                continue
            # compare remaining[i]/slots against remaining[best]/best_slots exactly
            best_slots = n - filled[best]
            lhs = remaining[i] * best_slots
            rhs = remaining[best] * slots
            if lhs > rhs or (
                lhs == rhs
                and tie_policy is TiePolicy.MIN_FILL
                and filled[i] < filled[best]
            ):
                best = i
        v = choose_score(remaining[best], pool)
        pool.remove(v)
        col = cols[best - 1]
        col.append(v)
        remaining[best] -= v
        filled[best] += 1
        it += 1
        if record_trace:
            trace.append(Placement(it, best, v, sum(col)))
    return _finish(profile, n, cols, trace)
