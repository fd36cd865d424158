"""Borda elections: votes, tallies, gaps and manipulation checks.

Candidates are numbered 1..m everywhere in the public API.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

log = logging.getLogger(__name__)


class ValidationError(ValueError):
    """Raised when an election, profile or manipulation is malformed."""


def _check_ranking(ranking: Sequence[int], m: int) -> bool:
    return len(ranking) == m and sorted(ranking) == list(range(1, m + 1))


@dataclass(frozen=True)
class Election:
    m: int
    votes: tuple[tuple[int, ...], ...]
    distinguished: int

    def __post_init__(self):
        object.__setattr__(self, "votes", tuple(tuple(v) for v in self.votes))
        if self.m < 1:
            raise ValidationError(f"need at least one candidate, got m={self.m}")
        if not 1 <= self.distinguished <= self.m:
            raise ValidationError(
                f"distinguished candidate {self.distinguished} not in 1..{self.m}"
            )
        for idx, vote in enumerate(self.votes):
            if not _check_ranking(vote, self.m):
                raise ValidationError(
                    f"vote {idx} is not a permutation of 1..{self.m}: {list(vote)}"
                )


@dataclass(frozen=True)
class ScoreProfile:
    """Per-candidate Borda totals of the non-manipulators.

    ``consistent`` records whether the total is a multiple of m(m-1)/2, which
    every tally of real votes satisfies. Inconsistent profiles are accepted
    (the algorithms only need the scores) but a warning is logged.
    """

    m: int
    scores: tuple[int, ...]
    distinguished: int
    voter_count: Optional[int] = None
    consistent: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "scores", tuple(int(s) for s in self.scores))
        if self.m < 1:
            raise ValidationError(f"need at least one candidate, got m={self.m}")
        if len(self.scores) != self.m:
            raise ValidationError(
                f"expected {self.m} scores, got {len(self.scores)}"
            )
        if any(s < 0 for s in self.scores):
            raise ValidationError(f"scores must be non-negative: {list(self.scores)}")
        if not 1 <= self.distinguished <= self.m:
            raise ValidationError(
                f"distinguished candidate {self.distinguished} not in 1..{self.m}"
            )
        per_vote = self.m * (self.m - 1) // 2
        total = sum(self.scores)
        if per_vote == 0:
            ok = total == 0
        else:
            ok = total % per_vote == 0
        if ok and self.voter_count is not None:
            ok = total == self.voter_count * per_vote
        object.__setattr__(self, "consistent", ok)
        if not ok:
            log.warning(
                "score profile %s is not realizable by %s votes",
                list(self.scores),
                "any number of" if self.voter_count is None else self.voter_count,
            )

    def score(self, candidate: int) -> int:
        return self.scores[candidate - 1]

    @property
    def d_score(self) -> int:
        return self.scores[self.distinguished - 1]

    @property
    def competitors(self) -> list[int]:
        return [i for i in range(1, self.m + 1) if i != self.distinguished]

    def with_distinguished(self, d: int) -> "ScoreProfile":
        return ScoreProfile(self.m, self.scores, d, self.voter_count)


@dataclass(frozen=True)
class GapVector:
    n: int
    gaps: tuple[int, ...]

    def __getitem__(self, candidate: int) -> int:
        return self.gaps[candidate - 1]


def tally(election: Election) -> ScoreProfile:
    m = election.m
    scores = [0] * m
    for vote in election.votes:
        for pos, cand in enumerate(vote):
            scores[cand - 1] += m - 1 - pos
    return ScoreProfile(m, tuple(scores), election.distinguished, len(election.votes))


def gaps(profile: ScoreProfile, n: int) -> GapVector:
    if n < 0:
        raise ValidationError(f"coalition size must be non-negative, got {n}")
    top = profile.d_score + n * (profile.m - 1)
    return GapVector(n, tuple(top - s for s in profile.scores))


def winners(profile: ScoreProfile) -> set[int]:
    best = max(profile.scores)
    return {i + 1 for i, s in enumerate(profile.scores) if s == best}


def final_scores(profile: ScoreProfile, rows: Iterable[Sequence[int]]) -> list[int]:
    """Scores after adding manipulator score rows (one entry per candidate)."""
    totals = list(profile.scores)
    for row in rows:
        for i, s in enumerate(row):
            totals[i] += s
    return totals


def verify_manipulation(profile: ScoreProfile, rows: Iterable[Sequence[int]]) -> bool:
    """True iff the manipulator score rows make d a (co-)winner.

    Each row gives the Borda score every candidate receives from one
    manipulator and must rank d first.
    """
    m, d = profile.m, profile.distinguished
    rows = [tuple(r) for r in rows]
    for idx, row in enumerate(rows):
        if sorted(row) != list(range(m)):
            raise ValidationError(
                f"manipulator row {idx} is not a permutation of 0..{m - 1}: {list(row)}"
            )
        if row[d - 1] != m - 1:
            raise ValidationError(f"manipulator row {idx} does not rank d={d} first")
    totals = final_scores(profile, rows)
    return all(totals[d - 1] >= t for t in totals)


def ballot_to_scores(ballot: Sequence[int], m: int) -> tuple[int, ...]:
    if not _check_ranking(ballot, m):
        raise ValidationError(f"not a permutation of 1..{m}: {list(ballot)}")
    row = [0] * m
    for pos, cand in enumerate(ballot):
        row[cand - 1] = m - 1 - pos
    return tuple(row)


def scores_to_ballot(row: Sequence[int]) -> tuple[int, ...]:
    """Ranking that realizes a score row; equal scores keep ascending index."""
    return tuple(sorted(range(1, len(row) + 1), key=lambda c: (-row[c - 1], c)))
