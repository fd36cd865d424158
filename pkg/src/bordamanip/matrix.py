"""Column matrices, vote matrices, and the matching-based conversion between them.

A ColumnMatrix only fixes which scores each candidate receives from the
coalition. Because every value 0..m-1 occurs exactly n times, the occurrence
graph (values vs. columns) is n-regular and always has a perfect matching.
Peeling one matching per round turns the columns into n legal ballots.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from .election import ScoreProfile, ValidationError, gaps, scores_to_ballot


class MatchingError(RuntimeError):
    """A regular occurrence graph had no perfect matching. Always a bug."""


@dataclass(frozen=True)
class ColumnMatrix:
    """Multiset of manipulator scores per candidate (column i is candidate i+1)."""

    m: int
    n: int
    distinguished: int
    columns: tuple[tuple[int, ...], ...]
    bounds: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        cols = tuple(tuple(sorted(c, reverse=True)) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if self.bounds is not None:
            object.__setattr__(self, "bounds", tuple(self.bounds))

    def column(self, candidate: int) -> tuple[int, ...]:
        return self.columns[candidate - 1]

    @property
    def sums(self) -> tuple[int, ...]:
        return tuple(sum(c) for c in self.columns)

    def problems(self) -> list[str]:
        """Every violated structural invariant, as readable messages."""
        out = []
        m, n, d = self.m, self.n, self.distinguished
        if len(self.columns) != m:
            return [f"expected {m} columns, got {len(self.columns)}"]
        if not 1 <= d <= m:
            return [f"distinguished candidate {d} not in 1..{m}"]
        for i, col in enumerate(self.columns, start=1):
            if len(col) != n:
                out.append(f"column {i} holds {len(col)} elements, expected {n}")
            bad = [v for v in col if not 0 <= v <= m - 1]
            if bad:
                out.append(f"column {i} has out-of-range values {bad}")
        if self.columns[d - 1] != (m - 1,) * n:
            out.append(f"column d={d} must hold exactly {n} copies of {m - 1}")
        counts = Counter(v for col in self.columns for v in col)
        for k in range(m):
            if counts.get(k, 0) != n:
                out.append(f"value {k} occurs {counts.get(k, 0)} times, expected {n}")
        if self.bounds is not None:
            for i, (s, g) in enumerate(zip(self.sums, self.bounds), start=1):
                if s > g:
                    out.append(f"column {i} sums to {s} > bound {g}")
        return out


@dataclass(frozen=True)
class VoteMatrix:
    """n rows of manipulator scores; row r, entry i is the score candidate i+1 gets."""

    m: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(r[i] for r in self.rows) for i in range(self.m))

    def ballots(self) -> list[tuple[int, ...]]:
        return [scores_to_ballot(r) for r in self.rows]


class OccurrenceGraph:
    """Bipartite multigraph: value k -- column j, one edge per occurrence.

    Parallel edges are stored as counts, ``count[k][j]``.
    """

    def __init__(self, m: int, count: list[list[int]]):
        self.m = m
        self.count = count

    @classmethod
    def from_columns(cls, m: int, columns: Sequence[Sequence[int]]) -> "OccurrenceGraph":
        count = [[0] * m for _ in range(m)]
        for j, col in enumerate(columns):
            for v in col:
                count[v][j] += 1
        return cls(m, count)

    def value_degrees(self) -> list[int]:
        return [sum(row) for row in self.count]

    def column_degrees(self) -> list[int]:
        return [sum(self.count[k][j] for k in range(self.m)) for j in range(self.m)]

    def remove(self, matching: dict[int, int]) -> None:
        for k, j in matching.items():
            if self.count[k][j] <= 0:
                raise MatchingError(f"no occurrence of value {k} left in column {j + 1}")
            self.count[k][j] -= 1


def perfect_matching(g: OccurrenceGraph) -> dict[int, int]:
    """Value -> column (0-based) perfect matching by augmenting paths."""
    m = g.m
    adj = [[j for j in range(m) if g.count[k][j] > 0] for k in range(m)]
    owner: list[Optional[int]] = [None] * m

    def augment(k: int, seen: list[bool]) -> bool:
        stack = [(k, iter(adj[k]))]
        path: list[tuple[int, int]] = []
        while stack:
            v, it = stack[-1]
            for j in it:
                if seen[j]:
                    continue
                seen[j] = True
                path.append((v, j))
                if owner[j] is None:
                    for pv, pj in path:
                        owner[pj] = pv
                    return True
                stack.append((owner[j], iter(adj[owner[j]])))
                break
            else:
                stack.pop()
                if path:
                    path.pop()
        return False

    for k in range(m):
        if not augment(k, [False] * m):
            raise MatchingError(f"value {k} cannot be matched; graph is not regular")
    return {owner[j]: j for j in range(m)}


def convert_to_votes(b: ColumnMatrix) -> VoteMatrix:
    issues = b.problems()
    if issues:
        raise ValidationError("invalid column matrix: " + "; ".join(issues))
    g = OccurrenceGraph.from_columns(b.m, b.columns)
    rows = []
    for _ in range(b.n):
        match = perfect_matching(g)
        row = [0] * b.m
        for k, j in match.items():
            row[j] = k
        g.remove(match)
        rows.append(tuple(row))
    return VoteMatrix(b.m, tuple(rows))


def validate_column_matrix(b: ColumnMatrix, profile: ScoreProfile, n: int) -> bool:
    if b.m != profile.m or b.n != n or b.distinguished != profile.distinguished:
        return False
    bounded = ColumnMatrix(b.m, b.n, b.distinguished, b.columns, gaps(profile, n).gaps)
    return not bounded.problems()
