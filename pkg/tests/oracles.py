"""Slow reference implementations used only by the tests."""

from __future__ import annotations

import itertools

from bordamanip.election import ScoreProfile


def d_first_rows(m: int, d: int) -> list[tuple[int, ...]]:
    """Every score row of a ballot that ranks d first."""
    others = [i for i in range(m) if i != d - 1]
    rows = []
    for perm in itertools.permutations(range(m - 1)):
        row = [0] * m
        row[d - 1] = m - 1
        for cand, s in zip(others, perm):
            row[cand] = s
        rows.append(tuple(row))
    return rows


def brute_force_exists(profile: ScoreProfile, n: int) -> bool:
    """Try every multiset of n d-first ballots."""
    d = profile.distinguished
    rows = d_first_rows(profile.m, d)
    for combo in itertools.combinations_with_replacement(rows, n):
        totals = list(profile.scores)
        for row in combo:
            for i, s in enumerate(row):
                totals[i] += s
        if all(totals[d - 1] >= t for t in totals):
            return True
    return False


def brute_force_minimum(profile: ScoreProfile, limit: int) -> int | None:
    for n in range(limit + 1):
        if brute_force_exists(profile, n):
            return n
    return None


def lower_bound_scan(profile: ScoreProfile, limit: int = 10**6) -> int:
    """First n at which both cheap necessary conditions hold, by linear scan."""
    m, d = profile.m, profile.distinguished
    for n in range(limit):
        g = [profile.d_score + n * (m - 1) - s for s in profile.scores]
        comp = [g[i] for i in range(m) if i != d - 1]
        if min(comp, default=0) >= 0 and sum(comp) * 2 >= n * (m - 1) * (m - 2):
            return n
    raise AssertionError("scan limit reached")
