from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from conftest import SEPARATING_PROFILES, prop1_profile, thm2_profile
from bordamanip.election import ScoreProfile, final_scores, verify_manipulation
from bordamanip.exact import minimum_manipulators
from bordamanip.greedy import (
    LslgTie, ScorePool, TiePolicy, choose_score, lsla, lslg, reverse,
)
from bordamanip.matrix import convert_to_votes


@st.composite
def profiles(draw, max_m=6, max_score=40):
    m = draw(st.integers(2, max_m))
    scores = draw(st.lists(st.integers(0, max_score), min_size=m, max_size=m))
    return ScoreProfile(m, tuple(scores), draw(st.integers(1, m)))


def pool_with(values):
    pool = ScorePool(max(values) + 2, 0)
    for v in values:
        pool.counts[v] += 1
        pool.size += 1
    pool.top = len(pool.counts) - 1
    return pool


def test_pool_initial_contents():
    pool = ScorePool(5, 3)
    assert list(pool) == [3, 3, 3, 2, 2, 2, 1, 1, 1, 0, 0, 0]
    assert sum(pool) == 3 * 4 * 3 // 2


@pytest.mark.parametrize(
    "gap, values, expected",
    [(3, [2, 2, 1, 1, 0, 0], 2), (0, [2, 1, 0], 0), (-1, [2, 1], 2), (1, [2, 2], 2)],
)
def test_choose_score(gap, values, expected):
    assert choose_score(gap, pool_with(values)) == expected


def test_choose_score_empty_pool():
    with pytest.raises(ValueError):
        choose_score(3, ScorePool(4, 0))


def test_reverse_example1_trace(example1_profile):
    n, vm = reverse(example1_profile)
    assert n == 4
    trace = [list(example1_profile.scores)]
    for row in vm:
        trace.append([a + b for a, b in zip(trace[-1], row)])
    assert trace == [
        [10, 10, 10, 10, 0],
        [13, 12, 11, 10, 4],
        [13, 13, 13, 13, 8],
        [16, 15, 14, 13, 12],
        [16, 16, 16, 16, 16],
    ]
    assert vm.ballots()[0] == (5, 1, 2, 3, 4)


def test_reverse_prop1_m4():
    assert reverse(prop1_profile(4))[0] == 3


def test_reverse_when_d_already_wins():
    n, vm = reverse(ScoreProfile(3, (1, 0, 2), 3))
    assert n == 0 and vm.rows == ()


def test_lslg_prop1_m4():
    out = lslg(prop1_profile(4), 2)
    assert out.ok
    assert final_scores(prop1_profile(4), convert_to_votes(out.matrix))[:3] == [6, 6, 6]


def test_lslg_thm2_k36_fails():
    assert not lslg(thm2_profile(36), 72).ok


def test_lslg_single_competitor():
    out = lslg(ScoreProfile(2, (0, 1), 2), 1)
    assert out.ok
    assert out.matrix.columns == ((0,), (1,))


def test_lsla_prop1_m4_hand_trace():
    # hand simulation: gaps (3, 2, 1), pool {2,2,1,1,0,0}
    out = lsla(prop1_profile(4), 2, record_trace=True)
    assert out.ok
    assert [(t.column, t.score) for t in out.trace] == [
        (1, 2), (2, 2), (1, 1), (3, 1), (2, 0), (3, 0),
    ]
    assert out.matrix.sums[:3] == (3, 2, 1)


def test_lsla_thm2_k36_succeeds():
    assert lsla(thm2_profile(36), 72).ok


@pytest.mark.parametrize("scores", SEPARATING_PROFILES)
def test_separating_profiles_lslg_beats_lsla(scores):
    p = ScoreProfile(8, scores, 8)
    rep = minimum_manipulators(p)
    assert rep.n_optimal == 4
    assert lslg(p, 4).ok
    assert not lsla(p, 4, TiePolicy.MIN_FILL).ok


def test_lslg_tie_break_matters_on_separating_profile():
    p = ScoreProfile(8, SEPARATING_PROFILES[0], 8)
    assert lslg(p, 4, LslgTie.HIGHEST_INDEX).ok
    assert not lslg(p, 4, LslgTie.LOWEST_INDEX).ok


@pytest.mark.parametrize("k", [36, 72, 108])
def test_lslg_pathology(k):
    p = thm2_profile(k)
    assert reverse(p)[0] == 2 * k
    assert not lslg(p, 2 * k + k // 9 - 4).ok
    assert not lslg(p, 2 * k + k // 9 - 4, LslgTie.LOWEST_INDEX).ok


def _check_run(profile, n, out):
    m = profile.m
    placed = Counter()
    sums = Counter()
    for t in out.trace:
        placed[t.score] += 1
        sums[t.column] += t.score
        # never draws a score the pool no longer holds
        assert placed[t.score] <= n
        assert t.column != profile.distinguished
        assert t.column_sum == sums[t.column]
    assert len(out.trace) == n * (m - 1)
    assert placed == Counter({v: n for v in range(m - 1)})
    if out.ok:
        assert all(len(c) == n for c in out.matrix.columns)
        assert verify_manipulation(profile, convert_to_votes(out.matrix))


@settings(max_examples=150, deadline=None)
@given(profiles(), st.integers(1, 8))
def test_greedy_invariants(profile, n):
    runs = [
        lslg(profile, n, record_trace=True),
        lslg(profile, n, LslgTie.LOWEST_INDEX, record_trace=True),
        lsla(profile, n, TiePolicy.MIN_FILL, record_trace=True),
        lsla(profile, n, TiePolicy.INDEX_ORDER, record_trace=True),
    ]
    for out in runs:
        _check_run(profile, n, out)
    # determinism
    assert lslg(profile, n, record_trace=True).trace == runs[0].trace
    assert lsla(profile, n, record_trace=True).trace == runs[2].trace


@settings(max_examples=150, deadline=None)
@given(profiles())
def test_reverse_produces_a_manipulation(profile):
    n, vm = reverse(profile)
    assert verify_manipulation(profile, vm)
    if n:
        assert not verify_manipulation(profile, vm.rows[:-1])


@settings(max_examples=100, deadline=None)
@given(profiles(max_m=5, max_score=30))
def test_reverse_near_optimal(profile):
    rep = minimum_manipulators(profile)
    assert rep.n_optimal in (rep.n_reverse - 1, rep.n_reverse) or rep.n_reverse == 0
