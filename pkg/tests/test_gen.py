import itertools
import math
from collections import Counter

import pytest

from bordamanip.election import ValidationError, tally
from bordamanip.gen import (
    GenConfig, choose_target, generate, instance_key, prop1_instance, thm2_election,
    thm2_instance, uniform_election, urn_election,
)
from bordamanip.greedy import lslg, reverse


def test_uniform_is_deterministic():
    assert uniform_election(4, 4, 1234) == uniform_election(4, 4, 1234)
    assert uniform_election(4, 4, 1234) != uniform_election(4, 4, 1235)


def test_uniform_frequencies():
    e = uniform_election(3, 6000, 99)
    freq = Counter(e.votes)
    sigma = math.sqrt(6000 * (1 / 6) * (5 / 6))
    assert set(freq) == set(itertools.permutations((1, 2, 3)))
    for count in freq.values():
        assert abs(count - 1000) <= 5 * sigma


def test_uniform_two_candidates():
    e = uniform_election(2, 400, 3)
    assert set(e.votes) == {(1, 2), (2, 1)}
    assert e.distinguished == 2


def test_urn_a_zero_behaves_uniformly():
    e = urn_election(3, 6000, 0, 5)
    sigma = math.sqrt(6000 * (1 / 6) * (5 / 6))
    assert all(abs(c - 1000) <= 5 * sigma for c in Counter(e.votes).values())


def test_urn_repeat_rate():
    same = sum(
        (lambda e: e.votes[0] == e.votes[1])(urn_election(8, 2, None, s)) for s in range(10000)
    )
    assert abs(same / 10000 - 0.5) <= 0.02


def test_urn_is_deterministic():
    assert urn_election(5, 30, None, 8) == urn_election(5, 30, None, 8)


def test_urn_produces_unanimous_electorates():
    unanimous = sum(len(set(urn_election(4, 4, None, s).votes)) == 1 for s in range(400))
    assert unanimous > 0


@pytest.mark.parametrize(
    "m, expected",
    [(4, (3, 4, 5, 0)), (6, (4, 5, 6, 7, 8, 0))],
)
def test_prop1_tally(m, expected):
    e = prop1_instance(m)
    assert len(e.votes) == 2
    assert tally(e).scores == expected
    assert e.distinguished == m


def test_prop1_m8_conservation():
    assert sum(tally(prop1_instance(8)).scores[:7]) == 2 * (8 * 7 // 2)


@pytest.mark.parametrize("m", [3, 2, 7, 0])
def test_prop1_rejects_bad_m(m):
    with pytest.raises(ValidationError):
        prop1_instance(m)


def test_thm2_profiles():
    assert thm2_instance(36).scores == (216, 144, 72, 0)
    assert thm2_instance(72).scores == (432, 288, 144, 0)
    assert tally(thm2_election(36)).scores == thm2_instance(36).scores


@pytest.mark.parametrize("k", [0, 35, 40, -36])
def test_thm2_rejects_bad_k(k):
    with pytest.raises(ValidationError):
        thm2_instance(k)


def test_adversarial_families_reproduce_known_outcomes():
    for m in (4, 6, 8):
        p = tally(prop1_instance(m))
        assert reverse(p)[0] == 3 and lslg(p, 2).ok
    assert not lslg(thm2_instance(36), 72).ok


def test_config_validation():
    with pytest.raises(ValidationError):
        GenConfig("mallows")
    with pytest.raises(ValidationError):
        GenConfig("urn", a=-1)
    assert GenConfig("urn", m=4).urn_a == 24


def test_generate_dispatch():
    assert generate(GenConfig("uniform", m=3, p=2, seed=1)) == uniform_election(3, 2, 1)
    assert generate(GenConfig("thm2", k=36)) == thm2_instance(36)


def test_instance_key_ignores_vote_order():
    e = uniform_election(4, 5, 2)
    from bordamanip.election import Election

    shuffled = Election(e.m, tuple(reversed(e.votes)), e.distinguished)
    assert instance_key(e) == instance_key(shuffled)


def test_targeting():
    e = uniform_election(5, 9, 3)
    assert choose_target(e, "last").distinguished == 5
    worst = choose_target(e, "worst")
    assert tally(worst).d_score == min(tally(e).scores)
