import logging

import pytest

from bordamanip.election import Election, ScoreProfile, tally

EXAMPLE1_VOTES = (
    (1, 2, 3, 4, 5),
    (2, 3, 4, 1, 5),
    (3, 4, 1, 2, 5),
    (4, 1, 2, 3, 5),
)
SEPARATING_PROFILES = (
    (67, 60, 59, 58, 58, 52, 52, 42),
    (41, 34, 30, 27, 27, 26, 25, 14),
)


@pytest.fixture(autouse=True)
def _quiet_profile_warnings(caplog):
    # arbitrary score vectors trip the realizability warning constantly
    caplog.set_level(logging.ERROR, logger="bordamanip.election")


@pytest.fixture
def example1():
    return Election(5, EXAMPLE1_VOTES, 5)


@pytest.fixture
def example1_profile(example1):
    return tally(example1)


def prop1_profile(m: int) -> ScoreProfile:
    return ScoreProfile(m, tuple(m // 2 + i for i in range(1, m)) + (0,), m)


def thm2_profile(k: int) -> ScoreProfile:
    return ScoreProfile(4, (6 * k, 4 * k, 2 * k, 0), 4)
