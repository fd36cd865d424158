"""Election generators: uniform, Polya-Eggenberger urn, and two adversarial families.

Randomness comes from ``random.Random`` (MT19937) seeded with an integer.
Seeding, ``randrange`` and ``shuffle`` have produced the same streams since
Python 3.2, so a seed pins an election across machines and versions.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from typing import Optional, Union

from .election import Election, ScoreProfile, ValidationError, tally

MODELS = ("uniform", "urn", "prop1", "thm2")


@dataclass(frozen=True)
class GenConfig:
    model: str
    m: int = 4
    p: int = 4
    seed: int = 0
    a: Optional[int] = None  # urn replacement count; None means m!
    k: int = 36

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValidationError(f"unknown model {self.model!r}; pick one of {MODELS}")
        if self.a is not None and self.a < 0:
            raise ValidationError(f"urn parameter must be >= 0, got {self.a}")

    @property
    def urn_a(self) -> int:
        return math.factorial(self.m) if self.a is None else self.a


def _check_random_args(m: int, p: int):
    if m < 2:
        raise ValidationError(f"need m >= 2 candidates, got {m}")
    if p < 1:
        raise ValidationError(f"need p >= 1 voters, got {p}")


def _uniform_ranking(rng: random.Random, m: int) -> tuple[int, ...]:
    ranking = list(range(1, m + 1))
    rng.shuffle(ranking)
    return tuple(ranking)


def uniform_election(m: int, p: int, seed: int) -> Election:
    _check_random_args(m, p)
    rng = random.Random(seed)
    return Election(m, tuple(_uniform_ranking(rng, m) for _ in range(p)), m)


def urn_election(m: int, p: int, a: Optional[int], seed: int) -> Election:
    """Polya-Eggenberger urn: each drawn ranking goes back with ``a`` extra copies.

    The urn starts with one copy of each of the m! rankings. That base mass is
    never materialized: with probability m!/(m! + added) a fresh uniform
    ranking is drawn, otherwise an earlier draw proportional to its added copies.
    """
    _check_random_args(m, p)
    if a is None:
        a = math.factorial(m)
    if a < 0:
        raise ValidationError(f"urn parameter must be >= 0, got {a}")
    rng = random.Random(seed)
    base = math.factorial(m)
    drawn: list[tuple[int, ...]] = []
    weight: dict[tuple[int, ...], int] = {}
    added = 0
    votes = []
    for _ in range(p):
        r = rng.randrange(base + added) if added else 0
        if r < base:
            vote = _uniform_ranking(rng, m)
        else:
            r -= base
            for cand in drawn:
                r -= weight[cand]
                if r < 0:
                    vote = cand
                    break
        votes.append(vote)
        if a:
            if vote not in weight:
                weight[vote] = 0
                drawn.append(vote)
            weight[vote] += a
            added += a
    return Election(m, tuple(votes), m)


def prop1_instance(m: int) -> Election:
    """Two votes giving candidate i the score m/2 + i and candidate m zero."""
    if m <= 2 or m % 2:
        raise ValidationError(f"prop1 instances need even m > 2, got {m}")
    h = m // 2
    first = [0] * m
    second = [0] * m
    # the j-th entries of the two score sequences (1..m-1 and h+1..m-1,1..h)
    # land on candidate 2j for j < h and on candidate 2j - m + 1 otherwise
    for j in range(1, m):
        cand = 2 * j if j < h else 2 * j - m + 1
        first[cand - 1] = j
        second[cand - 1] = h + j if j < h else j - h + 1
    votes = []
    for row in (first, second):
        votes.append(tuple(sorted(range(1, m + 1), key=lambda c: -row[c - 1])))
    election = Election(m, tuple(votes), m)
    scores = tally(election).scores
    expected = tuple(h + i for i in range(1, m)) + (0,)
    assert scores == expected, (scores, expected)
    return election


def thm2_instance(k: int) -> ScoreProfile:
    """Profile (6k, 4k, 2k, 0) with d = 4, realized by 2k votes 1>2>3>4."""
    if k <= 0 or k % 36:
        raise ValidationError(f"thm2 instances need k > 0 divisible by 36, got {k}")
    return ScoreProfile(4, (6 * k, 4 * k, 2 * k, 0), 4, voter_count=2 * k)


def thm2_election(k: int) -> Election:
    thm2_instance(k)
    return Election(4, ((1, 2, 3, 4),) * (2 * k), 4)


def generate(cfg: GenConfig) -> Union[Election, ScoreProfile]:
    if cfg.model == "uniform":
        return uniform_election(cfg.m, cfg.p, cfg.seed)
    if cfg.model == "urn":
        return urn_election(cfg.m, cfg.p, cfg.urn_a, cfg.seed)
    if cfg.model == "prop1":
        return prop1_instance(cfg.m)
    return thm2_instance(cfg.k)


def cell_seed(root: int, model: str, m: int, p: int) -> int:
    """Base seed for one (model, m, p) cell; instance idx uses base + idx."""
    digest = hashlib.sha256(f"{root}:{model}:{m}:{p}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def instance_key(election: Election) -> str:
    """Hash of (m, sorted vote multiset); equal for duplicate electorates."""
    votes = sorted(election.votes)
    payload = f"{election.m}|" + ";".join(",".join(map(str, v)) for v in votes)
    return hashlib.sha256(payload.encode()).hexdigest()


def choose_target(election: Election, policy: str) -> Election:
    """Re-target an election: 'last' = candidate m, 'worst' = lowest Borda score."""
    if policy == "last":
        d = election.m
    elif policy == "worst":
        scores = tally(election).scores
        d = min(range(1, election.m + 1), key=lambda i: (scores[i - 1], i))
    else:
        raise ValidationError(f"unknown targeting policy {policy!r}")
    return Election(election.m, election.votes, d)
