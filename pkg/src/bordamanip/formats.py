"""JSON election and score-profile files.

Canonical form is ``json.dumps(..., sort_keys=True, separators=(",", ":"))``
so that load -> dump reproduces a canonical file byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .election import Election, ScoreProfile, ValidationError


class FormatError(ValidationError):
    pass


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def election_to_dict(e: Election) -> dict:
    return {"m": e.m, "distinguished": e.distinguished, "votes": [list(v) for v in e.votes]}


def profile_to_dict(p: ScoreProfile) -> dict:
    return {"m": p.m, "distinguished": p.distinguished, "scores": list(p.scores)}


def dumps(obj: Union[Election, ScoreProfile]) -> str:
    if isinstance(obj, Election):
        return canonical(election_to_dict(obj))
    return canonical(profile_to_dict(obj))


def _int(d: dict, key: str) -> int:
    v = d.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise FormatError(f"field {key!r} must be an integer, got {v!r}")
    return v


def from_dict(d) -> Union[Election, ScoreProfile]:
    if not isinstance(d, dict):
        raise FormatError("top-level JSON value must be an object")
    m = _int(d, "m")
    dist = _int(d, "distinguished")
    if "votes" in d and "scores" in d:
        raise FormatError("file has both 'votes' and 'scores'")
    if "votes" in d:
        votes = d["votes"]
        if not isinstance(votes, list) or not all(isinstance(v, list) for v in votes):
            raise FormatError("'votes' must be a list of lists")
        return Election(m, tuple(tuple(v) for v in votes), dist)
    if "scores" in d:
        scores = d["scores"]
        if not isinstance(scores, list) or not all(
            isinstance(s, int) and not isinstance(s, bool) for s in scores
        ):
            raise FormatError("'scores' must be a list of integers")
        return ScoreProfile(m, tuple(scores), dist)
    raise FormatError("file needs either 'votes' or 'scores'")


def loads(text: str) -> Union[Election, ScoreProfile]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return from_dict(data)


def load(path: Union[str, Path]) -> Union[Election, ScoreProfile]:
    return loads(Path(path).read_text())


def dump(obj: Union[Election, ScoreProfile], path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(obj) + "\n")
