#!/usr/bin/env python3
"""Show the two eight-candidate profiles on which LSLG beats LSLA.

For every candidate as target, prints the optimum and which greedy succeeds there.
"""

from bordamanip.election import ScoreProfile
from bordamanip.exact import minimum_manipulators
from bordamanip.greedy import LslgTie, TiePolicy, lsla, lslg

PROFILES = (
    (67, 60, 59, 58, 58, 52, 52, 42),
    (41, 34, 30, 27, 27, 26, 25, 14),
)


def flag(ok: bool) -> str:
    return "yes" if ok else "no"


def main() -> None:
    for scores in PROFILES:
        print(f"scores={scores}")
        print(f"{'d':>3} {'opt':>4} {'REV':>4}  LSLG(hi) LSLG(lo) LSLA(minfill) LSLA(index)")
        for d in range(1, len(scores) + 1):
            p = ScoreProfile(len(scores), scores, d)
            rep = minimum_manipulators(p)
            n = rep.n_optimal
            cells = [
                lslg(p, n).ok, lslg(p, n, LslgTie.LOWEST_INDEX).ok,
                lsla(p, n, TiePolicy.MIN_FILL).ok, lsla(p, n, TiePolicy.INDEX_ORDER).ok,
            ] if n else [True] * 4
            print(f"{d:>3} {n:>4} {rep.n_reverse:>4}  " + " ".join(f"{flag(c):>8}" for c in cells))
        print()


if __name__ == "__main__":
    main()
