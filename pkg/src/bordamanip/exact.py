"""Lower bounds, an exact feasibility search, and the optimality pipeline.

The search never builds ballots. It decides how many copies of each score
every competing candidate receives (a count table). Any table with the right
row/column totals and sums within the gaps converts to ballots through the
matching peel in ``matrix``, so rows need no all-different constraints.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from typing import Optional

from .election import ScoreProfile, ValidationError, gaps
from .greedy import TiePolicy, lsla, lslg, reverse
from .matrix import ColumnMatrix

DEFAULT_MAX_NODES = 10**7
DEFAULT_MAX_MS = 60_000
_MEMO_LIMIT = 2_000_000


class Proof(str, enum.Enum):
    GREEDY_WITNESS = "GreedyWitness"
    OBSERVATION1 = "Observation1"
    NEGATIVE_GAP = "NegativeGap"
    EXACT_UNSAT = "ExactUnsat"
    EXACT_SAT = "ExactSat"
    TIMEOUT = "Timeout"


class SearchStatus(str, enum.Enum):
    SAT = "Sat"
    UNSAT = "Unsat"
    TIMEOUT = "Timeout"


@dataclass(frozen=True)
class Budget:
    """Per-call search limits; ``None`` disables a limit."""

    max_nodes: Optional[int] = DEFAULT_MAX_NODES
    max_ms: Optional[int] = DEFAULT_MAX_MS

    def __post_init__(self):
        for name in ("max_nodes", "max_ms"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValidationError(f"budget {name} must be positive, got {v}")


@dataclass(frozen=True)
class FeasibilityResult:
    status: SearchStatus
    witness: Optional[ColumnMatrix]
    nodes: int
    elapsed: float


@dataclass(frozen=True)
class OptimalityReport:
    n_reverse: int
    n_optimal: Optional[int]
    proof: Proof
    rev_opt: Optional[bool]
    lslg_opt: Optional[bool]
    lsla_minfill_opt: Optional[bool]
    lsla_index_opt: Optional[bool]
    nodes: int
    elapsed_ms: float
    # LSLA (either policy) failed at both n_reverse and n_reverse - 1
    dominance_violation: bool = False

    @property
    def lsla_opt(self) -> Optional[bool]:
        if self.lsla_minfill_opt is None:
            return None
        return self.lsla_minfill_opt or self.lsla_index_opt

    @property
    def known(self) -> bool:
        return self.n_optimal is not None


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def infeasibility_reason(profile: ScoreProfile, n: int) -> Optional[Proof]:
    """Which cheap necessary condition rules out an n-manipulation, if any."""
    g = gaps(profile, n)
    comp = profile.competitors
    if any(g[i] < 0 for i in comp):
        return Proof.NEGATIVE_GAP
    m = profile.m
    # sum of competing gaps vs. n * (0 + 1 + ... + m-2); doubled to stay integral
    if 2 * sum(g[i] for i in comp) < n * (m - 1) * (m - 2):
        return Proof.OBSERVATION1
    return None


def lower_bound(profile: ScoreProfile) -> int:
    m, sd = profile.m, profile.d_score
    if m < 2:
        return 0
    lb = 0
    for i in profile.competitors:
        lb = max(lb, _ceil_div(profile.score(i) - sd, m - 1))
    others = sum(profile.score(i) for i in profile.competitors)
    # (m-1)*sd - others + n*(m-1)^2 >= n*(m-1)*(m-2)/2  <=>  n*m*(m-1)/2 >= others - (m-1)*sd
    lb = max(lb, _ceil_div(2 * (others - (m - 1) * sd), m * (m - 1)))
    return max(lb, 0)


def _to_lex(counts: list[int]) -> tuple:
    return tuple(reversed(counts))


class _Timeout(Exception):
    pass


class _Search:
    """Depth-first search over per-column score counts.

    Columns are processed by ascending gap. Each column's counts are chosen
    for scores from high to low, larger counts first, so columns fill tightly.
    """

    def __init__(self, caps: list[int], n: int, m: int, budget: Budget):
        self.caps = caps
        self.n = n
        self.v_max = m - 2
        self.ncols = len(caps)
        self.budget = budget
        self.nodes = 0
        self.deadline = (
            None if budget.max_ms is None else time.monotonic() + budget.max_ms / 1000
        )
        self.failed: set = set()
        self.solution: list[list[int]] = []
        # equal-gap neighbours are interchangeable; only lexicographically
        # non-increasing count vectors are explored along such runs
        self.same_as_prev = [p > 0 and caps[p] == caps[p - 1] for p in range(self.ncols)]
        self.suffix_caps = [0] * (self.ncols + 1)
        for p in range(self.ncols - 1, -1, -1):
            self.suffix_caps[p] = self.suffix_caps[p + 1] + caps[p]

    def tick(self):
        self.nodes += 1
        if self.budget.max_nodes is not None and self.nodes > self.budget.max_nodes:
            raise _Timeout
        if self.deadline is not None and self.nodes & 1023 == 0:
            if time.monotonic() > self.deadline:
                raise _Timeout

    def bound_ok(self, p: int, rem: list[int]) -> bool:
        """The t tightest remaining columns must hold the t*n smallest items."""
        n = self.n
        need = 0  # sum of the smallest t*n remaining items
        cap = 0
        v = 0
        left_in_v = rem[0] if rem else 0
        for q in range(p, self.ncols):
            cap += self.caps[q]
            take = n
            while take:
                while left_in_v == 0:
                    v += 1
                    left_in_v = rem[v]
                k = min(take, left_in_v)
                need += k * v
                take -= k
                left_in_v -= k
            if need > cap:
                return False
        return True

    def run(self) -> Optional[list[list[int]]]:
        rem = [self.n] * (self.v_max + 1)
        if self.solve(0, rem, None):
            return self.solution
        return None

    def solve(self, p: int, rem: list[int], prev: Optional[tuple]) -> bool:
        if p == self.ncols:
            return True
        lex = prev if self.same_as_prev[p] else None
        key = (p, tuple(rem), lex)
        if key in self.failed:
            return False
        self.tick()
        if not self.bound_ok(p, rem):
            self._remember(key)
            return False
        total_left = sum(v * c for v, c in enumerate(rem))
        slack = self.suffix_caps[p] - total_left
        for counts in self.column_options(p, rem, slack, lex):
            for v, c in enumerate(counts):
                rem[v] -= c
            self.solution.append(counts)
            if self.solve(p + 1, rem, _to_lex(counts)):
                return True
            self.solution.pop()
            for v, c in enumerate(counts):
                rem[v] += c
        self._remember(key)
        return False

    def _remember(self, key):
        if len(self.failed) < _MEMO_LIMIT:
            self.failed.add(key)

    def column_options(self, p: int, rem: list[int], slack: int, lex: Optional[tuple]):
        """Yield count vectors (index = score) for column p.

        The column sum must lie in [cap - slack, cap]: any more waste could not
        be absorbed by the other columns.
        """
        n, cap, top = self.n, self.caps[p], self.v_max
        lo = cap - slack
        counts = [0] * (top + 1)
        # below_cnt[v]: items with score < v still in the pool
        below_cnt = [0] * (top + 2)
        for v in range(top + 1):
            below_cnt[v + 1] = below_cnt[v] + rem[v]

        def min_fill(v: int, r: int) -> int:
            # sum of the r smallest pooled scores below v
            s = 0
            u = 0
            while r > 0:
                k = min(r, rem[u])
                s += k * u
                r -= k
                u += 1
            return s

        def max_fill(v: int, r: int) -> int:
            # sum of the r largest pooled scores below v
            s = 0
            u = v - 1
            while r > 0:
                k = min(r, rem[u])
                s += k * u
                r -= k
                u -= 1
            return s

        def rec(v: int, slots: int, part: int, tight: bool):
            if v < 0:
                if slots == 0 and part >= lo:
                    yield counts
                return
            if v == 0:
                c = slots
                if c > rem[0]:
                    return
                if tight and c > lex[top]:
                    return
                if part < lo:
                    return
                counts[0] = c
                self.tick()
                yield counts
                counts[0] = 0
                return
            avail_below = below_cnt[v]
            c_hi = min(rem[v], slots, (cap - part) // v)
            if tight:
                c_hi = min(c_hi, lex[top - v])
            c_lo = max(0, slots - avail_below)
            for c in range(c_hi, c_lo - 1, -1):
                r = slots - c
                base = part + c * v
                if base + min_fill(v, r) > cap:
                    continue
                if base + max_fill(v, r) < lo:
                    # smaller c only lowers the reachable maximum
                    break
                counts[v] = c
                self.tick()
                yield from rec(v - 1, r, base, tight and c == lex[top - v])
                counts[v] = 0

        for out in rec(top, n, 0, lex is not None):
            yield list(out)


def exists_manipulation(
    profile: ScoreProfile, n: int, budget: Budget = Budget()
) -> FeasibilityResult:
    if n < 1:
        raise ValidationError(f"exists_manipulation needs n >= 1, got {n}")
    start = time.monotonic()
    m, d = profile.m, profile.distinguished
    g = gaps(profile, n)
    if infeasibility_reason(profile, n) is not None:
        return FeasibilityResult(SearchStatus.UNSAT, None, 0, time.monotonic() - start)
    order = sorted(profile.competitors, key=lambda i: (g[i], i))
    caps = [g[i] for i in order]
    search = _Search(caps, n, m, budget)
    try:
        sol = search.run()
    except _Timeout:
        return FeasibilityResult(
            SearchStatus.TIMEOUT, None, search.nodes, time.monotonic() - start
        )
    elapsed = time.monotonic() - start
    if sol is None:
        return FeasibilityResult(SearchStatus.UNSAT, None, search.nodes, elapsed)
    columns: list[tuple[int, ...]] = [()] * m
    columns[d - 1] = (m - 1,) * n
    for cand, counts in zip(order, sol):
        columns[cand - 1] = tuple(v for v in range(len(counts) - 1, -1, -1) for _ in range(counts[v]))
    witness = ColumnMatrix(m, n, d, tuple(columns), g.gaps)
    return FeasibilityResult(SearchStatus.SAT, witness, search.nodes, elapsed)


def minimum_manipulators(
    profile: ScoreProfile, budget: Budget = Budget()
) -> OptimalityReport:
    start = time.monotonic()
    n_rev, _ = reverse(profile)
    if n_rev == 0:
        return OptimalityReport(
            0, 0, Proof.GREEDY_WITNESS, True, True, True, True, 0,
            (time.monotonic() - start) * 1000,
        )

    runs: dict[tuple[str, int], bool] = {}

    def run(alg: str, n: int) -> bool:
        if n < 1:
            return False
        if (alg, n) not in runs:
            if alg == "lslg":
                ok = lslg(profile, n).ok
            else:
                ok = lsla(profile, n, TiePolicy(alg)).ok
            runs[alg, n] = ok
        return runs[alg, n]

    algs = ("lslg", TiePolicy.MIN_FILL.value, TiePolicy.INDEX_ORDER.value)
    below = n_rev - 1
    nodes = 0
    if any(run(a, below) for a in algs):
        n_opt: Optional[int] = below
        proof = Proof.GREEDY_WITNESS
    else:
        reason = infeasibility_reason(profile, below)
        if reason is not None:
            n_opt, proof = n_rev, reason
        else:
            res = exists_manipulation(profile, below, budget)
            nodes = res.nodes
            if res.status is SearchStatus.SAT:
                n_opt, proof = below, Proof.EXACT_SAT
            elif res.status is SearchStatus.UNSAT:
                n_opt, proof = n_rev, Proof.EXACT_UNSAT
            else:
                n_opt, proof = None, Proof.TIMEOUT

    lsla_any = lambda n: run(algs[1], n) or run(algs[2], n)  # noqa: E731
    violation = not (lsla_any(n_rev) or lsla_any(below))
    if n_opt is None:
        flags = (None, None, None, None)
    else:
        flags = (
            n_rev == n_opt,
            run("lslg", n_opt),
            run(algs[1], n_opt),
            run(algs[2], n_opt),
        )
    return OptimalityReport(
        n_rev, n_opt, proof, *flags, nodes,
        (time.monotonic() - start) * 1000,
        dominance_violation=violation,
    )
