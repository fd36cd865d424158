"""Minimum-size coalitional manipulation of unweighted Borda elections."""

from .election import (
    Election, GapVector, ScoreProfile, ValidationError, gaps, tally,
    verify_manipulation, winners,
)
from .exact import (
    Budget, OptimalityReport, Proof, SearchStatus, exists_manipulation,
    lower_bound, minimum_manipulators,
)
from .gen import prop1_instance, thm2_instance, uniform_election, urn_election
from .greedy import LslgTie, Status, TiePolicy, choose_score, lsla, lslg, reverse
from .matrix import ColumnMatrix, VoteMatrix, convert_to_votes, validate_column_matrix

__version__ = "0.1.0"
