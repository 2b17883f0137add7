"""The seven-point likeliness scale and its (max, min) algebra.

Grades run from 0 (impossible) to 6 (necessary).  Alternatives combine by
max, chains of conditions by min, so the scale forms an idempotent semiring:
piling up many weak alternatives never lifts the result above its strongest
member.  The complement of grade x is 6 - x.

The scale is anchored to probabilities through the decibel log-odds
transform dB(p) = 10*log10(p / (1-p)).  A base threshold p0 (the
impossible/conceivable cut, 1e-9 by default elsewhere) fixes B = dB(p0);
the six cut points between the seven grades then sit at

    B,  B/sqrt(10),  B/10,  -B/10,  -B/sqrt(10),  -B

so each step toward neutral shrinks the log-odds magnitude by one
half-order of magnitude.  With p0 = 1e-9 the interior cuts land near
0.0014 and 0.1118; with p0 = 1e-6 near 0.0125 and 0.2008.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable

__all__ = [
    "Likeliness",
    "BoundarySet",
    "dual",
    "combine_or",
    "combine_and",
    "total_likeliness",
    "boundaries",
    "likeliness_from_probability",
    "aggregation_capacity",
    "prob_to_db",
    "db_to_prob",
]


class Likeliness(IntEnum):
    """A likeliness grade.  Construction from any integer outside 0..6 fails."""

    IMPOSSIBLE = 0
    CONCEIVABLE = 1
    UNLIKELY = 2
    NEUTRAL = 3
    LIKELY = 4
    TYPICAL = 5
    NECESSARY = 6

    @property
    def canonical_name(self) -> str:
        """Lowercase display name, e.g. ``Likeliness(3).canonical_name == 'neutral'``."""
        return self.name.lower()

    def __str__(self) -> str:
        return str(int(self))


GRADES: tuple[Likeliness, ...] = tuple(Likeliness)


def dual(x: Likeliness) -> Likeliness:
    """Complement grade: impossible<->necessary, unlikely<->likely, etc."""
    return Likeliness(6 - int(x))


def combine_or(xs: Iterable[Likeliness]) -> Likeliness:
    """Join alternatives: the max grade, 0 for no alternatives at all.

    This is deliberately non-additive: adding more low-grade alternatives
    never raises the result above the strongest one.
    """
    return Likeliness(max((int(x) for x in xs), default=0))


def combine_and(xs: Iterable[Likeliness]) -> Likeliness:
    """Chain conditions: the min grade.  Rejects an empty sequence.

    An empty chain would have to count as necessary (grade 6); requiring an
    explicit argument avoids asserting necessity by accident.
    """
    try:
        return Likeliness(min(int(x) for x in xs))
    except ValueError:
        raise ValueError("combine_and requires at least one grade") from None


def total_likeliness(
    causes: Iterable[tuple[Likeliness, Likeliness]],
) -> Likeliness:
    """Grade of an effect from (cause grade, implication grade) pairs.

    Each pair contributes min(cause, implication); the contributions join by
    max.  Empty input yields 0.
    """
    return Likeliness(
        max((min(int(b), int(impl)) for b, impl in causes), default=0)
    )


# ---------------------------------------------------------------------------
# Probability anchoring
# ---------------------------------------------------------------------------

def prob_to_db(p: float) -> float:
    """Log-odds of p in decibels: 10*log10(p / (1-p)).  Requires 0 < p < 1."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"probability must lie strictly in (0, 1), got {p}")
    return 10.0 * math.log10(p / (1.0 - p))


def db_to_prob(db: float) -> float:
    """Inverse of prob_to_db."""
    return 1.0 / (1.0 + 10.0 ** (-db / 10.0))


@dataclass(frozen=True)
class BoundarySet:
    """The six probability cut points separating the seven grades.

    cuts[k-1] is the lower endpoint of grade k, so grade 0 occupies
    [0, cuts[0]) and grade 6 occupies [cuts[5], 1].  The set is symmetric:
    cuts[k-1] = 1 - cuts[6-k].

    base_odds_db is the log-odds (dB) of the base threshold; it is negative
    because the base probability is below one half.
    """

    base_odds_db: float
    cuts: tuple[float, float, float, float, float, float]

    def __post_init__(self) -> None:
        if len(self.cuts) != 6:
            raise ValueError("exactly six cuts required")
        for lo, hi in zip(self.cuts, self.cuts[1:]):
            if not lo < hi:
                raise ValueError(f"cuts must strictly increase, got {self.cuts}")
        if not (0.0 < self.cuts[0] and self.cuts[5] < 1.0):
            raise ValueError("cuts must lie strictly inside (0, 1)")
        for k in range(6):
            if abs(self.cuts[k] - (1.0 - self.cuts[5 - k])) > 1e-12:
                raise ValueError("cuts are not symmetric about one half")


def boundaries(base_probability: float) -> BoundarySet:
    """Cut points generated from a base threshold in (0, 0.5).

    The base probability is the impossible/conceivable cut; successive cuts
    divide its log-odds magnitude by sqrt(10), and the upper three mirror
    the lower three around one half.
    """
    if not 0.0 < base_probability < 0.5:
        raise ValueError(
            f"base probability must lie strictly in (0, 0.5), got {base_probability}"
        )
    b = prob_to_db(base_probability)
    lower = (
        base_probability,
        db_to_prob(b / math.sqrt(10.0)),
        db_to_prob(b / 10.0),
    )
    cuts = lower + tuple(1.0 - c for c in reversed(lower))
    return BoundarySet(base_odds_db=b, cuts=cuts)


def likeliness_from_probability(p: float, bounds: BoundarySet) -> Likeliness:
    """Grade of the interval containing p.

    Intervals are closed below and open above, so a probability exactly on a
    cut belongs to the higher grade.  The cuts are a convention, not a claim
    of crisp human judgment; this is the deterministic reference mapping.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return Likeliness(bisect_right(bounds.cuts, p))


def aggregation_capacity(
    bounds: BoundarySet,
    from_grade: Likeliness | int,
    independent: bool = False,
) -> int:
    """How many grade-k events it takes to jointly reach grade k+1.

    Measured between the lower cuts of the two grades.  The default mode
    adds probabilities (smallest n with n * c_k >= c_{k+1}), which is the
    reading that yields the familiar "under 80 unlikely make a neutral,
    under 8 neutral make a likely" counts at base 1e-9.  With
    independent=True the union of independent events is used instead:
    smallest n with 1 - (1 - c_k)^n >= c_{k+1}.
    """
    k = int(from_grade)
    if k not in (1, 2, 3):
        raise ValueError(f"from_grade must be 1, 2 or 3, got {from_grade}")
    low, high = bounds.cuts[k - 1], bounds.cuts[k]
    if independent:
        def union(n: int) -> float:
            return -math.expm1(n * math.log1p(-low))  # 1 - (1-low)^n

        n = max(1, math.ceil(math.log1p(-high) / math.log1p(-low)))
        while n > 1 and union(n - 1) >= high:
            n -= 1
        while union(n) < high:
            n += 1
        return n
    n = max(1, math.ceil(high / low))
    while n > 1 and (n - 1) * low >= high:
        n -= 1
    while n * low < high:
        n += 1
    return n
