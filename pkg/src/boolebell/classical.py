"""Generalized urn model and anti-correlation scenario checks.

An urn holds ball types carrying one pre-printed +-1 outcome per observable;
drawing reproduces every classical (hidden-variable) correlation point.
Weights are kept as exact rationals so containment in the correlation
polytope can be proved with zero tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, DomainError, InvalidPair
from .polytope import HRepresentation, MembershipReport, Scenario, membership
from .rng import random_uniform

MAX_URN_OBSERVABLES = 20

BallType = tuple[int, ...]

# first-facet threshold: -2cos(t) - cos(2t) = -1 at cos(t) = (sqrt(5)-1)/2
SZ_THRESHOLD_THETA = math.acos((math.sqrt(5.0) - 1.0) / 2.0)


def ball_types(n: int) -> list[BallType]:
    """All sign tuples of length n, lexicographic with + before -."""
    return [
        tuple(-1 if (i >> (n - 1 - k)) & 1 else 1 for k in range(n))
        for i in range(1 << n)
    ]


def _sign_string(ball: BallType) -> str:
    return "".join("+" if s > 0 else "-" for s in ball)


def _parse_ball(key, n: int | None) -> BallType:
    if isinstance(key, str):
        if any(ch not in "+-" for ch in key):
            raise ValueError(f"sign string {key!r} may only contain '+' and '-'")
        ball = tuple(1 if ch == "+" else -1 for ch in key)
    else:
        ball = tuple(int(s) for s in key)
        if any(s not in (1, -1) for s in ball):
            raise ValueError(f"ball type {key!r} must consist of +-1 entries")
    if n is not None and len(ball) != n:
        raise ValueError(f"ball type {key!r} does not have {n} colors")
    return ball


@dataclass(frozen=True)
class UrnDistribution:
    """Probability weights over the 2^n ball types, held as exact rationals.

    Exact inputs (int, Fraction, 'p/q' strings) must sum to 1 exactly;
    float inputs may be off by 1e-12 and are renormalized exactly.
    """

    observable_count: int
    weights: dict[BallType, Fraction]

    def __post_init__(self):
        n = self.observable_count
        if not 1 <= n <= MAX_URN_OBSERVABLES:
            raise ValueError(f"observable count must be in 1..{MAX_URN_OBSERVABLES}")
        if any(len(ball) != n for ball in self.weights):
            raise ValueError("ball types must have one sign per observable")
        if any(w < 0 for w in self.weights.values()):
            raise ValueError("weights must be nonnegative")
        total = sum(self.weights.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"weights sum to {total}, not 1")

    @classmethod
    def from_weights(cls, mapping, observable_count: int | None = None) -> "UrnDistribution":
        items = list(mapping.items())
        if not items:
            raise ValueError("urn needs at least one ball type")
        n = observable_count
        if n is None:
            first = items[0][0]
            n = len(first) if not isinstance(first, str) else len(first)
        exact = True
        parsed: dict[BallType, Fraction] = {}
        for key, value in items:
            ball = _parse_ball(key, n)
            if isinstance(value, float):
                exact = False
                weight = Fraction(value)
            else:
                weight = Fraction(value)
            if ball in parsed:
                raise ValueError(f"duplicate ball type {key!r}")
            parsed[ball] = weight
        total = sum(parsed.values(), Fraction(0))
        if exact:
            if total != 1:
                raise ValueError(f"exact weights must sum to 1, got {total}")
        else:
            if abs(float(total) - 1.0) > 1e-12:
                raise ValueError(f"float weights sum to {float(total)}, off by > 1e-12")
            parsed = {ball: w / total for ball, w in parsed.items()}
        return cls(n, parsed)

    @classmethod
    def from_dict(cls, doc) -> "UrnDistribution":
        return cls.from_weights(doc["weights"], doc.get("observables"))

    def to_dict(self) -> dict:
        ordered = sorted(
            self.weights.items(), key=lambda kv: tuple(0 if s > 0 else 1 for s in kv[0])
        )
        return {
            "observables": self.observable_count,
            "weights": {_sign_string(ball): str(w) for ball, w in ordered},
        }

    def weight(self, ball: BallType) -> Fraction:
        return self.weights.get(tuple(ball), Fraction(0))


def uniform_urn(n: int) -> UrnDistribution:
    w = Fraction(1, 1 << n)
    return UrnDistribution(n, {ball: w for ball in ball_types(n)})


def monomial_expectation(urn: UrnDistribution, monomial) -> Fraction:
    """Exact expectation of the product of the listed outcome signs."""
    idx = tuple(monomial)
    if any(i < 0 or i >= urn.observable_count for i in idx):
        raise InvalidPair(f"indices {idx} outside 0..{urn.observable_count - 1}")
    total = Fraction(0)
    for ball, w in urn.weights.items():
        total += w * math.prod(ball[i] for i in idx)
    return total


def exact_pairwise_expectation(urn: UrnDistribution, pair) -> Fraction:
    """E(i, j) = sum over ball types of weight * sign_i * sign_j."""
    i, j = pair
    if i == j:
        raise InvalidPair(f"pair ({i}, {j}) must name two distinct observables")
    return monomial_expectation(urn, (i, j))


def correlation_point(urn: UrnDistribution, scenario: Scenario) -> tuple[Fraction, ...]:
    """The urn's exact correlation vector, one entry per scenario monomial.

    Always lies inside the scenario's correlation polytope: the urn is a
    convex mixture of the deterministic assignments that generate its
    vertices.
    """
    if scenario.observable_count != urn.observable_count:
        raise DimensionMismatch(
            f"urn has {urn.observable_count} observables, scenario "
            f"{scenario.observable_count}"
        )
    return tuple(monomial_expectation(urn, mono) for mono in scenario.monomials)


def all_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@dataclass(frozen=True)
class UrnSample:
    """Empirical pairwise correlations from repeated draws, plus raw counts."""

    pairs: tuple[tuple[int, int], ...]
    empirical: tuple[float, ...]
    counts: dict[BallType, int]
    draws: int
    seed: int


def sample_urn(urn: UrnDistribution, draws: int, seed: int) -> UrnSample:
    """Inverse-CDF sampling over the fixed lexicographic ball-type order.

    Pairwise products are averaged from the integer counts, so the result
    is an exact function of (urn, draws, seed).
    """
    if draws < 1:
        raise ValueError("need at least one draw")
    n = urn.observable_count
    order = ball_types(n)
    cumulative = np.cumsum([float(urn.weight(ball)) for ball in order])
    cumulative[-1] = 1.0  # guard against float drift at the top end
    u = random_uniform(seed, draws)
    picks = np.searchsorted(cumulative, u, side="right")
    counts = np.bincount(picks, minlength=len(order))
    pairs = all_pairs(n)
    empirical = []
    for i, j in pairs:
        acc = sum(int(c) * ball[i] * ball[j] for ball, c in zip(order, counts) if c)
        empirical.append(acc / draws)
    return UrnSample(
        pairs=pairs,
        empirical=tuple(empirical),
        counts={ball: int(c) for ball, c in zip(order, counts) if c},
        draws=draws,
        seed=int(seed),
    )


@dataclass(frozen=True)
class ViolationReport:
    """Membership outcome of a correlation vector against a facet list."""

    membership: MembershipReport
    violated: bool
    worst_margin: Fraction
    worst_facet: object


def specker_check(correlations, h: HRepresentation) -> ViolationReport:
    """Evaluate a correlation vector against the polytope's facets.

    The all-anti-correlated point (-1, -1, -1) lands outside the three-
    observable polytope with margin -2 on the facet 1 + x + y + z >= 0:
    no global classical distribution produces it.
    """
    result = membership(h, correlations)
    return ViolationReport(
        membership=result,
        violated=result.status == "outside",
        worst_margin=result.worst_margin,
        worst_facet=result.worst_facet,
    )


@dataclass(frozen=True)
class SZProfile:
    theta: float
    correlations: tuple[float, float, float]
    sz_sum: float
    classical_violated: bool


def singlet_sz_profile(theta: float) -> SZProfile:
    """Singlet correlations at equidistant planar angles 0, t, 2t.

    The pair correlations are (-cos t, -cos 2t, -cos t); their sum crosses
    the classical bound -1 exactly where cos t = (sqrt(5) - 1)/2, i.e. at
    t ~ 0.904557.
    """
    if theta < 0:
        raise DomainError("theta must be nonnegative")
    c1 = -math.cos(theta)
    c2 = -math.cos(2.0 * theta)
    sz_sum = 2.0 * c1 + c2
    return SZProfile(
        theta=float(theta),
        correlations=(c1, c2, c1),
        sz_sum=sz_sum,
        classical_violated=sz_sum < -1.0,
    )
