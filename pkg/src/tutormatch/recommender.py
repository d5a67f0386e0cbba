"""Ranked tutor recommendation with hard constraints and one diversification swap.

Reachability and competence act as gates: only candidates within the near
radius are tiered (strictly better / equal / weaker than the requester for
the requested subject), and the list fills tier by tier up to five entries.
Within the pool the order is tier, then preference-conditioned personality
score, then competence, then distance, then candidate id, so the result
never depends on pool order. When the resulting list is single-gender, one
far, strictly-better candidate of a different declared gender may replace
the last entry.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geo import NEAR_RADIUS_M, ProximityClass, classify_proximity, distance_meters
from .model import Gender, PersonalityPreference, StudentProfile
from .personality import preference_score, similarity

MAX_RECOMMENDATIONS = 5

TIER_BETTER = 1  # strictly higher competence, near
TIER_EQUAL = 2   # equal competence, near
TIER_WEAKER = 3  # lower competence, near


@dataclass(frozen=True)
class RecommendationQuery:
    requester: StudentProfile
    subject: str
    preference: PersonalityPreference
    candidate_pool: tuple[StudentProfile, ...]

    def __post_init__(self):
        if any(c.id == self.requester.id for c in self.candidate_pool):
            raise ValueError("candidate pool must not contain the requester")


@dataclass(frozen=True)
class ScoredCandidate:
    candidate_id: str
    tier: int
    competence: float
    distance_m: float
    personality_score: float
    diversified: bool = False


def assign_tier(requester_level: float, candidate_level: float,
                prox: ProximityClass) -> int | None:
    """Tier of a candidate, or None when out of reach.

    Far candidates never get a tier; they can only enter a list through the
    gender diversification swap.
    """
    if prox is ProximityClass.FAR:
        return None
    if candidate_level > requester_level:
        return TIER_BETTER
    if candidate_level == requester_level:
        return TIER_EQUAL
    return TIER_WEAKER


def _scored(query: RecommendationQuery, candidate: StudentProfile,
            tier: int, dist: float, diversified: bool = False) -> ScoredCandidate:
    sim = similarity(query.requester.traits, candidate.traits)
    return ScoredCandidate(
        candidate_id=candidate.id,
        tier=tier,
        competence=candidate.competence_level(query.subject),
        distance_m=dist,
        personality_score=preference_score(query.preference, sim),
        diversified=diversified,
    )


def _rank_key(entry: ScoredCandidate):
    return (entry.tier, -entry.personality_score, -entry.competence,
            entry.distance_m, entry.candidate_id)


def rank_candidates(query: RecommendationQuery) -> list[ScoredCandidate]:
    """Rank near candidates by the total order and keep the top five."""
    requester_level = query.requester.competence_level(query.subject)
    entries = []
    for candidate in query.candidate_pool:
        dist = distance_meters(query.requester.location, candidate.location)
        tier = assign_tier(requester_level, candidate.competence_level(query.subject),
                           classify_proximity(dist))
        if tier is None:
            continue
        entries.append(_scored(query, candidate, tier, dist))
    entries.sort(key=_rank_key)
    return entries[:MAX_RECOMMENDATIONS]


def apply_gender_diversification(prelim: list[ScoredCandidate],
                                 query: RecommendationQuery) -> list[ScoredCandidate]:
    """Swap the last entry for a far, strictly-better candidate of another gender.

    Triggers only when the list has at least two entries all sharing one
    declared gender. Undisclosed gender never participates, and at most one
    entry is ever swapped.
    """
    if len(prelim) < 2:
        return prelim
    by_id = {c.id: c for c in query.candidate_pool}
    genders = {by_id[entry.candidate_id].gender for entry in prelim}
    if len(genders) != 1:
        return prelim
    (shared,) = genders
    if shared is Gender.UNDISCLOSED:
        return prelim

    requester_level = query.requester.competence_level(query.subject)
    eligible = []
    for candidate in query.candidate_pool:
        if candidate.gender is shared or candidate.gender is Gender.UNDISCLOSED:
            continue
        if candidate.competence_level(query.subject) <= requester_level:
            continue
        dist = distance_meters(query.requester.location, candidate.location)
        if dist <= NEAR_RADIUS_M:
            continue
        eligible.append(_scored(query, candidate, TIER_BETTER, dist, diversified=True))
    if not eligible:
        return prelim
    best = min(eligible, key=lambda e: (-e.personality_score, -e.competence,
                                        e.distance_m, e.candidate_id))
    return prelim[:-1] + [best]


def recommend(query: RecommendationQuery) -> list[ScoredCandidate]:
    """Up to five ranked tutors for a request; deterministic for a fixed query."""
    return apply_gender_diversification(rank_candidates(query), query)
