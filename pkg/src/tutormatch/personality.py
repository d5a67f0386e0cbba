"""Trait questionnaire scoring and personality matching.

The short questionnaire has ten five-point items, two per trait in
`TRAIT_NAMES` order: the odd item of each pair is keyed directly, the even
item is reverse-keyed.
"""

from __future__ import annotations

from enum import Enum
from typing import Sequence

from .model import PersonalityPreference, TraitVector

QUESTIONNAIRE_ITEMS = 10
LIKERT_MIN = 1
LIKERT_MAX = 5


class CompatibilityLevel(str, Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


def score_questionnaire(answers: Sequence[int]) -> TraitVector:
    """Score a ten-item questionnaire into a trait vector.

    Trait k combines its direct item a and reverse item b as
    ((a + (6 - b)) / 2 - 1) / 4, mapping 1..5 answers onto [0, 1].

    Raises:
        ValueError: wrong answer count, or an answer outside {1..5}.
    """
    if len(answers) != QUESTIONNAIRE_ITEMS:
        raise ValueError(f"expected {QUESTIONNAIRE_ITEMS} answers, got {len(answers)}")
    for i, answer in enumerate(answers):
        if isinstance(answer, bool) or not isinstance(answer, int):
            raise ValueError(f"answer {i + 1} must be an integer, got {answer!r}")
        if not LIKERT_MIN <= answer <= LIKERT_MAX:
            raise ValueError(f"answer {i + 1} = {answer} out of [1, 5]")
    scores = []
    for k in range(5):
        direct = answers[2 * k]
        reverse = answers[2 * k + 1]
        scores.append((((direct + (6 - reverse)) / 2) - 1) / 4)
    return TraitVector(*scores)


def similarity(a: TraitVector, b: TraitVector) -> float:
    """Mean-absolute-difference similarity: 1 iff identical, 0 at full spread."""
    total = sum(abs(x - y) for x, y in zip(a.as_tuple(), b.as_tuple()))
    return 1.0 - total / 5.0


def preference_score(pref: PersonalityPreference, sim: float) -> float:
    """Condition a similarity on the requester's preference.

    similar keeps the similarity, different complements it, indifferent is a
    flat 0.5 so ranking falls through to competence.
    """
    if pref is PersonalityPreference.SIMILAR:
        return sim
    if pref is PersonalityPreference.DIFFERENT:
        return 1.0 - sim
    return 0.5


def compatibility_level(score: float) -> CompatibilityLevel:
    """Three-band display classification of a preference-conditioned score."""
    if score < 0.34:
        return CompatibilityLevel.LOW
    if score < 0.67:
        return CompatibilityLevel.MEDIUM
    return CompatibilityLevel.HIGH
