"""Domain model shared by every other module.

All values are immutable; profile problems are reported as a list of
violation strings by `validate_profile` (bad data is data, not a fault),
while construction-level misuse raises `ValidationError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Gender(str, Enum):
    FEMALE = "female"
    MALE = "male"
    NONBINARY = "nonbinary"
    UNDISCLOSED = "undisclosed"


class PersonalityPreference(str, Enum):
    """Requested tutor personality relative to the requester's own."""

    SIMILAR = "similar"
    DIFFERENT = "different"
    INDIFFERENT = "indifferent"


# Canonical trait order; questionnaire items and serialization follow it.
TRAIT_NAMES = (
    "extraversion",
    "agreeableness",
    "conscientiousness",
    "emotional_stability",
    "openness",
)


class ValidationError(Exception):
    """Raised when an operation receives data that fails its invariants."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class GeoPoint:
    latitude_deg: float
    longitude_deg: float


@dataclass(frozen=True)
class TraitVector:
    """Five personality trait scores, each normalized to [0, 1].

    emotional_stability is oriented so that higher means more stable.
    """

    extraversion: float
    agreeableness: float
    conscientiousness: float
    emotional_stability: float
    openness: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (
            self.extraversion,
            self.agreeableness,
            self.conscientiousness,
            self.emotional_stability,
            self.openness,
        )


NEUTRAL_TRAITS = TraitVector(0.5, 0.5, 0.5, 0.5, 0.5)


@dataclass(frozen=True)
class StudentProfile:
    id: str
    display_name: str
    gender: Gender
    location: GeoPoint
    traits: TraitVector
    competences: dict[str, float] = field(default_factory=dict)

    def competence_level(self, subject: str) -> float:
        """Competence for a subject; unlisted subjects count as 0."""
        return self.competences.get(subject, 0.0)


def validate_profile(profile: StudentProfile) -> list[str]:
    """Check every profile invariant; empty result means the profile is ok."""
    violations: list[str] = []
    if not profile.id:
        violations.append("id must be non-empty")
    lat = profile.location.latitude_deg
    lon = profile.location.longitude_deg
    if not -90.0 <= lat <= 90.0:
        violations.append(f"latitude {lat} out of range [-90, 90]")
    if not -180.0 <= lon <= 180.0:
        violations.append(f"longitude {lon} out of range [-180, 180]")
    for name, value in zip(TRAIT_NAMES, profile.traits.as_tuple()):
        if not 0.0 <= value <= 1.0:
            violations.append(f"trait {name} = {value} out of [0, 1]")
    for subject, level in profile.competences.items():
        if not subject:
            violations.append("competence subject id must be non-empty")
        if not 0.0 <= level <= 1.0:
            violations.append(f"competence level for {subject!r} = {level} out of [0, 1]")
    return violations
