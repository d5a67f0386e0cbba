"""Shared builders for profiles and synthetic populations."""

from __future__ import annotations

import math
import random

from tutormatch.model import Gender, GeoPoint, StudentProfile, TraitVector
from tutormatch.tasks import TaskState, TutoringTask, VOLUNTEERED

# Campus-scale reference point used throughout the tests.
CAMPUS = GeoPoint(-25.2637, -57.5759)

DECLARED_GENDERS = (Gender.FEMALE, Gender.MALE, Gender.NONBINARY)
ALL_GENDERS = DECLARED_GENDERS + (Gender.UNDISCLOSED,)


def offset_point(base: GeoPoint, north_m: float, east_m: float) -> GeoPoint:
    """Move a point by metric offsets (small-angle approximation)."""
    dlat = north_m / 111_194.9266
    dlon = east_m / (111_194.9266 * math.cos(math.radians(base.latitude_deg)))
    return GeoPoint(base.latitude_deg + dlat, base.longitude_deg + dlon)


def make_profile(pid: str, *, gender: Gender = Gender.FEMALE,
                 location: GeoPoint = CAMPUS,
                 traits: TraitVector | None = None,
                 competences: dict[str, float] | None = None) -> StudentProfile:
    return StudentProfile(
        id=pid,
        display_name=pid.capitalize(),
        gender=gender,
        location=location,
        traits=traits if traits is not None else TraitVector(0.5, 0.5, 0.5, 0.5, 0.5),
        competences=competences if competences is not None else {},
    )


def random_profile(rng: random.Random, pid: str, subjects=("calculus",),
                   max_radius_m: float = 2_000.0,
                   genders=ALL_GENDERS) -> StudentProfile:
    """One profile at a random bearing/distance from the campus point."""
    angle = rng.uniform(0.0, 2.0 * math.pi)
    radius = rng.uniform(0.0, max_radius_m)
    return StudentProfile(
        id=pid,
        display_name=f"Student {pid}",
        gender=rng.choice(genders),
        location=offset_point(CAMPUS, radius * math.sin(angle), radius * math.cos(angle)),
        traits=TraitVector(*(rng.random() for _ in range(5))),
        competences={s: rng.random() for s in subjects},
    )


def random_population(rng: random.Random, count: int, subjects=("calculus",),
                      max_radius_m: float = 2_000.0,
                      genders=ALL_GENDERS) -> list[StudentProfile]:
    return [random_profile(rng, f"u{i:03d}", subjects, max_radius_m, genders)
            for i in range(count)]


def assert_task_invariants(task: TutoringTask) -> None:
    recommended = {e.candidate_id for e in task.recommended}
    assert set(task.responses) <= recommended
    if task.selected_tutor_id is not None:
        assert task.state is TaskState.COMPLETED
        assert task.responses.get(task.selected_tutor_id) == VOLUNTEERED
    if task.state is TaskState.PENDING_SELECTION:
        assert any(v == VOLUNTEERED for v in task.responses.values())
