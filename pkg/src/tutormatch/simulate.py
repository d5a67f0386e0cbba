"""Synthetic populations and scripted recommendation scenarios.

A scenario file is a JSON document: a seed, a population (either an
explicit profile list or a generator spec), and a list of requests. Running
it pushes every request through the recommender and aggregates
match-quality metrics; a fixed scenario always produces a byte-identical
report.
"""

from __future__ import annotations

import json
import random
import statistics
from dataclasses import dataclass, field
from pathlib import Path

from .geo import NEAR_RADIUS_M, distance_meters
from .model import (
    Gender,
    GeoPoint,
    PersonalityPreference,
    StudentProfile,
    TraitVector,
    ValidationError,
    validate_profile,
)
from .recommender import RecommendationQuery, recommend
from .store import decode_profile, encode_profile

DEFAULT_SUBJECTS = ("calculus",)
DEFAULT_GENDER_MIX = {
    Gender.FEMALE: 0.45,
    Gender.MALE: 0.45,
    Gender.NONBINARY: 0.05,
    Gender.UNDISCLOSED: 0.05,
}
# Campus-scale box, roughly 2.2 km x 2 km.
DEFAULT_BBOX = (-25.274, -25.254, -57.586, -57.566)


@dataclass(frozen=True)
class PopulationSpec:
    count: int
    subjects: tuple[str, ...] = DEFAULT_SUBJECTS
    gender_mix: dict[Gender, float] = field(
        default_factory=lambda: dict(DEFAULT_GENDER_MIX))
    bbox: tuple[float, float, float, float] = DEFAULT_BBOX  # latMin, latMax, lonMin, lonMax


@dataclass(frozen=True)
class ScenarioRequest:
    requester_id: str
    subject: str
    preference: PersonalityPreference


@dataclass(frozen=True)
class Scenario:
    seed: int
    population: list[StudentProfile] | PopulationSpec
    requests: list[ScenarioRequest]


def generate_population(spec: PopulationSpec, seed: int) -> list[StudentProfile]:
    """Deterministic synthetic population: uniform traits, competences, locations."""
    if spec.count < 0:
        raise ValidationError(["population count must be >= 0"])
    if not spec.subjects:
        raise ValidationError(["population spec needs at least one subject"])
    weights = [max(0.0, spec.gender_mix.get(g, 0.0)) for g in Gender]
    if sum(weights) <= 0.0:
        raise ValidationError(["gender mix proportions must not all be zero"])
    lat_min, lat_max, lon_min, lon_max = spec.bbox
    rng = random.Random(seed)
    profiles = []
    for i in range(spec.count):
        profiles.append(StudentProfile(
            id=f"s{i + 1:03d}",
            display_name=f"Student {i + 1:03d}",
            gender=rng.choices(list(Gender), weights=weights)[0],
            location=GeoPoint(rng.uniform(lat_min, lat_max), rng.uniform(lon_min, lon_max)),
            traits=TraitVector(*(rng.random() for _ in range(5))),
            competences={s: rng.random() for s in spec.subjects},
        ))
    return profiles


# --- scenario files ----------------------------------------------------------

def parse_scenario(doc: dict) -> Scenario:
    if "seed" not in doc or not isinstance(doc["seed"], int):
        raise ValidationError(["scenario requires an integer seed"])
    population_doc = doc.get("population")
    if isinstance(population_doc, list):
        population = [decode_profile(p) for p in population_doc]
    elif isinstance(population_doc, dict):
        population = _parse_spec(population_doc)
    else:
        raise ValidationError(["population must be a profile list or a generator spec"])
    requests = []
    for i, req in enumerate(doc.get("requests", [])):
        try:
            requests.append(ScenarioRequest(
                requester_id=req["requesterId"],
                subject=req["subject"],
                preference=PersonalityPreference(req["preference"]),
            ))
        except (KeyError, ValueError) as exc:
            raise ValidationError([f"request {i}: {exc}"]) from exc
    return Scenario(seed=doc["seed"], population=population, requests=requests)


def _parse_spec(doc: dict) -> PopulationSpec:
    if "count" not in doc:
        raise ValidationError(["population generator spec requires count"])
    mix = dict(DEFAULT_GENDER_MIX)
    if "genderMix" in doc:
        try:
            mix = {Gender(k): float(v) for k, v in doc["genderMix"].items()}
        except ValueError as exc:
            raise ValidationError([f"genderMix: {exc}"]) from exc
    bbox = DEFAULT_BBOX
    if "bbox" in doc:
        b = doc["bbox"]
        bbox = (b["latMin"], b["latMax"], b["lonMin"], b["lonMax"])
    return PopulationSpec(
        count=doc["count"],
        subjects=tuple(doc.get("subjects", DEFAULT_SUBJECTS)),
        gender_mix=mix,
        bbox=bbox,
    )


def load_scenario(path: str | Path) -> Scenario:
    return parse_scenario(json.loads(Path(path).read_text(encoding="utf-8")))


def scenario_population(scenario: Scenario) -> list[StudentProfile]:
    if isinstance(scenario.population, PopulationSpec):
        return generate_population(scenario.population, scenario.seed)
    return list(scenario.population)


def scenario_to_doc(scenario: Scenario) -> dict:
    if isinstance(scenario.population, PopulationSpec):
        spec = scenario.population
        population_doc: dict | list = {
            "count": spec.count,
            "subjects": list(spec.subjects),
            "genderMix": {g.value: w for g, w in spec.gender_mix.items()},
            "bbox": {"latMin": spec.bbox[0], "latMax": spec.bbox[1],
                     "lonMin": spec.bbox[2], "lonMax": spec.bbox[3]},
        }
    else:
        population_doc = [encode_profile(p) for p in scenario.population]
    return {
        "seed": scenario.seed,
        "population": population_doc,
        "requests": [
            {"requesterId": r.requester_id, "subject": r.subject,
             "preference": r.preference.value}
            for r in scenario.requests
        ],
    }


# --- execution and metrics ---------------------------------------------------

def _ratio(numerator: int, denominator: int) -> float | None:
    return None if denominator == 0 else numerator / denominator


def run_scenario(scenario: Scenario) -> dict:
    """Evaluate every request and aggregate metrics; deterministic per seed."""
    population = scenario_population(scenario)
    for profile in population:
        violations = validate_profile(profile)
        if violations:
            raise ValidationError([f"profile {profile.id}: {v}" for v in violations])
    by_id = {p.id: p for p in population}
    for i, request in enumerate(scenario.requests):
        if request.requester_id not in by_id:
            raise ValidationError(
                [f"request {i}: unknown requesterId {request.requester_id!r}"])

    request_dumps = []
    satisfied = strict_pool = 0          # competenceSatisfaction
    compliant = non_diversified = 0      # proximityCompliance
    score_sums: dict[str, list[float]] = {p.value: [] for p in PersonalityPreference}
    mixed_lists = diversified_lists = 0

    for index, request in enumerate(scenario.requests):
        requester = by_id[request.requester_id]
        pool = tuple(p for pid, p in sorted(by_id.items()) if pid != requester.id)
        entries = recommend(RecommendationQuery(
            requester=requester, subject=request.subject,
            preference=request.preference, candidate_pool=pool))

        requester_level = requester.competence_level(request.subject)
        tier1_available = sum(
            1 for c in pool
            if c.competence_level(request.subject) > requester_level
            and distance_meters(requester.location, c.location) <= NEAR_RADIUS_M)

        if tier1_available >= 5:
            strict_pool += len(entries)
            satisfied += sum(1 for e in entries if e.competence > requester_level)
        for entry in entries:
            if not entry.diversified:
                non_diversified += 1
                if entry.distance_m <= NEAR_RADIUS_M:
                    compliant += 1
            score_sums[request.preference.value].append(entry.personality_score)
        declared = {by_id[e.candidate_id].gender for e in entries} - {Gender.UNDISCLOSED}
        if len(declared) >= 2:
            mixed_lists += 1
        if any(e.diversified for e in entries):
            diversified_lists += 1

        request_dumps.append({
            "index": index,
            "requesterId": request.requester_id,
            "subject": request.subject,
            "preference": request.preference.value,
            "tier1Available": tier1_available,
            "entries": [{
                "candidateId": e.candidate_id,
                "tier": e.tier,
                "competence": e.competence,
                "distanceM": e.distance_m,
                "personalityScore": e.personality_score,
                "diversified": e.diversified,
                "gender": by_id[e.candidate_id].gender.value,
            } for e in entries],
        })

    n_requests = len(scenario.requests)
    metrics = {
        "competenceSatisfaction": _ratio(satisfied, strict_pool),
        "proximityCompliance": _ratio(compliant, non_diversified),
        "meanPreferenceScore": {
            mode: (sum(scores) / len(scores) if scores else None)
            for mode, scores in score_sums.items()
        },
        "genderMixRate": _ratio(mixed_lists, n_requests),
        "diversificationRate": _ratio(diversified_lists, n_requests),
    }
    return {
        "seed": scenario.seed,
        "populationSize": len(population),
        "requestCount": n_requests,
        "requests": request_dumps,
        "metrics": metrics,
    }


def report_bytes(report: dict) -> bytes:
    return (json.dumps(report, sort_keys=True, indent=2) + "\n").encode("utf-8")


def render_summary(report: dict) -> str:
    """Plain-text metric table for terminal output."""
    metrics = report["metrics"]

    def fmt(value):
        return "n/a" if value is None else f"{value:.4f}"

    lines = [
        f"scenario seed {report['seed']}: population {report['populationSize']}, "
        f"requests {report['requestCount']}",
        f"{'metric':<34} value",
        f"{'-' * 34} {'-' * 6}",
        f"{'competenceSatisfaction':<34} {fmt(metrics['competenceSatisfaction'])}",
        f"{'proximityCompliance':<34} {fmt(metrics['proximityCompliance'])}",
    ]
    for mode in sorted(metrics["meanPreferenceScore"]):
        lines.append(f"{'meanPreferenceScore[' + mode + ']':<34} "
                     f"{fmt(metrics['meanPreferenceScore'][mode])}")
    lines.append(f"{'genderMixRate':<34} {fmt(metrics['genderMixRate'])}")
    lines.append(f"{'diversificationRate':<34} {fmt(metrics['diversificationRate'])}")
    return "\n".join(lines)


def _flat_metrics(metrics: dict) -> dict[str, float | None]:
    flat = {
        "competenceSatisfaction": metrics["competenceSatisfaction"],
        "proximityCompliance": metrics["proximityCompliance"],
        "genderMixRate": metrics["genderMixRate"],
        "diversificationRate": metrics["diversificationRate"],
    }
    for mode, value in metrics["meanPreferenceScore"].items():
        flat[f"meanPreferenceScore[{mode}]"] = value
    return flat


def evaluate_trials(scenario: Scenario, trials: int) -> dict:
    """Re-run a scenario with derived seeds (seed + i) and aggregate metrics."""
    if trials < 1:
        raise ValidationError(["trials must be >= 1"])
    samples: dict[str, list[float]] = {}
    for i in range(trials):
        derived = Scenario(seed=scenario.seed + i, population=scenario.population,
                           requests=scenario.requests)
        report = run_scenario(derived)
        for name, value in _flat_metrics(report["metrics"]).items():
            if value is not None:
                samples.setdefault(name, []).append(value)
    aggregated = {}
    for name in sorted(samples):
        values = samples[name]
        aggregated[name] = {
            "mean": statistics.mean(values),
            "stddev": statistics.stdev(values) if len(values) > 1 else 0.0,
            "samples": len(values),
        }
    return {"baseSeed": scenario.seed, "trials": trials, "metrics": aggregated}


def render_trials(summary: dict) -> str:
    lines = [
        f"{summary['trials']} trials from base seed {summary['baseSeed']} "
        f"(derived seeds = base + trial index)",
        f"{'metric':<34} {'mean':>8} {'stddev':>8} {'n':>4}",
        f"{'-' * 34} {'-' * 8} {'-' * 8} {'-' * 4}",
    ]
    for name, row in summary["metrics"].items():
        lines.append(f"{name:<34} {row['mean']:>8.4f} {row['stddev']:>8.4f} "
                     f"{row['samples']:>4}")
    return "\n".join(lines)
