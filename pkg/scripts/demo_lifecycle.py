"""End-to-end lifecycle walkthrough against an in-process service.

Creates a handful of students, opens a tutoring request, plays out
volunteer / decline / best-response, and prints every notification plus the
resulting event log, then proves the log replays to the live state.

Usage: python scripts/demo_lifecycle.py [--log demo-events.jsonl]
"""

import argparse
import math
import tempfile
from pathlib import Path

from tutormatch.model import Gender, GeoPoint, PersonalityPreference, StudentProfile, TraitVector
from tutormatch.service import TutoringService
from tutormatch.store import EventLog, replay, state_fingerprint
from tutormatch.tasks import TransactionKind

SUBJECT = "calculus"
CENTER = GeoPoint(-25.2637, -57.5759)


def nearby(base, north_m, east_m):
    dlat = north_m / 111_194.9266
    dlon = east_m / (111_194.9266 * math.cos(math.radians(base.latitude_deg)))
    return GeoPoint(base.latitude_deg + dlat, base.longitude_deg + dlon)


def student(pid, name, gender, level, traits, dx=0.0, dy=0.0):
    return StudentProfile(
        id=pid, display_name=name, gender=gender,
        location=nearby(CENTER, dy, dx),
        traits=TraitVector(*traits),
        competences={SUBJECT: level})


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--log", default=None, help="event log path (default: temp file)")
    args = parser.parse_args()

    log_path = args.log or str(Path(tempfile.mkdtemp()) / "demo-events.jsonl")
    service = TutoringService(EventLog(log_path))

    roster = [
        student("ana", "Ana", Gender.FEMALE, 0.30, (0.8, 0.6, 0.5, 0.4, 0.7)),
        student("beto", "Beto", Gender.MALE, 0.75, (0.7, 0.6, 0.5, 0.5, 0.6), dx=120),
        student("carla", "Carla", Gender.FEMALE, 0.85, (0.2, 0.3, 0.9, 0.8, 0.1), dy=200),
        student("dani", "Dani", Gender.NONBINARY, 0.60, (0.8, 0.5, 0.4, 0.5, 0.8), dx=-150),
        student("elsa", "Elsa", Gender.FEMALE, 0.95, (0.5, 0.5, 0.5, 0.5, 0.5), dy=-250),
        student("fede", "Fede", Gender.MALE, 0.50, (0.9, 0.9, 0.1, 0.1, 0.9), dx=300),
    ]
    for profile in roster:
        service.upsert_profile(profile)
    print(f"registered {len(roster)} students")

    task, notes = service.create_task(
        "ana", SUBJECT, PersonalityPreference.SIMILAR, "binomial series")
    print(f"\n{task.id}: state={task.state.value}, recommended:")
    for entry in task.recommended:
        print(f"  {entry.candidate_id:<6} tier={entry.tier} "
              f"competence={entry.competence:.2f} distance={entry.distance_m:7.1f} m "
              f"personality={entry.personality_score:.3f}")
    for note in notes:
        print(f"  -> notify {note.recipient_id}: {note.kind.value}")

    for actor, kind in (("beto", TransactionKind.VOLUNTEER),
                        ("carla", TransactionKind.DECLINE),
                        ("dani", TransactionKind.VOLUNTEER)):
        task, notes = service.submit_transaction(task.id, actor, kind)
        print(f"\n{actor} {kind.value}s -> state={task.state.value}")
        for note in notes:
            print(f"  -> notify {note.recipient_id}: {note.kind.value}")

    task, notes = service.submit_transaction(
        task.id, "ana", TransactionKind.BEST_RESPONSE, {"chosenTutorId": "beto"})
    print(f"\nana selects beto -> state={task.state.value}, "
          f"selected={task.selected_tutor_id}")
    for note in notes:
        print(f"  -> notify {note.recipient_id}: {note.kind.value}")

    print("\nana's inbox:")
    for note in service.notifications_for("ana"):
        print(f"  [{'read' if note.read else 'new '}] {note.kind.value} ({note.task_id})")

    records = EventLog(log_path).records()
    print(f"\nevent log {log_path}: {len(records)} records")
    for record in records:
        print(f"  #{record.global_seq:<3} {record.kind.value}")
    same = state_fingerprint(replay(records)) == state_fingerprint(service.state)
    print(f"\nreplay reproduces live state: {same}")


if __name__ == "__main__":
    main()
