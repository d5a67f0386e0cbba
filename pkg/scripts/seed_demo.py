"""Seed a demo credentials file and a pre-populated event log for the server.

Writes demo-credentials.json plus demo-events.jsonl with six students, then
the API can be started on top of them:

    python scripts/seed_demo.py
    tutormatch serve --credentials demo-credentials.json --log-file demo-events.jsonl
"""

import json
import math
from pathlib import Path

from tutormatch.model import Gender, GeoPoint, StudentProfile, TraitVector
from tutormatch.service import TutoringService
from tutormatch.store import EventLog

SUBJECTS = ("calculus", "algebra", "physics")
CENTER = GeoPoint(-25.2637, -57.5759)

STUDENTS = [
    ("ana", "Ana", Gender.FEMALE, (0.30, 0.40, 0.20), (0.8, 0.6, 0.5, 0.4, 0.7), (0, 0)),
    ("beto", "Beto", Gender.MALE, (0.75, 0.20, 0.60), (0.7, 0.6, 0.5, 0.5, 0.6), (120, 40)),
    ("carla", "Carla", Gender.FEMALE, (0.85, 0.90, 0.30), (0.2, 0.3, 0.9, 0.8, 0.1), (-80, 200)),
    ("dani", "Dani", Gender.NONBINARY, (0.60, 0.70, 0.80), (0.8, 0.5, 0.4, 0.5, 0.8), (-150, -60)),
    ("elsa", "Elsa", Gender.FEMALE, (0.95, 0.10, 0.90), (0.5, 0.5, 0.5, 0.5, 0.5), (60, -250)),
    ("fede", "Fede", Gender.MALE, (0.50, 0.55, 0.45), (0.9, 0.9, 0.1, 0.1, 0.9), (300, 120)),
]


def nearby(base, east_m, north_m):
    dlat = north_m / 111_194.9266
    dlon = east_m / (111_194.9266 * math.cos(math.radians(base.latitude_deg)))
    return GeoPoint(base.latitude_deg + dlat, base.longitude_deg + dlon)


def main():
    credentials = {pid: f"{pid}-secret" for pid, *_ in STUDENTS}
    Path("demo-credentials.json").write_text(json.dumps(credentials, indent=2) + "\n")

    log_path = Path("demo-events.jsonl")
    if log_path.exists():
        log_path.unlink()
    service = TutoringService(EventLog(log_path))
    for pid, name, gender, levels, traits, (dx, dy) in STUDENTS:
        service.upsert_profile(StudentProfile(
            id=pid, display_name=name, gender=gender,
            location=nearby(CENTER, dx, dy),
            traits=TraitVector(*traits),
            competences=dict(zip(SUBJECTS, levels))))

    print(f"wrote demo-credentials.json ({len(credentials)} logins, "
          f"secret is '<id>-secret') and {log_path} "
          f"({EventLog(log_path).last_seq} events)")


if __name__ == "__main__":
    main()
