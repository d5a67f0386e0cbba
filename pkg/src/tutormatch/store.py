"""Append-only event log and state replay.

One JSON object per UTF-8 line; `globalSeq` is dense from 1, so any prefix
truncated at a line boundary replays cleanly. Exactly one writer at a time;
readers work from replayed snapshots. This module also owns the wire
encoding of every domain value (camelCase keys).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .model import Gender, GeoPoint, PersonalityPreference, StudentProfile, TraitVector
from .recommender import ScoredCandidate
from .tasks import (
    Notification,
    NotificationKind,
    TaskState,
    TaskTransaction,
    TransactionKind,
    TutoringTask,
    apply_transaction,
)


class EventKind(str, Enum):
    PROFILE_UPSERTED = "profileUpserted"
    TASK_CREATED = "taskCreated"
    TRANSACTION_APPLIED = "transactionApplied"
    NOTIFICATION_EMITTED = "notificationEmitted"
    NOTIFICATION_READ = "notificationRead"


@dataclass(frozen=True)
class EventRecord:
    global_seq: int
    at: int
    kind: EventKind
    payload: dict


class IntegrityError(Exception):
    """Sequence gap or duplicate on append."""


class CorruptLogError(Exception):
    """Replay hit an undecodable or inconsistent record."""

    def __init__(self, global_seq: int, reason: str):
        super().__init__(f"record {global_seq}: {reason}")
        self.global_seq = global_seq


# --- wire codecs -----------------------------------------------------------

def encode_profile(p: StudentProfile) -> dict:
    return {
        "id": p.id,
        "displayName": p.display_name,
        "gender": p.gender.value,
        "location": {"latitudeDeg": p.location.latitude_deg,
                     "longitudeDeg": p.location.longitude_deg},
        "traits": {
            "extraversion": p.traits.extraversion,
            "agreeableness": p.traits.agreeableness,
            "conscientiousness": p.traits.conscientiousness,
            "emotionalStability": p.traits.emotional_stability,
            "openness": p.traits.openness,
        },
        "competences": dict(sorted(p.competences.items())),
    }


def decode_profile(doc: dict) -> StudentProfile:
    traits = doc["traits"]
    return StudentProfile(
        id=doc["id"],
        display_name=doc["displayName"],
        gender=Gender(doc["gender"]),
        location=GeoPoint(doc["location"]["latitudeDeg"], doc["location"]["longitudeDeg"]),
        traits=TraitVector(
            traits["extraversion"],
            traits["agreeableness"],
            traits["conscientiousness"],
            traits["emotionalStability"],
            traits["openness"],
        ),
        competences=dict(doc.get("competences", {})),
    )


def encode_entry(e: ScoredCandidate) -> dict:
    return {
        "candidateId": e.candidate_id,
        "tier": e.tier,
        "competence": e.competence,
        "distanceM": e.distance_m,
        "personalityScore": e.personality_score,
        "diversified": e.diversified,
    }


def decode_entry(doc: dict) -> ScoredCandidate:
    return ScoredCandidate(
        candidate_id=doc["candidateId"],
        tier=doc["tier"],
        competence=doc["competence"],
        distance_m=doc["distanceM"],
        personality_score=doc["personalityScore"],
        diversified=doc["diversified"],
    )


def encode_task(t: TutoringTask) -> dict:
    return {
        "id": t.id,
        "requesterId": t.requester_id,
        "subject": t.subject,
        "preference": t.preference.value,
        "description": t.description,
        "createdAt": t.created_at,
        "state": t.state.value,
        "recommended": [encode_entry(e) for e in t.recommended],
        "responses": dict(sorted(t.responses.items())),
        "selectedTutorId": t.selected_tutor_id,
    }


def decode_task(doc: dict) -> TutoringTask:
    return TutoringTask(
        id=doc["id"],
        requester_id=doc["requesterId"],
        subject=doc["subject"],
        preference=PersonalityPreference(doc["preference"]),
        description=doc["description"],
        created_at=doc["createdAt"],
        state=TaskState(doc["state"]),
        recommended=tuple(decode_entry(e) for e in doc["recommended"]),
        responses=dict(doc["responses"]),
        selected_tutor_id=doc.get("selectedTutorId"),
    )


def encode_transaction(txn: TaskTransaction) -> dict:
    return {
        "seq": txn.seq,
        "taskId": txn.task_id,
        "actorId": txn.actor_id,
        "kind": txn.kind.value,
        "attributes": dict(txn.attributes),
        "at": txn.at,
    }


def decode_transaction(doc: dict) -> TaskTransaction:
    return TaskTransaction(
        seq=doc["seq"],
        task_id=doc["taskId"],
        actor_id=doc["actorId"],
        kind=TransactionKind(doc["kind"]),
        attributes=dict(doc.get("attributes", {})),
        at=doc["at"],
    )


def encode_notification(n: Notification) -> dict:
    return {
        "id": n.id,
        "recipientId": n.recipient_id,
        "taskId": n.task_id,
        "kind": n.kind.value,
        "at": n.at,
        "read": n.read,
    }


def decode_notification(doc: dict) -> Notification:
    return Notification(
        id=doc["id"],
        recipient_id=doc["recipientId"],
        task_id=doc["taskId"],
        kind=NotificationKind(doc["kind"]),
        at=doc["at"],
        read=doc["read"],
    )


# --- the log ---------------------------------------------------------------

class EventLog:
    """Durable append-only log; one JSON record per line.

    `sync=False` skips the per-append fsync (tests, bulk simulation); the
    durability contract only holds with the default.
    """

    def __init__(self, path: str | Path, sync: bool = True):
        self.path = Path(path)
        self.sync = sync
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.touch(exist_ok=True)
        self._last_seq = 0
        for record in self.records():
            self._last_seq = record.global_seq
        self._fh = open(self.path, "a", encoding="utf-8")

    @property
    def last_seq(self) -> int:
        return self._last_seq

    def append(self, record: EventRecord) -> None:
        """Write one record; it is on disk before this returns (when sync)."""
        if record.global_seq != self._last_seq + 1:
            raise IntegrityError(
                f"expected globalSeq {self._last_seq + 1}, got {record.global_seq}")
        line = json.dumps(
            {"globalSeq": record.global_seq, "at": record.at,
             "kind": record.kind.value, "payload": record.payload},
            sort_keys=True, separators=(",", ":"))
        self._fh.write(line + "\n")
        self._fh.flush()
        if self.sync:
            os.fsync(self._fh.fileno())
        self._last_seq = record.global_seq

    def records(self) -> list[EventRecord]:
        """Read every record back; malformed lines abort with their position."""
        records: list[EventRecord] = []
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    doc = json.loads(line)
                    record = EventRecord(
                        global_seq=doc["globalSeq"], at=doc["at"],
                        kind=EventKind(doc["kind"]), payload=doc["payload"])
                except (json.JSONDecodeError, KeyError, ValueError) as exc:
                    raise CorruptLogError(lineno, f"undecodable line: {exc}") from exc
                records.append(record)
        return records

    def close(self) -> None:
        self._fh.close()


# --- replay ----------------------------------------------------------------

@dataclass
class StoreState:
    profiles: dict[str, StudentProfile] = field(default_factory=dict)
    tasks: dict[str, TutoringTask] = field(default_factory=dict)
    notifications: dict[str, Notification] = field(default_factory=dict)


def replay(records: list[EventRecord]) -> StoreState:
    """Fold an integrity-checked log into the full in-memory state.

    Notifications come from their own events; re-applying a transaction
    discards the transition's emissions to avoid double counting.
    """
    state = StoreState()
    for position, record in enumerate(records, start=1):
        if record.global_seq != position:
            raise CorruptLogError(record.global_seq,
                                  f"sequence gap (expected {position})")
        try:
            _fold(state, record)
        except CorruptLogError:
            raise
        except Exception as exc:
            raise CorruptLogError(record.global_seq, str(exc)) from exc
    return state


def _fold(state: StoreState, record: EventRecord) -> None:
    kind = record.kind
    if kind is EventKind.PROFILE_UPSERTED:
        profile = decode_profile(record.payload)
        state.profiles[profile.id] = profile
    elif kind is EventKind.TASK_CREATED:
        task = decode_task(record.payload)
        state.tasks[task.id] = task
    elif kind is EventKind.TRANSACTION_APPLIED:
        txn = decode_transaction(record.payload)
        task = state.tasks.get(txn.task_id)
        if task is None:
            raise CorruptLogError(record.global_seq, f"unknown task {txn.task_id}")
        updated, _notes = apply_transaction(task, txn)
        state.tasks[txn.task_id] = updated
    elif kind is EventKind.NOTIFICATION_EMITTED:
        note = decode_notification(record.payload)
        state.notifications[note.id] = note
    elif kind is EventKind.NOTIFICATION_READ:
        note = state.notifications.get(record.payload["id"])
        if note is None:
            raise CorruptLogError(record.global_seq,
                                  f"unknown notification {record.payload['id']}")
        state.notifications[note.id] = Notification(
            id=note.id, recipient_id=note.recipient_id, task_id=note.task_id,
            kind=note.kind, at=note.at, read=True)


def state_fingerprint(state: StoreState) -> bytes:
    """Canonical byte serialization of the full state, for equality checks."""
    doc = {
        "profiles": {pid: encode_profile(p) for pid, p in sorted(state.profiles.items())},
        "tasks": {tid: encode_task(t) for tid, t in sorted(state.tasks.items())},
        "notifications": {nid: encode_notification(n)
                          for nid, n in sorted(state.notifications.items())},
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")
