"""Application service: profile directory, task lifecycle, notification inbox.

Owns the in-memory state and the event log behind it. Every mutation runs
under one lock (single writer, per-task serialization follows trivially)
and is appended to the log before the state is updated, so a restart
replays to exactly the live state. The wall clock is injectable; it must
return epoch milliseconds.
"""

from __future__ import annotations

import threading
import time
from typing import Callable, Iterable

from .model import StudentProfile, PersonalityPreference, ValidationError, validate_profile
from .personality import score_questionnaire
from .recommender import ScoredCandidate
from .store import (
    EventKind,
    EventLog,
    EventRecord,
    StoreState,
    encode_notification,
    encode_profile,
    encode_task,
    encode_transaction,
    replay,
)
from .tasks import (
    Notification,
    NotFoundError,
    TaskTransaction,
    TransactionKind,
    TutoringTask,
    apply_transaction,
    open_task,
)


def now_millis() -> int:
    return int(time.time() * 1000)


class TutoringService:
    def __init__(self, log: EventLog, clock: Callable[[], int] = now_millis):
        self._log = log
        self._clock = clock
        self._lock = threading.Lock()
        records = log.records()
        self._state = replay(records)
        # Per-task transaction counters and the task counter are derived from
        # the log, not stored: create is seq 1, later transactions follow.
        self._task_seq: dict[str, int] = {tid: 1 for tid in self._state.tasks}
        self._tasks_created = len(self._state.tasks)
        for record in records:
            if record.kind is EventKind.TRANSACTION_APPLIED:
                tid = record.payload["taskId"]
                self._task_seq[tid] = max(self._task_seq[tid], record.payload["seq"])

    @property
    def state(self) -> StoreState:
        return self._state

    def _append(self, kind: EventKind, payload: dict, at: int) -> None:
        self._log.append(EventRecord(
            global_seq=self._log.last_seq + 1, at=at, kind=kind, payload=payload))

    # --- profiles ---------------------------------------------------------

    def upsert_profile(self, profile: StudentProfile) -> StudentProfile:
        violations = validate_profile(profile)
        if violations:
            raise ValidationError(violations)
        with self._lock:
            at = self._clock()
            self._append(EventKind.PROFILE_UPSERTED, encode_profile(profile), at)
            self._state.profiles[profile.id] = profile
        return profile

    def get_profile(self, profile_id: str) -> StudentProfile:
        profile = self._state.profiles.get(profile_id)
        if profile is None:
            raise NotFoundError(f"no profile {profile_id}")
        return profile

    def profiles(self) -> list[StudentProfile]:
        return list(self._state.profiles.values())

    def apply_questionnaire(self, profile_id: str, answers) -> StudentProfile:
        """Score the questionnaire and persist the traits on the profile."""
        profile = self.get_profile(profile_id)
        try:
            traits = score_questionnaire(answers)
        except ValueError as exc:
            raise ValidationError([str(exc)]) from exc
        updated = StudentProfile(
            id=profile.id, display_name=profile.display_name, gender=profile.gender,
            location=profile.location, traits=traits, competences=profile.competences)
        with self._lock:
            at = self._clock()
            self._append(EventKind.PROFILE_UPSERTED, encode_profile(updated), at)
            self._state.profiles[updated.id] = updated
        return updated

    # --- tasks ------------------------------------------------------------

    def create_task(self, requester_id: str, subject: str,
                    preference: PersonalityPreference,
                    description: str = "") -> tuple[TutoringTask, list[Notification]]:
        requester = self.get_profile(requester_id)
        if not subject:
            raise ValidationError(["subject must be non-empty"])
        with self._lock:
            pool = tuple(p for pid, p in sorted(self._state.profiles.items())
                         if pid != requester_id)
            task_id = f"task-{self._tasks_created + 1}"
            at = self._clock()
            task, _create_txn, notifications = open_task(
                task_id, requester, subject, preference, description, pool, at)
            self._append(EventKind.TASK_CREATED, encode_task(task), at)
            for note in notifications:
                self._append(EventKind.NOTIFICATION_EMITTED, encode_notification(note), at)
            self._state.tasks[task_id] = task
            for note in notifications:
                self._state.notifications[note.id] = note
            self._tasks_created += 1
            self._task_seq[task_id] = 1
        return task, notifications

    def get_task(self, task_id: str) -> TutoringTask:
        task = self._state.tasks.get(task_id)
        if task is None:
            raise NotFoundError(f"no task {task_id}")
        return task

    def submit_transaction(self, task_id: str, actor_id: str, kind: TransactionKind,
                           attributes: dict[str, str] | None = None,
                           ) -> tuple[TutoringTask, list[Notification]]:
        """Apply one transaction; rejections leave task and log untouched."""
        with self._lock:
            task = self._state.tasks.get(task_id)
            if task is None:
                raise NotFoundError(f"no task {task_id}")
            txn = TaskTransaction(
                seq=self._task_seq[task_id] + 1, task_id=task_id, actor_id=actor_id,
                kind=kind, attributes=dict(attributes or {}), at=self._clock())
            updated, notifications = apply_transaction(task, txn)
            self._append(EventKind.TRANSACTION_APPLIED, encode_transaction(txn), txn.at)
            for note in notifications:
                self._append(EventKind.NOTIFICATION_EMITTED,
                             encode_notification(note), txn.at)
            self._state.tasks[task_id] = updated
            for note in notifications:
                self._state.notifications[note.id] = note
            self._task_seq[task_id] = txn.seq
        return updated, notifications

    def recommendations_for(self, task_id: str) -> tuple[ScoredCandidate, ...]:
        return self.get_task(task_id).recommended

    # --- notifications ------------------------------------------------------

    def notifications_for(self, recipient_id: str,
                          unread_only: bool = False) -> list[Notification]:
        self.get_profile(recipient_id)
        notes = [n for n in self._state.notifications.values()
                 if n.recipient_id == recipient_id]
        if unread_only:
            notes = [n for n in notes if not n.read]
        notes.sort(key=lambda n: n.at)  # stable: emission order preserved on ties
        return notes

    def mark_notification_read(self, recipient_id: str, notification_id: str) -> Notification:
        with self._lock:
            note = self._state.notifications.get(notification_id)
            if note is None or note.recipient_id != recipient_id:
                raise NotFoundError(f"no notification {notification_id} for {recipient_id}")
            if note.read:
                return note
            at = self._clock()
            self._append(EventKind.NOTIFICATION_READ,
                         {"id": note.id, "recipientId": recipient_id}, at)
            updated = Notification(id=note.id, recipient_id=note.recipient_id,
                                   task_id=note.task_id, kind=note.kind,
                                   at=note.at, read=True)
            self._state.notifications[note.id] = updated
        return updated
