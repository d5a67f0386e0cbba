"""Tutoring-request lifecycle as a transaction-driven state machine.

Transition functions are pure: they take the current task value plus one
transaction and return the updated task and the notifications it triggers.
A disallowed transaction raises one of the rejection errors and changes
nothing. Notification ids are derived from (task, transaction seq,
recipient) so replaying the same transactions reproduces identical values.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

from .model import PersonalityPreference, StudentProfile
from .recommender import RecommendationQuery, ScoredCandidate, recommend


class TaskState(str, Enum):
    OPEN = "open"
    PENDING_SELECTION = "pendingSelection"
    COMPLETED = "completed"
    CANCELLED = "cancelled"
    EXPIRED = "expired"


TERMINAL_STATES = frozenset(
    {TaskState.COMPLETED, TaskState.CANCELLED, TaskState.EXPIRED})

RESPONDABLE_STATES = (TaskState.OPEN, TaskState.PENDING_SELECTION)


class TransactionKind(str, Enum):
    CREATE = "create"
    VOLUNTEER = "volunteer"
    DECLINE = "decline"
    BEST_RESPONSE = "bestResponse"
    CANCEL = "cancel"


class NotificationKind(str, Enum):
    TUTORING_REQUESTED = "tutoringRequested"
    TUTOR_VOLUNTEERED = "tutorVolunteered"
    TUTOR_DECLINED_ALL = "tutorDeclinedAll"
    TUTOR_SELECTED = "tutorSelected"
    TASK_CANCELLED = "taskCancelled"


VOLUNTEERED = "volunteered"
DECLINED = "declined"


class TaskError(Exception):
    """Base for every lifecycle rejection."""


class NotFoundError(TaskError):
    pass


class ForbiddenError(TaskError):
    pass


class InvalidTransitionError(TaskError):
    pass


class ConflictError(TaskError):
    pass


class InvalidArgumentError(TaskError):
    pass


@dataclass(frozen=True)
class TutoringTask:
    id: str
    requester_id: str
    subject: str
    preference: PersonalityPreference
    description: str
    created_at: int  # epoch milliseconds, UTC
    state: TaskState
    recommended: tuple[ScoredCandidate, ...]
    responses: dict[str, str] = field(default_factory=dict)
    selected_tutor_id: str | None = None

    def recommended_ids(self) -> tuple[str, ...]:
        return tuple(e.candidate_id for e in self.recommended)


@dataclass(frozen=True)
class TaskTransaction:
    seq: int  # dense from 1 per task; create is always seq 1
    task_id: str
    actor_id: str
    kind: TransactionKind
    attributes: dict[str, str]
    at: int


@dataclass(frozen=True)
class Notification:
    id: str
    recipient_id: str
    task_id: str
    kind: NotificationKind
    at: int
    read: bool = False


def _notification(task_id: str, seq: int, recipient_id: str,
                  kind: NotificationKind, at: int) -> Notification:
    return Notification(
        id=f"n-{task_id}-{seq}-{recipient_id}",
        recipient_id=recipient_id,
        task_id=task_id,
        kind=kind,
        at=at,
    )


def open_task(task_id: str, requester: StudentProfile, subject: str,
              preference: PersonalityPreference, description: str,
              candidate_pool: tuple[StudentProfile, ...],
              at: int) -> tuple[TutoringTask, TaskTransaction, list[Notification]]:
    """Open a new task: rank the pool and notify every recommended candidate.

    An empty recommendation list is allowed; the task still opens with zero
    notifications.
    """
    query = RecommendationQuery(requester=requester, subject=subject,
                                preference=preference, candidate_pool=candidate_pool)
    recommended = tuple(recommend(query))
    task = TutoringTask(
        id=task_id,
        requester_id=requester.id,
        subject=subject,
        preference=preference,
        description=description,
        created_at=at,
        state=TaskState.OPEN,
        recommended=recommended,
        responses={},
    )
    txn = TaskTransaction(seq=1, task_id=task_id, actor_id=requester.id,
                          kind=TransactionKind.CREATE, attributes={}, at=at)
    notifications = [
        _notification(task_id, 1, entry.candidate_id,
                      NotificationKind.TUTORING_REQUESTED, at)
        for entry in recommended
    ]
    return task, txn, notifications


def apply_transaction(task: TutoringTask,
                      txn: TaskTransaction) -> tuple[TutoringTask, list[Notification]]:
    """Apply one transaction, returning the new task and emitted notifications.

    Raises:
        ForbiddenError: the actor may not issue this kind on this task.
        InvalidTransitionError: the task state does not admit this kind.
        ConflictError: the actor already responded.
        InvalidArgumentError: malformed transaction (wrong task, bad target).
    """
    if txn.task_id != task.id:
        raise InvalidArgumentError(f"transaction targets {txn.task_id}, not {task.id}")

    if txn.kind is TransactionKind.CREATE:
        raise InvalidTransitionError("create is only valid when a task is first opened")

    if txn.kind in (TransactionKind.VOLUNTEER, TransactionKind.DECLINE):
        return _apply_response(task, txn)
    if txn.kind is TransactionKind.BEST_RESPONSE:
        return _apply_best_response(task, txn)
    if txn.kind is TransactionKind.CANCEL:
        return _apply_cancel(task, txn)
    raise InvalidArgumentError(f"unknown transaction kind {txn.kind!r}")


def _apply_response(task, txn):
    if txn.actor_id not in task.recommended_ids():
        raise ForbiddenError(
            f"{txn.actor_id} is not a recommended candidate for task {task.id}")
    if task.state not in RESPONDABLE_STATES:
        raise InvalidTransitionError(
            f"cannot {txn.kind.value} a {task.state.value} task")
    if txn.actor_id in task.responses:
        raise ConflictError(f"{txn.actor_id} already responded to task {task.id}")

    responses = dict(task.responses)
    if txn.kind is TransactionKind.VOLUNTEER:
        responses[txn.actor_id] = VOLUNTEERED
        updated = replace(task, state=TaskState.PENDING_SELECTION, responses=responses)
        notes = [_notification(task.id, txn.seq, task.requester_id,
                               NotificationKind.TUTOR_VOLUNTEERED, txn.at)]
        return updated, notes

    responses[txn.actor_id] = DECLINED
    if all(responses.get(cid) == DECLINED for cid in task.recommended_ids()):
        updated = replace(task, state=TaskState.EXPIRED, responses=responses)
        notes = [_notification(task.id, txn.seq, task.requester_id,
                               NotificationKind.TUTOR_DECLINED_ALL, txn.at)]
        return updated, notes
    return replace(task, responses=responses), []


def _apply_best_response(task, txn):
    if txn.actor_id != task.requester_id:
        raise ForbiddenError("only the requester may select the best response")
    if task.state is not TaskState.PENDING_SELECTION:
        raise InvalidTransitionError(
            f"cannot select a tutor on a {task.state.value} task")
    chosen = txn.attributes.get("chosenTutorId", "")
    if task.responses.get(chosen) != VOLUNTEERED:
        raise InvalidArgumentError("chosenTutorId must identify a volunteering tutor")
    updated = replace(task, state=TaskState.COMPLETED, selected_tutor_id=chosen)
    notes = [_notification(task.id, txn.seq, chosen,
                           NotificationKind.TUTOR_SELECTED, txn.at)]
    return updated, notes


def _apply_cancel(task, txn):
    if txn.actor_id != task.requester_id:
        raise ForbiddenError("only the requester may cancel a task")
    if task.state not in RESPONDABLE_STATES:
        raise InvalidTransitionError(f"cannot cancel a {task.state.value} task")
    updated = replace(task, state=TaskState.CANCELLED)
    notes = [
        _notification(task.id, txn.seq, cid, NotificationKind.TASK_CANCELLED, txn.at)
        for cid in task.recommended_ids()
        if task.responses.get(cid) != DECLINED
    ]
    return updated, notes
