"""HTTP/JSON facade over the tutoring service.

Three controller surfaces (auth, users, tasks) plus recommendations and
notifications. Every mutating route authenticates the bearer token before
touching domain state; domain rejections map onto 401/403/404/409/422.
Bodies are JSON with camelCase keys; timestamps in responses are ISO-8601
UTC.
"""

from __future__ import annotations

from datetime import datetime, timezone

from fastapi import Depends, FastAPI, Header, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .auth import AuthError, TokenStore
from .model import (
    Gender,
    GeoPoint,
    NEUTRAL_TRAITS,
    PersonalityPreference,
    StudentProfile,
    TraitVector,
    ValidationError,
)
from .personality import compatibility_level
from .recommender import ScoredCandidate
from .service import TutoringService
from .store import encode_profile
from .tasks import (
    ConflictError,
    ForbiddenError,
    InvalidArgumentError,
    InvalidTransitionError,
    NotFoundError,
    Notification,
    TaskError,
    TransactionKind,
    TutoringTask,
)


def iso(millis: int) -> str:
    return datetime.fromtimestamp(millis / 1000.0, tz=timezone.utc).isoformat(
        timespec="milliseconds").replace("+00:00", "Z")


class LoginBody(BaseModel):
    userId: str
    secret: str


class LocationBody(BaseModel):
    latitudeDeg: float
    longitudeDeg: float


class TraitsBody(BaseModel):
    extraversion: float
    agreeableness: float
    conscientiousness: float
    emotionalStability: float
    openness: float


class ProfileBody(BaseModel):
    id: str | None = None
    displayName: str
    gender: str
    location: LocationBody
    traits: TraitsBody | None = None
    competences: dict[str, float] = Field(default_factory=dict)


class QuestionnaireBody(BaseModel):
    answers: list[int]


class TaskBody(BaseModel):
    subject: str
    preference: str
    description: str = ""


class TransactionBody(BaseModel):
    kind: str
    attributes: dict[str, str] = Field(default_factory=dict)


def _profile_from_body(body: ProfileBody, default_id: str) -> StudentProfile:
    try:
        gender = Gender(body.gender)
    except ValueError:
        raise HTTPException(422, detail={"violations": [f"unknown gender {body.gender!r}"]})
    traits = NEUTRAL_TRAITS if body.traits is None else TraitVector(
        body.traits.extraversion, body.traits.agreeableness,
        body.traits.conscientiousness, body.traits.emotionalStability,
        body.traits.openness)
    return StudentProfile(
        id=body.id or default_id,
        display_name=body.displayName,
        gender=gender,
        location=GeoPoint(body.location.latitudeDeg, body.location.longitudeDeg),
        traits=traits,
        competences=dict(body.competences),
    )


def _entry_doc(entry: ScoredCandidate) -> dict:
    return {
        "candidateId": entry.candidate_id,
        "tier": entry.tier,
        "competence": entry.competence,
        "distanceM": entry.distance_m,
        "personalityScore": entry.personality_score,
        "compatibility": compatibility_level(entry.personality_score).value,
        "diversified": entry.diversified,
    }


def _task_doc(task: TutoringTask) -> dict:
    return {
        "id": task.id,
        "requesterId": task.requester_id,
        "subject": task.subject,
        "preference": task.preference.value,
        "description": task.description,
        "createdAt": iso(task.created_at),
        "state": task.state.value,
        "recommended": [_entry_doc(e) for e in task.recommended],
        "responses": dict(sorted(task.responses.items())),
        "selectedTutorId": task.selected_tutor_id,
    }


def _notification_doc(note: Notification) -> dict:
    return {
        "id": note.id,
        "recipientId": note.recipient_id,
        "taskId": note.task_id,
        "kind": note.kind.value,
        "at": iso(note.at),
        "read": note.read,
    }


def create_app(service: TutoringService, tokens: TokenStore) -> FastAPI:
    app = FastAPI(title="tutormatch", version="0.1.0")
    # the browser client may be served from a different origin
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])

    def current_user(authorization: str | None = Header(default=None)) -> str:
        if not authorization or not authorization.startswith("Bearer "):
            raise HTTPException(401, detail="missing bearer token")
        try:
            return tokens.authenticate(authorization.removeprefix("Bearer "))
        except AuthError as exc:
            raise HTTPException(401, detail=str(exc))

    @app.exception_handler(TaskError)
    def task_error_handler(_request, exc: TaskError):
        status = {
            NotFoundError: 404,
            ForbiddenError: 403,
            InvalidTransitionError: 409,
            ConflictError: 409,
            InvalidArgumentError: 422,
        }.get(type(exc), 500)
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    @app.exception_handler(ValidationError)
    def validation_error_handler(_request, exc: ValidationError):
        return JSONResponse(status_code=422, content={"violations": exc.violations})

    # --- auth controller ---------------------------------------------------

    @app.post("/auth/login")
    def login(body: LoginBody):
        try:
            token, expires_at = tokens.login(body.userId, body.secret)
        except AuthError:
            raise HTTPException(401, detail="bad credentials")
        return {"token": token, "expiresAt": iso(expires_at)}

    # --- user controller ---------------------------------------------------

    @app.post("/users", status_code=201)
    def create_user(body: ProfileBody, user: str = Depends(current_user)):
        profile = _profile_from_body(body, default_id=user)
        if profile.id in {p.id for p in service.profiles()}:
            raise HTTPException(409, detail=f"profile {profile.id} already exists")
        service.upsert_profile(profile)
        return encode_profile(profile)

    @app.get("/users/{profile_id}")
    def get_user(profile_id: str, user: str = Depends(current_user)):
        return encode_profile(service.get_profile(profile_id))

    @app.put("/users/{profile_id}")
    def update_user(profile_id: str, body: ProfileBody,
                    user: str = Depends(current_user)):
        if profile_id != user:
            raise HTTPException(403, detail="profiles may only be updated by their owner")
        service.get_profile(profile_id)
        profile = _profile_from_body(body, default_id=profile_id)
        if profile.id != profile_id:
            raise HTTPException(422, detail={"violations": ["id cannot be changed"]})
        service.upsert_profile(profile)
        return encode_profile(profile)

    @app.post("/users/{profile_id}/questionnaire")
    def submit_questionnaire(profile_id: str, body: QuestionnaireBody,
                             user: str = Depends(current_user)):
        if profile_id != user:
            raise HTTPException(403, detail="only the owner may submit the questionnaire")
        updated = service.apply_questionnaire(profile_id, body.answers)
        return {"traits": encode_profile(updated)["traits"]}

    @app.get("/users/{profile_id}/notifications")
    def list_notifications(profile_id: str, unreadOnly: bool = Query(default=False),
                           user: str = Depends(current_user)):
        if profile_id != user:
            raise HTTPException(403, detail="notifications are private to their recipient")
        notes = service.notifications_for(profile_id, unread_only=unreadOnly)
        return [_notification_doc(n) for n in notes]

    @app.post("/users/{profile_id}/notifications/{notification_id}/read")
    def mark_notification_read(profile_id: str, notification_id: str,
                               user: str = Depends(current_user)):
        if profile_id != user:
            raise HTTPException(403, detail="notifications are private to their recipient")
        return _notification_doc(service.mark_notification_read(profile_id, notification_id))

    # --- task controller ---------------------------------------------------

    @app.post("/tasks", status_code=201)
    def create_task(body: TaskBody, user: str = Depends(current_user)):
        try:
            preference = PersonalityPreference(body.preference)
        except ValueError:
            raise HTTPException(
                422, detail={"violations": [f"unknown preference {body.preference!r}"]})
        task, notifications = service.create_task(
            user, body.subject, preference, body.description)
        doc = _task_doc(task)
        doc["notifiedTutorIds"] = [n.recipient_id for n in notifications]
        return doc

    @app.get("/tasks/{task_id}")
    def get_task(task_id: str, user: str = Depends(current_user)):
        return _task_doc(service.get_task(task_id))

    @app.get("/tasks/{task_id}/recommendations")
    def get_recommendations(task_id: str, user: str = Depends(current_user)):
        return [_entry_doc(e) for e in service.recommendations_for(task_id)]

    @app.post("/tasks/{task_id}/transactions", status_code=201)
    def post_transaction(task_id: str, body: TransactionBody,
                         user: str = Depends(current_user)):
        try:
            kind = TransactionKind(body.kind)
        except ValueError:
            raise HTTPException(
                422, detail={"violations": [f"unknown transaction kind {body.kind!r}"]})
        task, notifications = service.submit_transaction(
            task_id, user, kind, body.attributes)
        return {
            "task": _task_doc(task),
            "notified": [_notification_doc(n) for n in notifications],
        }

    return app
