import dataclasses
import itertools

import pytest
from fastapi.testclient import TestClient

from tutormatch.api import create_app
from tutormatch.auth import TokenStore
from tutormatch.model import PersonalityPreference
from tutormatch.service import TutoringService
from tutormatch.store import EventLog, replay, state_fingerprint
from tutormatch.tasks import TransactionKind

from helpers import CAMPUS, make_profile, offset_point

SUBJECT = "calculus"

CREDENTIALS = {f"user{i}": f"secret{i}" for i in range(8)}


class CounterClock:
    def __init__(self, start=1_000_000):
        self._ticks = itertools.count(start, 1_000)

    def __call__(self):
        return next(self._ticks)


@pytest.fixture
def auth_clock():
    # mutable holder so tests can push time forward
    return {"now": 0}


@pytest.fixture
def client(tmp_path, auth_clock):
    service = TutoringService(EventLog(tmp_path / "events.jsonl", sync=False),
                              clock=CounterClock())
    tokens = TokenStore(CREDENTIALS, lifetime_ms=3_600_000,
                        clock=lambda: auth_clock["now"])
    app = create_app(service, tokens)
    test_client = TestClient(app)
    test_client.service = service
    return test_client


def login(client, user="user0"):
    response = client.post("/auth/login",
                           json={"userId": user, "secret": CREDENTIALS[user]})
    assert response.status_code == 200
    return {"Authorization": f"Bearer {response.json()['token']}"}


def profile_body(pid=None, lat=CAMPUS.latitude_deg, lon=CAMPUS.longitude_deg,
                 gender="female", competence=0.5, traits=None):
    body = {
        "displayName": "Someone",
        "gender": gender,
        "location": {"latitudeDeg": lat, "longitudeDeg": lon},
        "competences": {SUBJECT: competence},
    }
    if pid is not None:
        body["id"] = pid
    if traits is not None:
        body["traits"] = traits
    return body


def setup_population(client, n_tutors=5):
    """user0 is the requester; user1..n are stronger tutors nearby."""
    headers = login(client, "user0")
    assert client.post("/users", headers=headers,
                       json=profile_body("user0", competence=0.2)).status_code == 201
    tutor_headers = {}
    for i in range(1, n_tutors + 1):
        h = login(client, f"user{i}")
        point = offset_point(CAMPUS, 30.0 * i, 0.0)
        body = profile_body(f"user{i}", lat=point.latitude_deg, lon=point.longitude_deg,
                            gender="male" if i % 2 else "female",
                            competence=0.5 + i / 100)
        assert client.post("/users", headers=h, json=body).status_code == 201
        tutor_headers[f"user{i}"] = h
    return headers, tutor_headers


# --- auth controller -----------------------------------------------------------

def test_login_returns_token_and_expiry(client):
    response = client.post("/auth/login", json={"userId": "user0", "secret": "secret0"})
    assert response.status_code == 200
    doc = response.json()
    assert doc["token"]
    assert doc["expiresAt"].endswith("Z")


def test_unknown_user_gets_401(client):
    response = client.post("/auth/login", json={"userId": "ghost", "secret": "x"})
    assert response.status_code == 401


def test_wrong_secret_gets_401(client):
    response = client.post("/auth/login", json={"userId": "user0", "secret": "nope"})
    assert response.status_code == 401


def test_expired_token_gets_401_on_follow_up(client, auth_clock):
    headers = login(client)
    assert client.post("/users", headers=headers,
                       json=profile_body("user0")).status_code == 201
    auth_clock["now"] += 3_600_000  # exactly the lifetime: expired
    assert client.get("/users/user0", headers=headers).status_code == 401


def test_garbage_token_gets_401(client):
    assert client.get("/users/user0",
                      headers={"Authorization": "Bearer nonsense"}).status_code == 401


# --- user controller -------------------------------------------------------------

def test_create_and_fetch_profile(client):
    headers = login(client)
    created = client.post("/users", headers=headers, json=profile_body("user0"))
    assert created.status_code == 201
    assert created.json()["id"] == "user0"
    fetched = client.get("/users/user0", headers=headers)
    assert fetched.status_code == 200
    assert fetched.json()["displayName"] == "Someone"
    # traits default to the neutral midpoint until the questionnaire runs
    assert set(fetched.json()["traits"].values()) == {0.5}


def test_profile_id_defaults_to_token_owner(client):
    headers = login(client, "user3")
    created = client.post("/users", headers=headers, json=profile_body())
    assert created.status_code == 201
    assert created.json()["id"] == "user3"


def test_duplicate_profile_is_409(client):
    headers = login(client)
    assert client.post("/users", headers=headers,
                       json=profile_body("user0")).status_code == 201
    assert client.post("/users", headers=headers,
                       json=profile_body("user0")).status_code == 409


def test_invalid_latitude_is_422_with_violations(client):
    headers = login(client)
    response = client.post("/users", headers=headers, json=profile_body("user0", lat=91.0))
    assert response.status_code == 422
    assert any("latitude" in v for v in response.json()["violations"])


def test_put_updates_own_profile_and_rejects_foreign(client):
    headers0 = login(client, "user0")
    headers1 = login(client, "user1")
    client.post("/users", headers=headers0, json=profile_body("user0"))
    update = profile_body("user0", competence=0.9)
    assert client.put("/users/user0", headers=headers0, json=update).status_code == 200
    assert client.get("/users/user0", headers=headers0).json()["competences"][SUBJECT] == 0.9
    assert client.put("/users/user0", headers=headers1, json=update).status_code == 403


def test_put_with_bad_update_is_422(client):
    headers = login(client)
    client.post("/users", headers=headers, json=profile_body("user0"))
    assert client.put("/users/user0", headers=headers,
                      json=profile_body("user0", lat=91.0)).status_code == 422


def test_missing_profile_is_404(client):
    headers = login(client)
    assert client.get("/users/ghost", headers=headers).status_code == 404


def test_questionnaire_scores_and_persists_traits(client):
    headers = login(client)
    client.post("/users", headers=headers, json=profile_body("user0"))
    response = client.post("/users/user0/questionnaire", headers=headers,
                           json={"answers": [3] * 10})
    assert response.status_code == 200
    assert set(response.json()["traits"].values()) == {0.5}
    answers = [5, 1] + [3] * 8  # maxed first trait
    response = client.post("/users/user0/questionnaire", headers=headers,
                           json={"answers": answers})
    assert response.json()["traits"]["extraversion"] == 1.0
    assert client.get("/users/user0", headers=headers).json()["traits"]["extraversion"] == 1.0


def test_questionnaire_validation_and_ownership(client):
    headers0 = login(client, "user0")
    headers1 = login(client, "user1")
    client.post("/users", headers=headers0, json=profile_body("user0"))
    bad = client.post("/users/user0/questionnaire", headers=headers0,
                      json={"answers": [9] * 10})
    assert bad.status_code == 422
    foreign = client.post("/users/user0/questionnaire", headers=headers1,
                          json={"answers": [3] * 10})
    assert foreign.status_code == 403


# --- task controller ---------------------------------------------------------------

def test_create_task_returns_five_recommendations(client):
    headers, _ = setup_population(client, n_tutors=6)
    response = client.post("/tasks", headers=headers,
                           json={"subject": SUBJECT, "preference": "indifferent"})
    assert response.status_code == 201
    doc = response.json()
    assert doc["state"] == "open"
    assert len(doc["recommended"]) == 5
    assert len(doc["notifiedTutorIds"]) == 5
    assert all("compatibility" in e for e in doc["recommended"])


def test_recommendations_endpoint_returns_stored_list(client):
    headers, _ = setup_population(client)
    task_id = client.post("/tasks", headers=headers,
                          json={"subject": SUBJECT, "preference": "similar"}).json()["id"]
    response = client.get(f"/tasks/{task_id}/recommendations", headers=headers)
    assert response.status_code == 200
    entries = response.json()
    assert [e["candidateId"] for e in entries] == \
        [e["candidateId"] for e in client.get(f"/tasks/{task_id}",
                                              headers=headers).json()["recommended"]]
    assert all(e["compatibility"] in {"low", "medium", "high"} for e in entries)


def test_unknown_task_is_404(client):
    headers = login(client)
    assert client.get("/tasks/task-99", headers=headers).status_code == 404


def test_unknown_preference_is_422(client):
    headers, _ = setup_population(client)
    response = client.post("/tasks", headers=headers,
                           json={"subject": SUBJECT, "preference": "sideways"})
    assert response.status_code == 422


def test_volunteer_flow_and_error_codes(client):
    headers, tutor_headers = setup_population(client, n_tutors=6)
    task_id = client.post("/tasks", headers=headers,
                          json={"subject": SUBJECT, "preference": "indifferent"}).json()["id"]
    recommended = [e["candidateId"] for e in
                   client.get(f"/tasks/{task_id}/recommendations", headers=headers).json()]
    outsider = next(uid for uid in tutor_headers if uid not in recommended)
    chosen = recommended[0]

    # bestResponse before any volunteer: wrong state
    early = client.post(f"/tasks/{task_id}/transactions", headers=headers,
                        json={"kind": "bestResponse",
                              "attributes": {"chosenTutorId": chosen}})
    assert early.status_code == 409

    # volunteer from someone never recommended: forbidden
    forbidden = client.post(f"/tasks/{task_id}/transactions",
                            headers=tutor_headers[outsider],
                            json={"kind": "volunteer"})
    assert forbidden.status_code == 403

    volunteered = client.post(f"/tasks/{task_id}/transactions",
                              headers=tutor_headers[chosen],
                              json={"kind": "volunteer"})
    assert volunteered.status_code == 201
    assert volunteered.json()["task"]["state"] == "pendingSelection"

    # duplicate response: conflict
    dup = client.post(f"/tasks/{task_id}/transactions", headers=tutor_headers[chosen],
                      json={"kind": "decline"})
    assert dup.status_code == 409

    # bestResponse for a non-volunteer: invalid argument
    other = recommended[1]
    bad_target = client.post(f"/tasks/{task_id}/transactions", headers=headers,
                             json={"kind": "bestResponse",
                                   "attributes": {"chosenTutorId": other}})
    assert bad_target.status_code == 422

    done = client.post(f"/tasks/{task_id}/transactions", headers=headers,
                       json={"kind": "bestResponse",
                             "attributes": {"chosenTutorId": chosen}})
    assert done.status_code == 201
    assert done.json()["task"]["state"] == "completed"
    assert done.json()["task"]["selectedTutorId"] == chosen

    # terminal absorption through the API
    late = client.post(f"/tasks/{task_id}/transactions", headers=headers,
                       json={"kind": "cancel"})
    assert late.status_code == 409


def test_notifications_inbox_and_read_flow(client):
    headers, tutor_headers = setup_population(client)
    client.post("/tasks", headers=headers,
                json={"subject": SUBJECT, "preference": "indifferent"})
    tutor = next(iter(tutor_headers))
    inbox = client.get(f"/users/{tutor}/notifications", headers=tutor_headers[tutor])
    assert inbox.status_code == 200
    notes = inbox.json()
    assert len(notes) == 1
    assert notes[0]["kind"] == "tutoringRequested"
    assert notes[0]["read"] is False

    # foreign inbox is private
    assert client.get(f"/users/{tutor}/notifications", headers=headers).status_code == 403

    note_id = notes[0]["id"]
    marked = client.post(f"/users/{tutor}/notifications/{note_id}/read",
                         headers=tutor_headers[tutor])
    assert marked.status_code == 200 and marked.json()["read"] is True
    unread = client.get(f"/users/{tutor}/notifications", headers=tutor_headers[tutor],
                        params={"unreadOnly": True})
    assert unread.json() == []


MUTATING_ROUTES = [
    ("post", "/users", {"json": {}}),
    ("put", "/users/user0", {"json": {}}),
    ("post", "/users/user0/questionnaire", {"json": {"answers": [3] * 10}}),
    ("post", "/users/user0/notifications/n-x/read", {}),
    ("post", "/tasks", {"json": {"subject": SUBJECT, "preference": "similar"}}),
    ("post", "/tasks/task-1/transactions", {"json": {"kind": "volunteer"}}),
]


@pytest.mark.parametrize("method,path,kwargs", MUTATING_ROUTES)
def test_every_mutating_route_requires_a_token_before_domain_state(
        client, method, path, kwargs):
    log = client.service._log
    seq_before = log.last_seq
    response = getattr(client, method)(path, **kwargs)
    assert response.status_code == 401
    assert log.last_seq == seq_before  # nothing reached the store


# --- API path equals direct domain path ----------------------------------------------

def test_api_sequence_leaves_state_identical_to_direct_calls(tmp_path):
    # Same operations, same logical clocks: one through HTTP, one direct.
    api_log = EventLog(tmp_path / "api.jsonl", sync=False)
    api_service = TutoringService(api_log, clock=CounterClock())
    tokens = TokenStore(CREDENTIALS, lifetime_ms=10_000_000, clock=lambda: 0)
    client = TestClient(create_app(api_service, tokens))

    direct_log = EventLog(tmp_path / "direct.jsonl", sync=False)
    direct = TutoringService(direct_log, clock=CounterClock())

    h0 = login(client, "user0")
    h1 = login(client, "user1")
    h2 = login(client, "user2")

    client.post("/users", headers=h0, json=profile_body("user0", competence=0.2))
    client.post("/users", headers=h1, json=profile_body("user1", competence=0.8))
    client.post("/users", headers=h2, json=profile_body("user2", competence=0.9))
    client.post("/users/user0/questionnaire", headers=h0, json={"answers": [4, 2] + [3] * 8})
    task_id = client.post("/tasks", headers=h0, json={
        "subject": SUBJECT, "preference": "similar", "description": "limits"}).json()["id"]
    client.post(f"/tasks/{task_id}/transactions", headers=h1, json={"kind": "volunteer"})
    client.post(f"/tasks/{task_id}/transactions", headers=h0, json={
        "kind": "bestResponse", "attributes": {"chosenTutorId": "user1"}})
    inbox = client.get("/users/user0/notifications", headers=h0).json()
    client.post(f"/users/user0/notifications/{inbox[0]['id']}/read", headers=h0)

    def direct_profile(pid, competence):
        p = make_profile(pid, competences={SUBJECT: competence}, location=CAMPUS)
        return dataclasses.replace(p, display_name="Someone")

    direct.upsert_profile(direct_profile("user0", 0.2))
    direct.upsert_profile(direct_profile("user1", 0.8))
    direct.upsert_profile(direct_profile("user2", 0.9))
    direct.apply_questionnaire("user0", [4, 2] + [3] * 8)
    task, _ = direct.create_task("user0", SUBJECT, PersonalityPreference.SIMILAR, "limits")
    direct.submit_transaction(task.id, "user1", TransactionKind.VOLUNTEER)
    direct.submit_transaction(task.id, "user0", TransactionKind.BEST_RESPONSE,
                              {"chosenTutorId": "user1"})
    note = direct.notifications_for("user0")[0]
    direct.mark_notification_read("user0", note.id)

    assert state_fingerprint(api_service.state) == state_fingerprint(direct.state)
    assert state_fingerprint(replay(api_log.records())) == \
        state_fingerprint(replay(direct_log.records()))
