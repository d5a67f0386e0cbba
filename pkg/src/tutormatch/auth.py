"""Local credentials file and opaque bearer-token sessions.

Stands in for an external identity provider: a JSON file maps user ids to
shared secrets, login mints an opaque token with a fixed lifetime, and
expired or unknown tokens authenticate nothing.
"""

from __future__ import annotations

import json
import secrets
from pathlib import Path
from typing import Callable

from .service import now_millis

DEFAULT_TOKEN_LIFETIME_MS = 24 * 60 * 60 * 1000


class AuthError(Exception):
    pass


def load_credentials(path: str | Path) -> dict[str, str]:
    """Read a credentials file: a JSON object mapping userId to secret."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(doc, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in doc.items()):
        raise ValueError(f"{path}: credentials must be a JSON object of userId: secret")
    return doc


class TokenStore:
    def __init__(self, credentials: dict[str, str],
                 lifetime_ms: int = DEFAULT_TOKEN_LIFETIME_MS,
                 clock: Callable[[], int] = now_millis):
        self._credentials = dict(credentials)
        self._lifetime_ms = lifetime_ms
        self._clock = clock
        self._sessions: dict[str, tuple[str, int]] = {}  # token -> (userId, expiresAt)

    def login(self, user_id: str, secret: str) -> tuple[str, int]:
        """Issue a fresh token; returns (token, expiresAt epoch ms)."""
        if self._credentials.get(user_id) != secret or not secret:
            raise AuthError("bad credentials")
        token = secrets.token_urlsafe(32)
        expires_at = self._clock() + self._lifetime_ms
        self._sessions[token] = (user_id, expires_at)
        return token, expires_at

    def authenticate(self, token: str) -> str:
        """Resolve a token to its user id, or fail for unknown/expired tokens."""
        session = self._sessions.get(token)
        if session is None:
            raise AuthError("unknown token")
        user_id, expires_at = session
        if self._clock() >= expires_at:
            self._sessions.pop(token, None)
            raise AuthError("expired token")
        return user_id
