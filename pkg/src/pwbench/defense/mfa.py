"""Simulated one-time-code second factor (not RFC TOTP)."""

from __future__ import annotations

import hmac
import secrets
import threading
from dataclasses import dataclass


class MfaError(Exception):
    pass


class ChallengeExpired(MfaError):
    pass


class AttemptsExhausted(MfaError):
    pass


class UnknownChallenge(MfaError):
    pass


@dataclass
class MfaChallenge:
    challenge_id: str
    user_id: str
    code: str
    issued_at: float
    expires_at: float
    attempts_remaining: int = 3


class MfaProvider:
    def __init__(self, ttl: float = 300.0, max_attempts: int = 3, rng: secrets.SystemRandom | None = None) -> None:
        if not 1 <= max_attempts <= 3:
            raise ValueError("max_attempts must be 1..3")
        self.ttl = ttl
        self.max_attempts = max_attempts
        self._rng = rng or secrets.SystemRandom()
        self._challenges: dict[str, MfaChallenge] = {}
        self._lock = threading.Lock()

    def issue(self, user_id: str, now: float) -> MfaChallenge:
        code = f"{self._rng.randrange(1_000_000):06d}"
        ch = MfaChallenge(secrets.token_hex(8), user_id, code, now, now + self.ttl, self.max_attempts)
        with self._lock:
            self._challenges[ch.challenge_id] = ch
        return ch

    def get(self, challenge_id: str) -> MfaChallenge:
        with self._lock:
            try:
                return self._challenges[challenge_id]
            except KeyError:
                raise UnknownChallenge(challenge_id) from None

    def verify(self, challenge: "MfaChallenge | str", submitted_code: str, now: float) -> bool:
        """True on a matching code before expiry; wrong codes burn an attempt.

        Raises ``ChallengeExpired`` past the deadline and ``AttemptsExhausted``
        once no attempts remain.
        """
        ch = self.get(challenge) if isinstance(challenge, str) else challenge
        with self._lock:
            if now >= ch.expires_at:
                raise ChallengeExpired(ch.challenge_id)
            if ch.attempts_remaining <= 0:
                raise AttemptsExhausted(ch.challenge_id)
            if hmac.compare_digest(ch.code.encode(), str(submitted_code).encode()):
                ch.attempts_remaining = 0
                self._challenges.pop(ch.challenge_id, None)
                return True
            ch.attempts_remaining -= 1
            return False


def issue_mfa(provider: MfaProvider, user_id: str, now: float) -> MfaChallenge:
    return provider.issue(user_id, now)


def verify_mfa(provider: MfaProvider, challenge: MfaChallenge, submitted_code: str, now: float) -> bool:
    return provider.verify(challenge, submitted_code, now)
