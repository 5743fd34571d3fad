"""The login pipeline: lockout, sweetword match, honeychecker, risk routing.

Every call appends exactly one terminal event, and every failure looks the
same to the caller.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass

from pwbench.defense.events import AuthEvent, EventKind, EventLog
from pwbench.defense.honeychecker import CheckerError, CheckResult
from pwbench.defense.lockout import LockoutTable
from pwbench.defense.mfa import MfaChallenge, MfaError, MfaProvider
from pwbench.defense.risk import RiskAction, RiskConfig, RiskContext, assess
from pwbench.defense.store import CredentialStore, StoreUnavailable
from pwbench.hashcore import bcrypt_check, bcrypt_hash


class AuthResponse(str, enum.Enum):
    OK = "Ok"
    MFA_REQUIRED = "MfaRequired"
    GENERIC_FAILURE = "GenericFailure"


@dataclass(frozen=True)
class AuthOutcome:
    response: AuthResponse
    events: tuple[AuthEvent, ...]
    # delivered out of band in a real system; never part of the response
    challenge: MfaChallenge | None = None

    def __iter__(self):
        return iter((self.response, list(self.events)))


_dummy_cache: dict[int, object] = {}


def _dummy_record(cost: int):
    rec = _dummy_cache.get(cost)
    if rec is None:
        rec = _dummy_cache[cost] = bcrypt_hash("pwbench-dummy-credential", cost=cost)
    return rec


class Authenticator:
    """Bundles the collaborators of :func:`authenticate` for repeated use."""

    def __init__(self, store: CredentialStore, checker, lockout: LockoutTable | None = None,
                 risk_config: RiskConfig | None = None, mfa: MfaProvider | None = None,
                 log: EventLog | None = None) -> None:
        self.store = store
        self.checker = checker
        self.lockout = lockout or LockoutTable()
        self.risk_config = risk_config or RiskConfig()
        self.mfa = mfa or MfaProvider()
        self.log = log if log is not None else EventLog()

    def login(self, user_id: str, password: str, context: RiskContext, now: float | None = None) -> AuthOutcome:
        return authenticate(self.store, self.checker, self.lockout, self.risk_config, user_id, password,
                            context, time.time() if now is None else now, mfa=self.mfa, log=self.log)

    def complete_mfa(self, challenge: MfaChallenge, code: str, now: float | None = None) -> AuthOutcome:
        return complete_mfa(self.mfa, self.lockout, challenge, code, time.time() if now is None else now,
                            log=self.log)


def authenticate(
    store: CredentialStore,
    checker,
    lockout_table: LockoutTable,
    risk_config: RiskConfig | None,
    user_id: str,
    password: str,
    context: RiskContext,
    now: float,
    *,
    mfa: MfaProvider | None = None,
    log: EventLog | None = None,
) -> AuthOutcome:
    log = log if log is not None else EventLog()
    fail = AuthResponse.GENERIC_FAILURE

    def done(response: AuthResponse, kind: EventKind, detail: str = "", challenge=None) -> AuthOutcome:
        return AuthOutcome(response, (log.emit(kind, user_id, now, detail),), challenge)

    if lockout_table.get(user_id, now).is_locked(now):
        return done(fail, EventKind.LOCKED, "attempt rejected while locked")

    try:
        record = store.get(user_id)
    except StoreUnavailable:
        return done(fail, EventKind.BLOCKED, "credential store unavailable")

    if record is None:
        dummy = _dummy_record(store.default_cost)
        for _ in range(store.default_k):
            bcrypt_check(password, dummy)
        return done(fail, EventKind.FAILURE, "unknown user")

    # check every sweetword so timing does not depend on which one matched
    matches = [i for i, rec in enumerate(record.sweetword_records) if bcrypt_check(password, rec)]
    if not matches:
        state = lockout_table.record(user_id, "failure", now)
        if state.is_locked(now):
            return done(fail, EventKind.LOCKED, f"locked after {state.consecutive_failures} failures")
        return done(fail, EventKind.FAILURE, "wrong password")

    try:
        result = checker.check(user_id, matches[0])
    except CheckerError as exc:
        return done(fail, EventKind.BLOCKED, f"honeychecker: {exc.code}")
    if result is CheckResult.DECOY:
        return done(fail, EventKind.HONEYWORD_ALERT, f"sweetword {matches[0]} is a honeyword")

    decision = assess(context, risk_config)
    if decision.action is RiskAction.PASSWORD_ONLY:
        lockout_table.record(user_id, "success", now)
        return done(AuthResponse.OK, EventKind.SUCCESS, f"risk={decision.score:g}")
    if decision.action is RiskAction.REQUIRE_MFA:
        provider = mfa or MfaProvider()
        challenge = provider.issue(user_id, now)
        return done(AuthResponse.MFA_REQUIRED, EventKind.MFA_ISSUED,
                    f"risk={decision.score:g} challenge={challenge.challenge_id}", challenge)
    return done(fail, EventKind.BLOCKED, f"risk={decision.score:g}")


def complete_mfa(
    mfa: MfaProvider,
    lockout_table: LockoutTable,
    challenge: MfaChallenge,
    code: str,
    now: float,
    *,
    log: EventLog | None = None,
) -> AuthOutcome:
    """Second step after ``MfaRequired``: Ok and a Success event, or GenericFailure and MfaFailed."""
    log = log if log is not None else EventLog()
    user = challenge.user_id
    try:
        ok = mfa.verify(challenge, code, now)
    except MfaError as exc:
        detail = type(exc).__name__
    else:
        if ok:
            lockout_table.record(user, "success", now)
            return AuthOutcome(AuthResponse.OK, (log.emit(EventKind.SUCCESS, user, now, "mfa verified"),))
        detail = f"wrong code, {challenge.attempts_remaining} attempts left"
    return AuthOutcome(AuthResponse.GENERIC_FAILURE, (log.emit(EventKind.MFA_FAILED, user, now, detail),))
