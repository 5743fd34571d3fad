"""Consecutive-failure account lockout with timed automatic unlock."""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace


@dataclass(frozen=True, slots=True)
class LockoutConfig:
    threshold: int = 5
    lock_duration: float = 15 * 60.0
    # failures older than this no longer count toward the threshold
    counter_window: float = 30 * 60.0

    def __post_init__(self) -> None:
        if self.threshold < 1:
            raise ValueError("threshold must be >= 1")


@dataclass(frozen=True, slots=True)
class LockoutState:
    user_id: str
    consecutive_failures: int = 0
    locked_until: float | None = None
    last_failure: float | None = None
    config: LockoutConfig = LockoutConfig()

    def is_locked(self, now: float) -> bool:
        return self.locked_until is not None and now < self.locked_until


def refresh(state: LockoutState, now: float) -> LockoutState:
    """Apply expiry: an elapsed lock or a stale failure streak resets the counter."""
    if state.locked_until is not None and now >= state.locked_until:
        return replace(state, consecutive_failures=0, locked_until=None, last_failure=None)
    if (
        state.locked_until is None
        and state.last_failure is not None
        and now - state.last_failure > state.config.counter_window
    ):
        return replace(state, consecutive_failures=0, last_failure=None)
    return state


def record_attempt(state: LockoutState, outcome: str, now: float) -> LockoutState:
    """Return the state after one attempt; ``outcome`` is ``"success"`` or ``"failure"``."""
    state = refresh(state, now)
    if state.is_locked(now):
        return state
    if outcome == "success":
        return replace(state, consecutive_failures=0, locked_until=None, last_failure=None)
    if outcome != "failure":
        raise ValueError(f"outcome must be 'success' or 'failure', got {outcome!r}")
    failures = state.consecutive_failures + 1
    locked_until = now + state.config.lock_duration if failures >= state.config.threshold else None
    return replace(state, consecutive_failures=failures, locked_until=locked_until, last_failure=now)


class LockoutTable:
    """Per-user lockout states; mutation is serialized per table."""

    def __init__(self, config: LockoutConfig | None = None) -> None:
        self.config = config or LockoutConfig()
        self._states: dict[str, LockoutState] = {}
        self._lock = threading.Lock()

    def get(self, user_id: str, now: float) -> LockoutState:
        with self._lock:
            state = self._states.get(user_id) or LockoutState(user_id, config=self.config)
            state = refresh(state, now)
            self._states[user_id] = state
            return state

    def record(self, user_id: str, outcome: str, now: float) -> LockoutState:
        with self._lock:
            state = self._states.get(user_id) or LockoutState(user_id, config=self.config)
            state = record_attempt(state, outcome, now)
            self._states[user_id] = state
            return state
