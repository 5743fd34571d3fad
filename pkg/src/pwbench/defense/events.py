"""Authentication events and an append-only event log."""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path


class EventKind(str, enum.Enum):
    SUCCESS = "Success"
    FAILURE = "Failure"
    HONEYWORD_ALERT = "HoneywordAlert"
    LOCKED = "Locked"
    MFA_ISSUED = "MfaIssued"
    MFA_FAILED = "MfaFailed"
    BLOCKED = "Blocked"


@dataclass(frozen=True, slots=True)
class AuthEvent:
    kind: EventKind
    user_id: str
    timestamp: float
    detail: str = ""

    def to_line(self) -> str:
        stamp = datetime.fromtimestamp(self.timestamp, tz=timezone.utc).isoformat()
        detail = self.detail.replace("\t", " ").replace("\n", " ")
        return f"{stamp}\t{self.kind.value}\t{self.user_id}\t{detail}"

    @classmethod
    def from_line(cls, line: str) -> "AuthEvent":
        stamp, kind, user, detail = line.rstrip("\n").split("\t", 3)
        return cls(EventKind(kind), user, datetime.fromisoformat(stamp).timestamp(), detail)


class EventLog:
    """Thread-safe append-only log, optionally mirrored to a file one line per event."""

    def __init__(self, path: "str | Path | None" = None) -> None:
        self._events: list[AuthEvent] = []
        self._lock = threading.Lock()
        self.path = Path(path) if path is not None else None

    def append(self, event: AuthEvent) -> AuthEvent:
        with self._lock:
            self._events.append(event)
            if self.path is not None:
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(event.to_line() + "\n")
        return event

    def emit(self, kind: EventKind, user_id: str, now: float, detail: str = "") -> AuthEvent:
        return self.append(AuthEvent(kind, user_id, now, detail))

    def snapshot(self) -> tuple[AuthEvent, ...]:
        with self._lock:
            return tuple(self._events)

    def of_kind(self, kind: EventKind) -> list[AuthEvent]:
        return [e for e in self.snapshot() if e.kind is kind]

    def __len__(self) -> int:
        with self._lock:
            return len(self._events)
