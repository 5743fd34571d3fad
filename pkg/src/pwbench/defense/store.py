"""Salted sweetword storage and user registration."""

from __future__ import annotations

import os
import random
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from pwbench.defense.honeychecker import seal_index, valid_user_id
from pwbench.defense.honeywords import ALL_STRATEGIES, Strategy, make_sweetwords
from pwbench.defense.policy import PasswordPolicy, evaluate_policy
from pwbench.hashcore import BcryptRecord, bcrypt_hash, format_bcrypt, parse_bcrypt

DEFAULT_K = 8
MIN_K = 2
MAX_K = 64
DEFAULT_COST = 10


class StoreError(Exception):
    pass


class DuplicateUser(StoreError):
    pass


class StoreUnavailable(StoreError):
    pass


class PolicyRejected(StoreError):
    def __init__(self, reasons: tuple[str, ...]) -> None:
        super().__init__("password rejected: " + ", ".join(reasons))
        self.reasons = reasons


@dataclass(frozen=True)
class CredentialRecord:
    user_id: str
    sweetword_records: tuple[BcryptRecord, ...]
    created_at: float = 0.0

    def __post_init__(self) -> None:
        if not valid_user_id(self.user_id) or "\t" in self.user_id:
            raise StoreError(f"invalid user id {self.user_id!r}")
        if not MIN_K <= len(self.sweetword_records) <= MAX_K:
            raise StoreError(f"k must be {MIN_K}..{MAX_K}, got {len(self.sweetword_records)}")
        if len({r.cost for r in self.sweetword_records}) != 1:
            raise StoreError("all sweetwords must share one cost")

    @property
    def k(self) -> int:
        return len(self.sweetword_records)

    @property
    def cost(self) -> int:
        return self.sweetword_records[0].cost

    def to_line(self) -> str:
        return "\t".join([self.user_id, str(self.k), str(self.cost), *map(format_bcrypt, self.sweetword_records)])

    @classmethod
    def from_line(cls, line: str) -> "CredentialRecord":
        parts = line.rstrip("\n").split("\t")
        if len(parts) < 3 + MIN_K:
            raise StoreError("truncated credential line")
        user, k, cost, *records = parts
        if not k.isdigit() or int(k) != len(records):
            raise StoreError(f"k field {k!r} does not match {len(records)} records")
        parsed = tuple(parse_bcrypt(r) for r in records)
        if not cost.isdigit() or any(r.cost != int(cost) for r in parsed):
            raise StoreError("cost field does not match records")
        return cls(user, parsed)


class CredentialStore:
    """In-memory credential table with line-delimited persistence.

    Setting ``unavailable`` makes every access raise :class:`StoreUnavailable`,
    for fault-injection.
    """

    def __init__(self, records: Iterable[CredentialRecord] = (), default_k: int = DEFAULT_K,
                 default_cost: int = DEFAULT_COST) -> None:
        self._records: dict[str, CredentialRecord] = {}
        self._lock = threading.Lock()
        self.unavailable = False
        self.default_k = default_k
        self.default_cost = default_cost
        for r in records:
            self.add(r)

    def _guard(self) -> None:
        if self.unavailable:
            raise StoreUnavailable("credential store unavailable")

    def add(self, record: CredentialRecord) -> None:
        self._guard()
        with self._lock:
            if record.user_id in self._records:
                raise DuplicateUser(record.user_id)
            self._records[record.user_id] = record

    def get(self, user_id: str) -> CredentialRecord | None:
        self._guard()
        with self._lock:
            return self._records.get(user_id)

    def __contains__(self, user_id: str) -> bool:
        return self.get(user_id) is not None

    def __len__(self) -> int:
        with self._lock:
            return len(self._records)

    def dumps(self) -> str:
        self._guard()
        with self._lock:
            return "".join(r.to_line() + "\n" for r in self._records.values())

    def save(self, path: "str | os.PathLike") -> Path:
        path = Path(path)
        path.write_text(self.dumps(), encoding="utf-8")
        return path

    @classmethod
    def loads(cls, text: str, **kwargs) -> "CredentialStore":
        recs = []
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                recs.append(CredentialRecord.from_line(line))
            except ValueError as exc:
                raise StoreError(f"line {lineno}: {exc}") from exc
        return cls(recs, **kwargs)

    @classmethod
    def load(cls, path: "str | os.PathLike", **kwargs) -> "CredentialStore":
        return cls.loads(Path(path).read_text(encoding="utf-8"), **kwargs)


def register_user(
    store: CredentialStore,
    checker,
    user_id: str,
    password: str,
    k: int | None = None,
    cost: int | None = None,
    seed: "int | random.Random | None" = None,
    *,
    policy: PasswordPolicy | None = None,
    strategies: Iterable["Strategy | str"] = ALL_STRATEGIES,
    now: float | None = None,
) -> CredentialRecord:
    """Hash the real password and ``k - 1`` honeywords with fresh salts; seal the real index at the checker."""
    k = store.default_k if k is None else k
    cost = store.default_cost if cost is None else cost
    if not MIN_K <= k <= MAX_K:
        raise StoreError(f"k must be {MIN_K}..{MAX_K}")
    report = evaluate_policy(password, policy)
    if not report.accepted:
        raise PolicyRejected(report.reasons)
    if store.get(user_id) is not None:
        raise DuplicateUser(user_id)
    words, real = make_sweetwords(password, k, strategies, seed)
    records = tuple(bcrypt_hash(w, cost=cost) for w in words)
    record = CredentialRecord(user_id, records, time.time() if now is None else now)
    checker.set(user_id, seal_index(checker.public_key, user_id, real, k))
    store.add(record)
    return record
