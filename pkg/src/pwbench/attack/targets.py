"""Target sets, hashfiles and the potfile crack journal."""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Union

from pwbench.hashcore import Algorithm, BcryptRecord, Digest, format_bcrypt, parse_bcrypt

Target = Union[Digest, BcryptRecord]


class TargetError(ValueError):
    pass


def target_text(target: Target) -> str:
    return format_bcrypt(target) if isinstance(target, BcryptRecord) else target.hex


def target_algorithm(target: Target) -> Algorithm:
    return Algorithm.BCRYPT if isinstance(target, BcryptRecord) else target.algorithm


def parse_target(text: str, algorithm: "Algorithm | str | None" = None) -> Target:
    text = text.strip()
    if text.startswith("$"):
        return parse_bcrypt(text)
    return Digest.from_hex(text.lower(), algorithm)


@dataclass(frozen=True)
class TargetSet:
    """Immutable, algorithm-homogeneous set of targets."""

    algorithm: Algorithm
    items: tuple[Target, ...]

    @classmethod
    def of(cls, targets: Iterable["Target | str"], algorithm: "Algorithm | str | None" = None) -> "TargetSet":
        alg = Algorithm.parse(algorithm) if algorithm is not None else None
        hint = alg if alg is not Algorithm.BCRYPT else None
        items: dict[Target, None] = {}
        for t in targets:
            if isinstance(t, str):
                t = parse_target(t, hint)
            items.setdefault(t, None)
        if not items:
            raise TargetError("no targets")
        algs = {target_algorithm(t) for t in items}
        if len(algs) != 1:
            raise TargetError(f"targets mix algorithms: {sorted(a.value for a in algs)}")
        found = algs.pop()
        if alg is not None and alg is not found:
            raise TargetError(f"targets are {found.value}, not {alg.value}")
        return cls(found, tuple(items))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def sorted_blob(self) -> bytes:
        """Sorted concatenated digest bytes for the compiled lookup."""
        return b"".join(sorted(t.value for t in self.items))  # type: ignore[union-attr]

    def by_value(self) -> dict[bytes, Digest]:
        return {t.value: t for t in self.items}  # type: ignore[union-attr]

    def without(self, done: Iterable[Target]) -> "TargetSet | None":
        done = set(done)
        rest = tuple(t for t in self.items if t not in done)
        return TargetSet(self.algorithm, rest) if rest else None


def read_hashfile(path: "str | os.PathLike", algorithm: "Algorithm | str | None" = None) -> TargetSet:
    """One digest or bcrypt record per line; blank lines and ``#`` comments skipped."""
    alg = Algorithm.parse(algorithm) if algorithm is not None else None
    hint = alg if alg is not Algorithm.BCRYPT else None
    items = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                items.append(parse_target(line, hint))
            except ValueError as exc:
                raise TargetError(f"{path}:{lineno}: {exc}") from exc
    return TargetSet.of(items, alg)


def write_hashfile(path: "str | os.PathLike", targets: Iterable[Target], header: str | None = None) -> Path:
    path = Path(path)
    lines = [f"# {header}"] if header else []
    lines.extend(target_text(t) for t in targets)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


class Potfile:
    """Append-only ``target<TAB>plaintext`` journal.

    Each crack is written and flushed as a single line so a killed run loses
    at most the line being written.
    """

    def __init__(self, path: "str | os.PathLike") -> None:
        self.path = Path(path)
        self._lock = threading.Lock()

    def load(self) -> dict[str, str]:
        found: dict[str, str] = {}
        if not self.path.exists():
            return found
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if "\t" not in line:
                    continue
                key, plain = line.split("\t", 1)
                found[key] = plain
        return found

    def append(self, target: Target, plaintext: str) -> None:
        line = f"{target_text(target)}\t{plaintext}\n"
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line)
                fh.flush()
                os.fsync(fh.fileno())

    def cracked_in(self, targets: TargetSet) -> dict[Target, str]:
        known = self.load()
        return {t: known[target_text(t)] for t in targets if target_text(t) in known}
