"""Labelled password datasets and hashfile generation."""

from __future__ import annotations

import enum
import logging
import os
import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from pwbench.attack.targets import write_hashfile
from pwbench.defense.policy import Complexity
from pwbench.hashcore import Algorithm, BcryptRecord, bcrypt_hash, hash_message

log = logging.getLogger(__name__)


class Randomness(str, enum.Enum):
    DICTIONARY = "Dictionary"
    PSEUDO_RANDOM = "PseudoRandom"


class DatasetError(ValueError):
    def __init__(self, message: str, lineno: int | None = None) -> None:
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)
        self.lineno = lineno


@dataclass(frozen=True)
class DatasetEntry:
    password: str
    complexity: Complexity
    randomness: Randomness
    rationale: str = ""

    def __post_init__(self) -> None:
        if not self.password:
            raise DatasetError("empty password")

    def to_line(self) -> str:
        return "\t".join((self.password, self.complexity.value, self.randomness.value, self.rationale))


@dataclass(frozen=True)
class Dataset:
    entries: tuple[DatasetEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def select(self, passwords: Iterable[str]) -> "Dataset":
        by_pw = {e.password: e for e in self.entries}
        missing = [p for p in passwords if p not in by_pw]
        if missing:
            raise DatasetError(f"not in dataset: {', '.join(missing)}")
        return Dataset(tuple(by_pw[p] for p in passwords))

    def dumps(self) -> str:
        return "# password\tcomplexity\trandomness\trationale\n" + "".join(e.to_line() + "\n" for e in self.entries)


def _label(enum_cls, text: str, lineno: int):
    try:
        return enum_cls(text.strip())
    except ValueError:
        allowed = ", ".join(m.value for m in enum_cls)
        raise DatasetError(f"unknown label {text.strip()!r} (expected one of {allowed})", lineno) from None


def parse_dataset(text: str) -> Dataset:
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) < 3:
            raise DatasetError(f"expected 4 tab-separated fields, got {len(fields)}", lineno)
        password = fields[0]
        if not password:
            raise DatasetError("empty password", lineno)
        rationale = "\t".join(fields[3:])
        entries.append(DatasetEntry(password, _label(Complexity, fields[1], lineno),
                                    _label(Randomness, fields[2], lineno), rationale))
    if not entries:
        log.warning("dataset is empty")
    return Dataset(tuple(entries))


def load_dataset(source: "str | os.PathLike") -> Dataset:
    """Tab-separated ``password, complexity, randomness, rationale`` rows; ``#`` lines are comments."""
    return parse_dataset(Path(source).read_text(encoding="utf-8"))


def builtin_reference_set() -> Dataset:
    return parse_dataset(resources.files("pwbench.data").joinpath("reference_set.tsv").read_text(encoding="utf-8"))


def deterministic_salts(seed: int, count: int) -> list[bytes]:
    rng = random.Random(f"pwbench-salts:{seed}")
    return [rng.randbytes(16) for _ in range(count)]


def hash_entry(alg: Algorithm, password: str, cost: int, salt: bytes | None = None):
    if alg is Algorithm.BCRYPT:
        return bcrypt_hash(password, salt=salt, cost=cost)
    return hash_message(alg, password)


def emit_hashfiles(
    dataset: Dataset,
    algorithms: Iterable["Algorithm | str"],
    cost: int = 10,
    seed: int = 0,
    output_dir: "str | os.PathLike" = ".",
) -> dict[str, Path]:
    """One hashfile per algorithm plus ``answer_key.tsv``; keys are algorithm names and ``"answer_key"``."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    salts = deterministic_salts(seed, len(dataset))
    paths: dict[str, Path] = {}
    key_lines = ["# algorithm\tid\thash\tpassword"]
    for alg in map(Algorithm.parse, algorithms):
        hashes = []
        for i, entry in enumerate(dataset.entries):
            h = hash_entry(alg, entry.password, cost, salts[i])
            hashes.append(h)
            text = h.text if isinstance(h, BcryptRecord) else h.hex
            key_lines.append(f"{alg.value}\t{i + 1}\t{text}\t{entry.password}")
        paths[alg.value] = write_hashfile(out / f"{alg.value}.hashes", hashes, header=f"{alg.value} targets")
    key = out / "answer_key.tsv"
    key.write_text("\n".join(key_lines) + "\n", encoding="utf-8")
    paths["answer_key"] = key
    return paths


def read_answer_key(path: "str | os.PathLike") -> dict[tuple[str, str], tuple[int, str]]:
    """``(algorithm, hash text) -> (id, password)``."""
    key = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        alg, pid, text, pw = line.split("\t", 3)
        key[(alg, text)] = (int(pid), pw)
    return key
