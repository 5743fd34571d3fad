"""Experiment plans: an INI file with one ``[experiment]`` section and ``[attack:<name>]`` sections.

Paths are resolved relative to the plan file. ``builtin:common`` names the
bundled common-password list and ``builtin:reference`` the bundled dataset.
"""

from __future__ import annotations

import configparser
import enum
import logging
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from pwbench.attack.charset import Charset, LengthRange
from pwbench.attack.rules import RuleSet
from pwbench.hashcore import Algorithm
from pwbench.hashcore.bcrypt import check_cost

log = logging.getLogger(__name__)

DEFAULT_FAST_BUDGET = 60.0
DEFAULT_SLOW_BUDGET = 600.0


class PlanError(ValueError):
    pass


class AttackKind(str, enum.Enum):
    BRUTE = "brute"
    DICT = "dict"


class EnumerationOrder(str, enum.Enum):
    SYSTEMATIC = "systematic"
    # accepted for plan compatibility; runs the systematic order
    HEURISTIC = "heuristic"


def builtin_path(name: str) -> Path:
    files = {"common": "common_passwords.txt", "reference": "reference_set.tsv"}
    if name not in files:
        raise PlanError(f"unknown builtin {name!r}")
    return Path(str(resources.files("pwbench.data").joinpath(files[name])))


def _resolve_path(base: Path, value: str) -> Path:
    if value.startswith("builtin:"):
        return builtin_path(value.split(":", 1)[1])
    p = Path(value).expanduser()
    return p if p.is_absolute() else (base / p)


def _algorithms(text: str) -> tuple[Algorithm, ...]:
    try:
        algs = tuple(dict.fromkeys(Algorithm.parse(a.strip()) for a in text.split(",") if a.strip()))
    except ValueError as exc:
        raise PlanError(str(exc)) from exc
    if not algs:
        raise PlanError("no algorithms listed")
    return algs


@dataclass(frozen=True)
class AttackSpec:
    name: str
    kind: AttackKind
    label: str
    algorithms: tuple[Algorithm, ...]
    budget_fast: float = DEFAULT_FAST_BUDGET
    budget_slow: float = DEFAULT_SLOW_BUDGET
    workers: int = 1
    charset: str = "paper69"
    lengths: LengthRange = LengthRange(1, 4)
    wordlist: Path | None = None
    rules: str = "identity"

    def budget(self, alg: Algorithm) -> float:
        return self.budget_slow if alg is Algorithm.BCRYPT else self.budget_fast

    def descriptor(self) -> str:
        if self.kind is AttackKind.BRUTE:
            return f"brute charset={self.charset} lengths={self.lengths.min_len}-{self.lengths.max_len}"
        return f"dict wordlist={self.wordlist.name if self.wordlist else '-'} rules={self.rules}"


@dataclass(frozen=True)
class ExperimentPlan:
    dataset: Path
    algorithms: tuple[Algorithm, ...]
    attacks: tuple[AttackSpec, ...]
    output_dir: Path
    bcrypt_cost: int = 10
    seed: int = 0
    checkpoint_every: float = 5.0
    order: EnumerationOrder = EnumerationOrder.SYSTEMATIC
    subset: tuple[str, ...] = ()
    source: Path | None = field(default=None, compare=False)

    def pairs(self) -> list[tuple[Algorithm, AttackSpec]]:
        return [(alg, atk) for alg in self.algorithms for atk in self.attacks if alg in atk.algorithms]


def parse_plan(text: str, base_dir: "str | os.PathLike" = ".", source: Path | None = None) -> ExperimentPlan:
    base = Path(base_dir)
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";",))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise PlanError(f"plan does not parse: {exc}") from exc
    if not cp.has_section("experiment"):
        raise PlanError("plan needs an [experiment] section")
    ex = cp["experiment"]
    try:
        algorithms = _algorithms(ex.get("algorithms", "md5, sha256, bcrypt"))
        cost = check_cost(ex.getint("bcrypt_cost", 10))
        seed = ex.getint("seed", 0)
        cadence = ex.getfloat("checkpoint_every", 5.0)
        order = EnumerationOrder(ex.get("order", "systematic"))
    except ValueError as exc:
        raise PlanError(f"[experiment]: {exc}") from exc
    if order is EnumerationOrder.HEURISTIC:
        log.warning("heuristic enumeration order is not implemented; using systematic order")
    dataset = _resolve_path(base, ex.get("dataset", "builtin:reference"))
    output_dir = _resolve_path(base, ex.get("output_dir", "results"))
    subset = tuple(s for s in (x.strip() for x in ex.get("subset", "").split("\n")) if s)

    attacks = []
    for section in cp.sections():
        if not section.startswith("attack:"):
            continue
        name = section.split(":", 1)[1].strip()
        sec = cp[section]
        try:
            kind = AttackKind(sec.get("kind", "brute"))
            atk_algs = _algorithms(sec["algorithms"]) if "algorithms" in sec else algorithms
            spec = AttackSpec(
                name=name,
                kind=kind,
                label=sec.get("label", name),
                algorithms=atk_algs,
                budget_fast=sec.getfloat("budget_fast", DEFAULT_FAST_BUDGET),
                budget_slow=sec.getfloat("budget_slow", DEFAULT_SLOW_BUDGET),
                workers=sec.getint("workers", 1),
                charset=sec.get("charset", "paper69"),
                lengths=LengthRange(sec.getint("min_length", 1), sec.getint("max_length", 4)),
                wordlist=_resolve_path(base, sec["wordlist"]) if "wordlist" in sec else None,
                rules=sec.get("rules", "identity"),
            )
        except (ValueError, KeyError) as exc:
            raise PlanError(f"[{section}]: {exc}") from exc
        if spec.workers < 1:
            raise PlanError(f"[{section}]: workers must be >= 1")
        if spec.kind is AttackKind.BRUTE:
            try:
                Charset.parse(spec.charset)
            except ValueError as exc:
                raise PlanError(f"[{section}]: {exc}") from exc
        else:
            if spec.wordlist is None:
                raise PlanError(f"[{section}]: dictionary attacks need a wordlist")
            if not os.access(spec.wordlist, os.R_OK):
                raise PlanError(f"[{section}]: wordlist {spec.wordlist} is not readable")
            try:
                RuleSet.parse(spec.rules)
            except ValueError as exc:
                raise PlanError(f"[{section}]: {exc}") from exc
        attacks.append(spec)
    if not attacks:
        raise PlanError("plan has no [attack:<name>] sections")
    if not os.access(dataset, os.R_OK):
        raise PlanError(f"dataset {dataset} is not readable")
    plan = ExperimentPlan(dataset, algorithms, tuple(attacks), output_dir, cost, seed, cadence, order, subset, source)
    if not plan.pairs():
        raise PlanError("no algorithm x attack pair to run")
    return plan


def load_plan(path: "str | os.PathLike") -> ExperimentPlan:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise PlanError(f"cannot read plan {path}: {exc}") from exc
    return parse_plan(text, path.parent, path)


def desk_plan_text() -> str:
    return resources.files("pwbench.data").joinpath("desk_plan.ini").read_text(encoding="utf-8")
