"""Run every algorithm x attack cell of a plan, journaling as it goes.

The journal (``records.jsonl``) gets one JSON object per line: a ``hit`` the
moment a target is cracked, then a ``cell`` summary and one ``run`` record per
password when a cell finishes. Cracks also go to a per-cell potfile. A resumed
run skips finished cells and, inside an unfinished cell, only attacks targets
that are not yet in its potfile.
"""

from __future__ import annotations

import enum
import json
import logging
import os
import statistics
import threading
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from filelock import FileLock, Timeout

from pwbench.attack.charset import Charset, keyspace_size
from pwbench.attack.engine import AttackReport, brute_force, dictionary_attack
from pwbench.attack.rules import RuleSet
from pwbench.attack.targets import Potfile, TargetSet, read_hashfile, target_text
from pwbench.bench.dataset import Dataset, emit_hashfiles, load_dataset, read_answer_key
from pwbench.bench.plan import AttackKind, AttackSpec, ExperimentPlan
from pwbench.hashcore import Algorithm

log = logging.getLogger(__name__)

JOURNAL = "records.jsonl"
TRAILING_CHECKPOINTS = 5


class ExperimentError(RuntimeError):
    pass


class ExperimentLocked(ExperimentError):
    pass


class Outcome(str, enum.Enum):
    CRACKED = "cracked"
    NOT_CRACKED = "not_cracked"
    ESTIMATED = "estimated"


@dataclass
class RunRecord:
    password_id: int
    password: str
    algorithm: str
    attack: str
    label: str
    kind: str
    outcome: Outcome
    seconds: float
    budget: float
    projected_seconds: float | None = None
    rate_basis: float | None = None
    checkpoint_rates: list[tuple[float, float]] = field(default_factory=list)

    def to_json(self) -> dict:
        d = asdict(self)
        d["type"] = "run"
        d["outcome"] = self.outcome.value
        return d

    @classmethod
    def from_json(cls, d: dict) -> "RunRecord":
        d = {k: v for k, v in d.items() if k != "type"}
        d["outcome"] = Outcome(d["outcome"])
        d["checkpoint_rates"] = [tuple(x) for x in d.get("checkpoint_rates", [])]
        return cls(**d)


class Journal:
    def __init__(self, path: Path) -> None:
        self.path = path
        self._lock = threading.Lock()

    def append(self, obj: dict) -> None:
        line = json.dumps(obj, sort_keys=True) + "\n"
        with self._lock, open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line)
            fh.flush()
            os.fsync(fh.fileno())

    def entries(self) -> list[dict]:
        if not self.path.exists():
            return []
        out = []
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                try:
                    out.append(json.loads(line))
                except json.JSONDecodeError:
                    # torn final line from a killed run
                    continue
        return out


def load_records(path: "str | os.PathLike") -> list[RunRecord]:
    return [RunRecord.from_json(e) for e in Journal(Path(path)).entries() if e.get("type") == "run"]


def load_cells(path: "str | os.PathLike") -> list[dict]:
    return [e for e in Journal(Path(path)).entries() if e.get("type") == "cell"]


def projection_rate(checkpoint_rates: list[tuple[float, float]], fallback: float) -> float:
    """Mean of the trailing five checkpoint rates, or ``fallback`` when there are none."""
    tail = [r for _, r in checkpoint_rates[-TRAILING_CHECKPOINTS:] if r > 0]
    return statistics.fmean(tail) if tail else fallback


def _cell_key(alg: Algorithm, atk: AttackSpec) -> str:
    return f"{alg.value}:{atk.name}"


def _run_cell(alg: Algorithm, atk: AttackSpec, targets: TargetSet, plan: ExperimentPlan,
              potfile: Potfile, journal: Journal, stop: threading.Event | None) -> AttackReport:
    key = _cell_key(alg, atk)
    start = time.perf_counter()

    def on_crack(target, plain):
        potfile.append(target, plain)
        journal.append({"type": "hit", "cell": key, "target": target_text(target),
                        "elapsed": time.perf_counter() - start})

    common = dict(workers=atk.workers, budget=atk.budget(alg), checkpoint_every=plan.checkpoint_every,
                  on_crack=on_crack, stop=stop, source=key)
    if atk.kind is AttackKind.BRUTE:
        report = brute_force(targets, alg, atk.charset, atk.lengths, **common)
    else:
        report = dictionary_attack(targets, alg, atk.wordlist, RuleSet.parse(atk.rules), **common)
    return report


def run_experiment(plan: ExperimentPlan, *, stop: threading.Event | None = None,
                   progress=None) -> list[RunRecord]:
    """Execute every pair in ``plan`` and return one record per password per pair."""
    out = plan.output_dir
    out.mkdir(parents=True, exist_ok=True)
    lock = FileLock(str(out / ".pwbench.lock"))
    try:
        lock.acquire(timeout=0)
    except Timeout:
        raise ExperimentLocked(f"another experiment is running in {out}") from None
    try:
        return _run_locked(plan, stop, progress)
    finally:
        lock.release()


def _run_locked(plan: ExperimentPlan, stop, progress) -> list[RunRecord]:
    out = plan.output_dir
    try:
        dataset: Dataset = load_dataset(plan.dataset)
        if plan.subset:
            dataset = dataset.select(plan.subset)
    except (OSError, ValueError) as exc:
        raise ExperimentError(f"cannot load dataset: {exc}") from exc
    if not len(dataset):
        raise ExperimentError("dataset is empty")
    files = emit_hashfiles(dataset, plan.algorithms, plan.bcrypt_cost, plan.seed, out / "hashes")
    answers = read_answer_key(files["answer_key"])
    journal = Journal(out / JOURNAL)
    done_cells = {e["cell"] for e in journal.entries() if e.get("type") == "cell"}
    hit_times = {(e["cell"], e["target"]): e["elapsed"] for e in journal.entries() if e.get("type") == "hit"}
    records = [r for r in load_records(out / JOURNAL)]

    for alg, atk in plan.pairs():
        key = _cell_key(alg, atk)
        if key in done_cells:
            continue
        if stop is not None and stop.is_set():
            break
        all_targets = read_hashfile(files[alg.value], alg)
        potfile = Potfile(out / f"{alg.value}-{atk.name}.pot")
        already = potfile.cracked_in(all_targets)
        remaining = all_targets.without(already)
        if progress:
            progress(f"{key}: {len(all_targets) - len(already)} targets, budget {atk.budget(alg):g}s")
        report = (_run_cell(alg, atk, remaining, plan, potfile, journal, stop)
                  if remaining is not None else AttackReport(source=key, exhausted=True))
        if stop is not None and stop.is_set() and remaining is not None and not report.exhausted \
                and len(report.cracked) < len(remaining):
            break  # interrupted: leave the cell unfinished for resume
        for ev in report.events:
            hit_times[(key, target_text(ev.target))] = ev.elapsed
        rate = report.rate
        basis = projection_rate(report.checkpoint_rates, rate)
        if atk.kind is AttackKind.BRUTE:
            space = keyspace_size(Charset.parse(atk.charset), atk.lengths)
            left = max(space - report.guesses, 0)
        else:
            left = 0
        journal.append({"type": "cell", "cell": key, "algorithm": alg.value, "attack": atk.name,
                        "label": atk.label, "kind": atk.kind.value, "descriptor": atk.descriptor(),
                        "guesses": report.guesses, "elapsed": report.elapsed, "rate": rate,
                        "rate_basis": basis, "exhausted": report.exhausted,
                        "checkpoint_rates": report.checkpoint_rates, "budget": atk.budget(alg),
                        "charset": atk.charset if atk.kind is AttackKind.BRUTE else None,
                        "max_length": atk.lengths.max_len if atk.kind is AttackKind.BRUTE else None})
        cracked = {target_text(t): p for t, p in {**already, **report.cracked}.items()}
        for target in all_targets:
            text = target_text(target)
            pid, password = answers[(alg.value, text)]
            if text in cracked:
                if cracked[text] != password:
                    raise ExperimentError(f"{key}: recovered {cracked[text]!r} but answer key says {password!r}")
                rec = RunRecord(pid, password, alg.value, atk.name, atk.label, atk.kind.value, Outcome.CRACKED,
                                hit_times.get((key, text), 0.0), atk.budget(alg),
                                checkpoint_rates=report.checkpoint_rates)
            elif atk.kind is AttackKind.BRUTE and not report.exhausted and basis > 0:
                rec = RunRecord(pid, password, alg.value, atk.name, atk.label, atk.kind.value, Outcome.ESTIMATED,
                                report.elapsed, atk.budget(alg), left / basis, basis, report.checkpoint_rates)
            else:
                rec = RunRecord(pid, password, alg.value, atk.name, atk.label, atk.kind.value, Outcome.NOT_CRACKED,
                                report.elapsed, atk.budget(alg), checkpoint_rates=report.checkpoint_rates)
            journal.append(rec.to_json())
            records.append(rec)
        if progress:
            progress(f"{key}: {report.summary()}")
    order = {(a.value, atk.name): i for i, (a, atk) in enumerate(plan.pairs())}
    return sorted(records, key=lambda r: (order.get((r.algorithm, r.attack), len(order)), r.password_id))
