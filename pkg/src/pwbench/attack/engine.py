"""Brute-force and dictionary attacks over a pool of worker threads.

Workers share three things: the immutable target set, a cancellation event
(plus one event per target for salted hashes, so a cracked record stops being
hashed), and a queue they post progress and hits to. The calling thread owns
all aggregation: counts, checkpoints, the budget clock and early exit.

Hash kernels release the GIL, so threads run in parallel under the compiled
backend. Under the pure-Python backend they serialize.
"""

from __future__ import annotations

import io
import itertools
import logging
import os
import queue
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from pwbench.attack.charset import Charset, LengthRange, keyspace_size, segments
from pwbench.attack.rules import RuleSet, apply_rules
from pwbench.attack.targets import Target, TargetSet
from pwbench.hashcore import Algorithm, BcryptRecord, bcrypt_check
from pwbench.hashcore._backend import kernels

log = logging.getLogger(__name__)

DEFAULT_CHECKPOINT = 60.0
FAST_BLOCK = 1 << 16
SLOW_BLOCK = 1
DICT_BATCH = 4096


class AttackError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class CrackEvent:
    target: Target
    plaintext: str
    elapsed: float
    guesses: int
    source: str = ""


@dataclass
class AttackReport:
    cracked: dict[Target, str] = field(default_factory=dict)
    guesses: int = 0
    elapsed: float = 0.0
    checkpoint_rates: list[tuple[float, float]] = field(default_factory=list)
    exhausted: bool = False
    events: list[CrackEvent] = field(default_factory=list)
    source: str = ""

    @property
    def rate(self) -> float:
        return self.guesses / self.elapsed if self.elapsed > 0 else 0.0

    def summary(self) -> str:
        return (
            f"cracked={len(self.cracked)} guesses={self.guesses} elapsed={self.elapsed:.3f}s "
            f"rate={self.rate:.1f}/s exhausted={str(self.exhausted).lower()}"
        )


CrackCallback = Callable[[Target, str], None]


class _Run:
    """Shared state for one attack; the coordinating side lives in :meth:`execute`."""

    def __init__(
        self,
        targets: TargetSet,
        budget: float | None,
        checkpoint_every: float,
        on_crack: CrackCallback | None,
        source: str,
        stop: threading.Event | None,
    ) -> None:
        self.targets = targets
        self.budget = budget
        self.checkpoint_every = checkpoint_every
        self.on_crack = on_crack
        self.source = source
        self.cancel = threading.Event()
        self.external_stop = stop
        self.done_flags = {t: threading.Event() for t in targets}
        self.inbox: queue.SimpleQueue = queue.SimpleQueue()

    # worker side
    def post_count(self, n: int) -> None:
        self.inbox.put(("count", n, None, None))

    def post_hit(self, target: Target, plaintext: str, ordinal: int | None = None) -> None:
        self.done_flags[target].set()
        self.inbox.put(("hit", target, plaintext, ordinal))

    def cancelled(self) -> bool:
        return self.cancel.is_set()

    # coordinator side
    def execute(self, jobs: list[Callable[["_Run"], None]]) -> AttackReport:
        report = AttackReport(source=self.source)
        start = time.perf_counter()
        last_cp_t, last_cp_n = 0.0, 0
        running = len(jobs)
        errors: list[BaseException] = []

        def wrap(job):
            try:
                job(self)
            except BaseException as exc:  # surfaced on the coordinating thread
                errors.append(exc)
                self.cancel.set()
            finally:
                self.inbox.put(("done", None, None, None))

        threads = [threading.Thread(target=wrap, args=(job,), daemon=True) for job in jobs]
        for th in threads:
            th.start()
        budget_hit = False
        while running:
            try:
                kind, a, b, c = self.inbox.get(timeout=0.05)
            except queue.Empty:
                kind = None
            now = time.perf_counter() - start
            if kind == "count":
                report.guesses += a
            elif kind == "hit":
                if a not in report.cracked:
                    report.cracked[a] = b
                    guesses_at = c if c is not None else report.guesses
                    report.events.append(CrackEvent(a, b, now, guesses_at, self.source))
                    if self.on_crack is not None:
                        self.on_crack(a, b)
                    if len(report.cracked) == len(self.targets):
                        self.cancel.set()
            elif kind == "done":
                running -= 1
            if self.checkpoint_every > 0 and now - last_cp_t >= self.checkpoint_every:
                span = now - last_cp_t
                report.checkpoint_rates.append((now, (report.guesses - last_cp_n) / span))
                last_cp_t, last_cp_n = now, report.guesses
            if self.budget is not None and now >= self.budget and not self.cancel.is_set():
                budget_hit = True
                self.cancel.set()
            if self.external_stop is not None and self.external_stop.is_set():
                self.cancel.set()
        for th in threads:
            th.join()
        report.elapsed = time.perf_counter() - start
        if errors:
            raise errors[0]
        report.exhausted = not self.cancel.is_set() and not budget_hit
        return report


def _resolve(targets, algorithm) -> TargetSet:
    if isinstance(targets, TargetSet):
        if algorithm is not None and Algorithm.parse(algorithm) is not targets.algorithm:
            raise AttackError(f"targets are {targets.algorithm.value}, not {algorithm}")
        return targets
    try:
        return TargetSet.of(list(targets), algorithm)
    except ValueError as exc:
        raise AttackError(str(exc)) from exc


def _odometer(charset: Charset, length: int, offset: int, count: int) -> Iterator[str]:
    n = len(charset)
    digits = []
    for _ in range(length):
        offset, r = divmod(offset, n)
        digits.append(r)
    digits.reverse()
    sym = charset.symbols
    for _ in range(count):
        yield "".join(sym[d] for d in digits)
        j = length - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < n:
                break
            digits[j] = 0
            j -= 1


def _fast_brute_job(targets: TargetSet, charset: Charset, lengths: LengthRange, total: int,
                    block: int, worker: int, workers: int):
    alg = targets.algorithm.kernel_id
    blob = targets.sorted_blob()
    lookup = targets.by_value()
    encoded = charset.encoded
    nblocks = -(-total // block)
    # prefix sums so a hit's fixed-length offset maps back to a global index
    bases = {}
    acc = 0
    for length in lengths:
        bases[length] = acc
        acc += len(charset) ** length

    def job(run: _Run) -> None:
        for b in range(worker, nblocks, workers):
            if run.cancelled():
                return
            lo = b * block
            hi = min(lo + block, total)
            for length, offset, count in segments(charset, lengths, lo, hi):
                if encoded is not None and length <= 55:
                    for off, dg in kernels.crack_block(alg, encoded, length, offset, count, blob):
                        plain = encoded_candidate(encoded, length, off)
                        run.post_hit(lookup[dg], plain, bases[length] + off + 1)
                else:
                    cands = list(_odometer(charset, length, offset, count))
                    digests = kernels.hash_many(alg, [c.encode("utf-8") for c in cands])
                    for i, dg in enumerate(digests):
                        if dg in lookup:
                            run.post_hit(lookup[dg], cands[i], bases[length] + offset + i + 1)
            run.post_count(hi - lo)

    return job


def encoded_candidate(encoded: bytes, length: int, offset: int) -> str:
    return kernels.unrank_fixed(encoded, length, offset).decode("ascii")


def _slow_check_candidates(run: _Run, records: tuple[BcryptRecord, ...], candidates: Iterable[str]) -> None:
    """Hash each candidate against every not-yet-cracked record; counts hashes as guesses."""
    for cand in candidates:
        done = 0
        for rec in records:
            if run.cancelled():
                run.post_count(done)
                return
            if run.done_flags[rec].is_set():
                continue
            done += 1
            if bcrypt_check(cand, rec):
                run.post_hit(rec, cand)
        run.post_count(done)


def _slow_brute_job(targets: TargetSet, charset: Charset, lengths: LengthRange, total: int,
                    block: int, worker: int, workers: int):
    records = targets.items
    nblocks = -(-total // block)

    def job(run: _Run) -> None:
        for b in range(worker, nblocks, workers):
            if run.cancelled():
                return
            lo = b * block
            hi = min(lo + block, total)
            cands = itertools.chain.from_iterable(
                _odometer(charset, length, offset, count) for length, offset, count in segments(charset, lengths, lo, hi)
            )
            _slow_check_candidates(run, records, cands)

    return job


def brute_force(
    targets: "TargetSet | Iterable[Target | str]",
    algorithm: "Algorithm | str | None" = None,
    charset: "Charset | str" = "paper69",
    lengths: "LengthRange | tuple[int, int]" = LengthRange(1, 4),
    workers: int = 1,
    budget: float | None = None,
    *,
    checkpoint_every: float = DEFAULT_CHECKPOINT,
    block_size: int | None = None,
    on_crack: CrackCallback | None = None,
    stop: threading.Event | None = None,
    source: str = "brute-force",
) -> AttackReport:
    """Enumerate the whole candidate space, partitioned across ``workers``.

    Index blocks are dealt round-robin: worker ``w`` takes blocks
    ``w, w + workers, ...``. The run ends when every target is cracked, the
    space is exhausted, or ``budget`` seconds pass.
    """
    tset = _resolve(targets, algorithm)
    cs = Charset.parse(charset)
    lr = lengths if isinstance(lengths, LengthRange) else LengthRange(*lengths)
    if workers < 1:
        raise AttackError("workers must be >= 1")
    total = keyspace_size(cs, lr, cumulative=True)
    if tset.algorithm is Algorithm.BCRYPT:
        block = block_size or SLOW_BLOCK
        make = _slow_brute_job
    else:
        block = block_size or FAST_BLOCK
        make = _fast_brute_job
    jobs = [make(tset, cs, lr, total, block, w, workers) for w in range(workers)]
    run = _Run(tset, budget, checkpoint_every, on_crack, source, stop)
    return run.execute(jobs)


def iter_wordlist(source: "str | os.PathLike | Iterable[str] | io.TextIOBase") -> Iterator[str]:
    """Yield words from a path or an iterable of lines, skipping empty lines."""
    if isinstance(source, (str, os.PathLike)):
        try:
            fh = open(source, encoding="utf-8", errors="strict")
        except OSError as exc:
            raise AttackError(f"cannot read wordlist {source}: {exc}") from exc
        with fh:
            try:
                for line in fh:
                    word = line.rstrip("\r\n")
                    if word:
                        yield word
            except UnicodeDecodeError as exc:
                raise AttackError(f"wordlist {source} is not UTF-8: {exc}") from exc
        return
    for line in source:
        word = line.rstrip("\r\n")
        if word:
            yield word


def dictionary_candidates(wordlist, rules: RuleSet | None) -> Iterator[str]:
    """Word x rule candidates in order, each emitted once."""
    seen: set[str] = set()
    for word in iter_wordlist(wordlist):
        for cand in apply_rules(word, rules):
            if cand not in seen:
                seen.add(cand)
                yield cand


def dictionary_attack(
    targets: "TargetSet | Iterable[Target | str]",
    algorithm: "Algorithm | str | None" = None,
    wordlist=(),
    rules: RuleSet | None = None,
    workers: int = 1,
    budget: float | None = None,
    *,
    checkpoint_every: float = DEFAULT_CHECKPOINT,
    on_crack: CrackCallback | None = None,
    stop: threading.Event | None = None,
    source: str = "dictionary",
) -> AttackReport:
    """Hash every word x rule variant; ``source`` labels the dictionary in the report."""
    tset = _resolve(targets, algorithm)
    if workers < 1:
        raise AttackError("workers must be >= 1")
    rules = rules if rules is not None and len(rules) else RuleSet()
    if isinstance(wordlist, (str, os.PathLike)) and not os.access(wordlist, os.R_OK):
        raise AttackError(f"cannot read wordlist {wordlist}")
    candidates = dictionary_candidates(wordlist, rules)
    feed_lock = threading.Lock()
    counter = itertools.count()
    slow = tset.algorithm is Algorithm.BCRYPT
    batch_size = 1 if slow else DICT_BATCH

    def next_batch() -> tuple[int, list[str]]:
        with feed_lock:
            first = next(counter) * batch_size
            return first, list(itertools.islice(candidates, batch_size))

    if slow:
        records = tset.items

        def job(run: _Run) -> None:
            while not run.cancelled():
                _, batch = next_batch()
                if not batch:
                    return
                _slow_check_candidates(run, records, batch)
    else:
        alg = tset.algorithm.kernel_id
        lookup = tset.by_value()

        def job(run: _Run) -> None:
            while not run.cancelled():
                first, batch = next_batch()
                if not batch:
                    return
                digests = kernels.hash_many(alg, [c.encode("utf-8") for c in batch])
                for i, dg in enumerate(digests):
                    if dg in lookup:
                        run.post_hit(lookup[dg], batch[i], first + i + 1)
                run.post_count(len(batch))

    run = _Run(tset, budget, checkpoint_every, on_crack, source, stop)
    return run.execute([job] * workers)
