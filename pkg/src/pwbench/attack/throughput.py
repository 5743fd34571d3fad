"""Guess-rate measurement and crack-time projection."""

from __future__ import annotations

import math
import os
from fractions import Fraction

from pwbench.attack.charset import Charset, LengthRange
from pwbench.attack.engine import brute_force
from pwbench.hashcore import Algorithm, BcryptRecord, Digest

# Never produced by any candidate we enumerate: random digest bytes.
_MISS_SEED = b"pwbench-throughput-unreachable"


def _unreachable_target(alg: Algorithm, cost: int):
    if alg is Algorithm.BCRYPT:
        return BcryptRecord("2a", cost, os.urandom(16), os.urandom(23))
    return Digest(alg, os.urandom(alg.digest_size))


def measure_throughput(algorithm: "Algorithm | str", cost_if_bcrypt: int = 10, duration: float = 5.0,
                       workers: int = 1, checkpoint_every: float = 0.0) -> float:
    """Hashes per second sustained over ``duration`` seconds of real enumeration."""
    alg = Algorithm.parse(algorithm)
    if duration < 1:
        raise ValueError("duration must be at least 1 second")
    target = _unreachable_target(alg, cost_if_bcrypt)
    report = brute_force([target], alg, Charset.parse("full70"), LengthRange(1, 10), workers=workers,
                         budget=duration, checkpoint_every=checkpoint_every)
    return report.guesses / report.elapsed


def estimate_time(keyspace: int, rate: float) -> int:
    """Seconds to exhaust ``keyspace`` at ``rate``, rounded up."""
    if rate <= 0:
        raise ValueError("rate must be positive")
    if keyspace <= 0:
        return 0
    return math.ceil(Fraction(keyspace) / Fraction(rate))


def format_duration(seconds: float, estimated: bool = False) -> str:
    """Human units in the style "<1s", "34s", "5min52s", "4h27min", "56h", "280 days", "48 years"."""
    suffix = " (estimated)" if estimated else ""
    s = float(seconds)
    if s < 1:
        return "<1s" + suffix
    if s < 60:
        return f"{int(s)}s" + suffix
    if s < 3600:
        m, sec = divmod(int(s), 60)
        return (f"{m}min{sec}s" if sec else f"{m}min") + suffix
    hours = s / 3600
    if hours < 10:
        h, rem = divmod(int(s), 3600)
        m = rem // 60
        return (f"{h}h{m}min" if m else f"{h}h") + suffix
    if hours < 1000:
        return f"{int(round(hours))}h" + suffix
    days = s / 86400
    if days < 365:
        return f"{int(round(days))} days" + suffix
    years = int(round(days / 365.25))
    return (f"{years} year" if years == 1 else f"{years} years") + suffix
