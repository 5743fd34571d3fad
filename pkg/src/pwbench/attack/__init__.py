"""Mask brute force, rule-based dictionary attacks and rainbow tables."""

from pwbench.attack.charset import (
    PRESETS,
    CandidateRangeError,
    Charset,
    LengthRange,
    candidate_at,
    keyspace_size,
    rank_candidate,
)
from pwbench.attack.engine import (
    AttackError,
    AttackReport,
    CrackEvent,
    brute_force,
    dictionary_attack,
    iter_wordlist,
)
from pwbench.attack.rainbow import (
    RainbowFormatError,
    RainbowTable,
    UnsupportedAlgorithm,
    build_rainbow_table,
    rainbow_lookup,
    reduce,
)
from pwbench.attack.rules import Rule, RuleKind, RuleSet, apply_rules
from pwbench.attack.targets import Potfile, TargetError, TargetSet, read_hashfile, write_hashfile
from pwbench.attack.throughput import estimate_time, format_duration, measure_throughput

__all__ = [
    "PRESETS",
    "AttackError",
    "AttackReport",
    "CandidateRangeError",
    "Charset",
    "CrackEvent",
    "LengthRange",
    "Potfile",
    "RainbowFormatError",
    "RainbowTable",
    "Rule",
    "RuleKind",
    "RuleSet",
    "TargetError",
    "TargetSet",
    "UnsupportedAlgorithm",
    "apply_rules",
    "brute_force",
    "build_rainbow_table",
    "candidate_at",
    "dictionary_attack",
    "estimate_time",
    "format_duration",
    "iter_wordlist",
    "keyspace_size",
    "measure_throughput",
    "rainbow_lookup",
    "rank_candidate",
    "read_hashfile",
    "reduce",
    "write_hashfile",
]
