"""Word-mangling rules for dictionary attacks.

A deliberately small rule vocabulary: case changes, digit and symbol suffixes,
and leetspeak substitution.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable

LEET_MAP = {"a": "@", "e": "3", "i": "1", "o": "0", "s": "$"}


class RuleKind(str, enum.Enum):
    IDENTITY = "identity"
    LOWERCASE = "lowercase"
    UPPERCASE = "uppercase"
    CAPITALIZE = "capitalize"
    TOGGLE_CASE = "toggle-case"
    APPEND_DIGIT = "append-digit"
    APPEND_SYMBOL = "append-symbol"
    LEET = "leet-substitute"


@dataclass(frozen=True, slots=True)
class Rule:
    kind: RuleKind
    arg: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", RuleKind(self.kind))
        if self.kind is RuleKind.APPEND_DIGIT and not (len(self.arg) == 1 and self.arg.isdigit()):
            raise ValueError(f"append-digit needs a single digit, got {self.arg!r}")
        if self.kind is RuleKind.APPEND_SYMBOL and len(self.arg) != 1:
            raise ValueError(f"append-symbol needs a single character, got {self.arg!r}")

    def __str__(self) -> str:
        return f"{self.kind.value}({self.arg})" if self.arg else self.kind.value

    def apply(self, word: str) -> list[str]:
        k = self.kind
        if k is RuleKind.IDENTITY:
            return [word]
        if k is RuleKind.LOWERCASE:
            return [word.lower()]
        if k is RuleKind.UPPERCASE:
            return [word.upper()]
        if k is RuleKind.CAPITALIZE:
            return [word[:1].upper() + word[1:].lower()]
        if k is RuleKind.TOGGLE_CASE:
            return [word.swapcase()]
        if k in (RuleKind.APPEND_DIGIT, RuleKind.APPEND_SYMBOL):
            return [word + self.arg]
        return leet_variants(word)


def leet_variants(word: str) -> list[str]:
    """Every non-empty combination of substitutions, in positional binary order."""
    spots = [i for i, ch in enumerate(word) if ch.lower() in LEET_MAP]
    out = []
    for mask in itertools.product((False, True), repeat=len(spots)):
        if not any(mask):
            continue
        chars = list(word)
        for i, on in zip(spots, mask):
            if on:
                chars[i] = LEET_MAP[chars[i].lower()]
        out.append("".join(chars))
    return out


@dataclass(frozen=True, slots=True)
class RuleSet:
    rules: tuple[Rule, ...] = (Rule(RuleKind.IDENTITY),)

    def __post_init__(self) -> None:
        if not self.rules:
            object.__setattr__(self, "rules", (Rule(RuleKind.IDENTITY),))

    def __len__(self) -> int:
        return len(self.rules)

    @classmethod
    def parse(cls, spec: str | None) -> "RuleSet":
        """Comma-separated rule names; ``append-digit`` / ``append-symbol`` take ``:chars``.

        ``append-digit`` alone expands to all ten digits, ``append-digit:1`` to one.
        ``best`` is shorthand for a common mangling set.
        """
        if not spec:
            return cls()
        rules: list[Rule] = []
        for item in (s.strip() for s in spec.split(",")):
            if not item:
                continue
            if item == "best":
                rules.extend(BEST.rules)
                continue
            name, _, arg = item.partition(":")
            kind = RuleKind(name)
            if kind is RuleKind.APPEND_DIGIT:
                rules.extend(Rule(kind, d) for d in (arg or "0123456789"))
            elif kind is RuleKind.APPEND_SYMBOL:
                rules.extend(Rule(kind, s) for s in (arg or "!@#$%^&*"))
            else:
                rules.append(Rule(kind))
        return cls(tuple(rules))


def apply_rules(word: str, rules: RuleSet | Iterable[Rule] | None = None) -> list[str]:
    """Ordered, de-duplicated variants of ``word`` under ``rules``."""
    if not word:
        raise ValueError("word must be non-empty")
    rule_list = rules.rules if isinstance(rules, RuleSet) else tuple(rules or ())
    if not rule_list:
        rule_list = (Rule(RuleKind.IDENTITY),)
    seen: dict[str, None] = {}
    for rule in rule_list:
        for variant in rule.apply(word):
            seen.setdefault(variant, None)
    return list(seen)


BEST = RuleSet(
    (Rule(RuleKind.IDENTITY), Rule(RuleKind.CAPITALIZE), Rule(RuleKind.UPPERCASE))
    + tuple(Rule(RuleKind.APPEND_DIGIT, d) for d in "0123456789")
    + tuple(Rule(RuleKind.APPEND_SYMBOL, s) for s in "!@#")
    + (Rule(RuleKind.LEET),)
)
