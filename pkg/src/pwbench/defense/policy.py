"""Length-first password policy with a banned list, and a complexity rubric.

Acceptance follows the modern guidance: minimum length, a maximum, and no
common passwords; character-class mixing is optional. The Low/Medium/High
rubric is separate from acceptance and mirrors the dataset labels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources


class Complexity(str, enum.Enum):
    LOW = "Low"
    MEDIUM = "Medium"
    HIGH = "High"


class CharClass(str, enum.Enum):
    LOWER = "lower"
    UPPER = "upper"
    DIGIT = "digit"
    SYMBOL = "symbol"


REASON_TOO_SHORT = "too-short"
REASON_TOO_LONG = "too-long"
REASON_BANNED = "banned"
REASON_MISSING_CLASS = "missing-class"


@lru_cache(maxsize=1)
def common_passwords() -> frozenset[str]:
    text = resources.files("pwbench.data").joinpath("common_passwords.txt").read_text(encoding="utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


def char_class(ch: str) -> CharClass:
    if ch.islower():
        return CharClass.LOWER
    if ch.isupper():
        return CharClass.UPPER
    if ch.isdigit():
        return CharClass.DIGIT
    return CharClass.SYMBOL


def classes_of(password: str) -> set[CharClass]:
    return {char_class(ch) for ch in password}


def shape(password: str) -> str:
    """Per-character class pattern, e.g. ``"LLLLDD"``."""
    return "".join(char_class(ch).name[0] for ch in password)


@dataclass(frozen=True)
class PasswordPolicy:
    min_length: int = 8
    max_length: int = 64
    banned_list: frozenset[str] = field(default_factory=common_passwords)
    require_classes: frozenset[CharClass] | None = None

    def __post_init__(self) -> None:
        if self.min_length < 1:
            raise ValueError("min_length must be >= 1")
        if self.max_length < self.min_length:
            raise ValueError("max_length must be >= min_length")


@dataclass(frozen=True)
class StrengthReport:
    accepted: bool
    length_class: Complexity
    reasons: tuple[str, ...] = ()
    feedback: str = ""


def complexity_class(password: str, dictionary: frozenset[str] | None = None) -> Complexity:
    """Low / Medium / High from length, class count and dictionary membership."""
    words = common_passwords() if dictionary is None else dictionary
    classes = classes_of(password)
    if len(password) <= 3 or classes == {CharClass.DIGIT}:
        return Complexity.LOW
    if password in words and len(classes) == 1:
        return Complexity.LOW
    if CharClass.SYMBOL in classes and len(classes) >= 3:
        return Complexity.HIGH
    if len(password) >= 12 and len(classes) >= 3:
        return Complexity.HIGH
    return Complexity.MEDIUM


def evaluate_policy(password: str, policy: PasswordPolicy | None = None) -> StrengthReport:
    policy = policy or PasswordPolicy()
    reasons = []
    tips = []
    if len(password) < policy.min_length:
        reasons.append(REASON_TOO_SHORT)
        tips.append(f"use at least {policy.min_length} characters")
    if len(password) > policy.max_length:
        reasons.append(REASON_TOO_LONG)
        tips.append(f"use at most {policy.max_length} characters")
    if password in policy.banned_list:
        reasons.append(REASON_BANNED)
        tips.append("this password is on a list of common or breached passwords")
    if policy.require_classes:
        missing = set(policy.require_classes) - classes_of(password)
        if missing:
            reasons.append(REASON_MISSING_CLASS)
            tips.append("add " + ", ".join(sorted(c.value for c in missing)))
    level = complexity_class(password, policy.banned_list)
    if not reasons:
        tips.append("a longer passphrase of unrelated words is stronger still" if level is not Complexity.HIGH else "ok")
    return StrengthReport(not reasons, level, tuple(reasons), "; ".join(tips))
