"""Rule-based honeyword generation.

Three mutation strategies produce decoys that look like the real password.
When several strategies are allowed, those that keep the per-character class
pattern (keyboard-adjacent, in-place digit-suffix) are tried first so the real
password does not stand out by shape.
"""

from __future__ import annotations

import enum
import random
from typing import Iterable

from pwbench.defense.policy import CharClass, char_class, complexity_class

_ROWS = ("1234567890", "qwertyuiop", "asdfghjkl", "zxcvbnm", "!@#$%^&*()")
_KEYS = {
    "1234567890": [(0, i) for i in range(10)],
    "qwertyuiop": [(1, i) for i in range(10)],
    "asdfghjkl": [(2, i) for i in range(9)],
    "zxcvbnm": [(3, i) for i in range(7)],
}


def _build_adjacency() -> dict[str, frozenset[str]]:
    pos: dict[str, tuple[int, float]] = {}
    # row stagger of a standard QWERTY board
    offsets = (0.0, 0.5, 0.75, 1.25)
    for r, row in enumerate(_ROWS[:4]):
        for i, ch in enumerate(row):
            pos[ch] = (r, i + offsets[r])
    adj: dict[str, set[str]] = {ch: set() for ch in pos}
    for a, (ra, xa) in pos.items():
        for b, (rb, xb) in pos.items():
            if a != b and abs(ra - rb) <= 1 and abs(xa - xb) <= 1.0:
                adj[a].add(b)
    # shifted number row shares physical keys with the digits
    shifted = _ROWS[4]
    for i, ch in enumerate(shifted):
        adj[ch] = {shifted[j] for j in (i - 1, i + 1) if 0 <= j < len(shifted)}
    return {k: frozenset(v) for k, v in adj.items()}


QWERTY_ADJACENCY = _build_adjacency()


class Strategy(str, enum.Enum):
    KEYBOARD_ADJACENT = "keyboard-adjacent"
    DIGIT_SUFFIX = "digit-suffix-mutation"
    CASE_PERTURBATION = "case-perturbation"


ALL_STRATEGIES = frozenset(Strategy)


class HoneywordError(ValueError):
    pass


class StrategyError(HoneywordError):
    """The password cannot be mutated under the chosen strategies."""


def adjacent_keys(ch: str) -> list[str]:
    """Keyboard neighbours of ``ch`` in the same character class and case."""
    base = ch.lower()
    near = QWERTY_ADJACENCY.get(base, frozenset())
    cls = char_class(base)
    out = sorted(n for n in near if char_class(n) is cls)
    return [n.upper() for n in out] if ch.isupper() else out


def _keyboard(pw: str, rng: random.Random, edits: int) -> str | None:
    spots = [i for i, ch in enumerate(pw) if adjacent_keys(ch)]
    if not spots:
        return None
    chars = list(pw)
    for i in rng.sample(spots, min(edits, len(spots))):
        chars[i] = rng.choice(adjacent_keys(pw[i]))
    return "".join(chars)


def _trailing_digits(pw: str) -> int:
    n = 0
    while n < len(pw) and pw[-1 - n].isdigit():
        n += 1
    return n


def _digit_suffix(pw: str, rng: random.Random, edits: int) -> str | None:
    n = _trailing_digits(pw)
    if n:
        k = min(edits, n)
        chars = list(pw)
        for i in rng.sample(range(len(pw) - n, len(pw)), k):
            chars[i] = rng.choice([d for d in "0123456789" if d != pw[i]])
        return "".join(chars)
    return pw + "".join(rng.choice("0123456789") for _ in range(edits))


def _case(pw: str, rng: random.Random, edits: int) -> str | None:
    spots = [i for i, ch in enumerate(pw) if ch.isalpha() and ch.swapcase() != ch]
    if not spots:
        return None
    chars = list(pw)
    for i in rng.sample(spots, min(edits, len(spots))):
        chars[i] = chars[i].swapcase()
    return "".join(chars)


_MUTATORS = {
    Strategy.KEYBOARD_ADJACENT: _keyboard,
    Strategy.DIGIT_SUFFIX: _digit_suffix,
    Strategy.CASE_PERTURBATION: _case,
}


def _shape_preserving(pw: str, strategy: Strategy) -> bool:
    if strategy is Strategy.KEYBOARD_ADJACENT:
        return True
    if strategy is Strategy.DIGIT_SUFFIX:
        return _trailing_digits(pw) > 0
    return False


def structural_class(password: str):
    """Complexity class without dictionary membership, which mutation always breaks."""
    return complexity_class(password, frozenset())


def generate_honeywords(
    password: str,
    count: int,
    strategies: Iterable["Strategy | str"] = ALL_STRATEGIES,
    seed: "int | random.Random | None" = None,
) -> list[str]:
    """``count`` distinct decoys for ``password``; deterministic for a fixed seed."""
    if count < 1:
        raise HoneywordError("count must be >= 1")
    if not password:
        raise HoneywordError("password must be non-empty")
    chosen = sorted({Strategy(s) for s in strategies}, key=lambda s: s.value)
    if not chosen:
        raise StrategyError("no strategies given")
    if chosen == [Strategy.KEYBOARD_ADJACENT] and len(password) < 2:
        raise StrategyError("keyboard-adjacent substitution needs at least 2 characters")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    want = structural_class(password)

    preferred = [s for s in chosen if _shape_preserving(password, s)]
    pools = [preferred, chosen] if preferred and preferred != chosen else [chosen]
    decoys: list[str] = []
    seen = {password}
    per_pool = 200 * count + 200
    for pool in pools:
        for attempt in range(per_pool):
            if len(decoys) == count:
                return decoys
            edits = 1 + attempt // (20 * count + 20)
            cand = _MUTATORS[rng.choice(pool)](password, rng, edits)
            if cand is None or cand in seen:
                continue
            if structural_class(cand) is not want:
                continue
            seen.add(cand)
            decoys.append(cand)
    if len(decoys) == count:
        return decoys
    raise StrategyError(
        f"could only derive {len(decoys)} of {count} decoys from a {len(password)}-character password "
        f"with {', '.join(s.value for s in chosen)}"
    )


def make_sweetwords(
    password: str, k: int, strategies: Iterable["Strategy | str"] = ALL_STRATEGIES,
    rng: "random.Random | int | None" = None,
) -> tuple[list[str], int]:
    """Real password plus ``k - 1`` decoys in shuffled order, and the real index."""
    if k < 2:
        raise HoneywordError("k must be >= 2")
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    words = [password, *generate_honeywords(password, k - 1, strategies, rng)]
    rng.shuffle(words)
    return words, words.index(password)
