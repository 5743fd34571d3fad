"""Candidate spaces: charsets, length ranges, and index <-> candidate mapping.

Candidates are ordered by length first, then as an odometer over charset
positions with the leftmost symbol most significant.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterator

LOWER = string.ascii_lowercase
UPPER = string.ascii_uppercase
DIGITS = string.digits
# The mask in the experiments lists eight specials but counts 69 symbols;
# the 69-symbol default drops the trailing '*'.
PAPER_SPECIALS = "!@#$%^&"

PRESETS = {
    "lower": LOWER,
    "upper": UPPER,
    "digits": DIGITS,
    "alpha": LOWER + UPPER,
    "alnum": LOWER + UPPER + DIGITS,
    "paper69": LOWER + UPPER + DIGITS + PAPER_SPECIALS,
    "full70": LOWER + UPPER + DIGITS + PAPER_SPECIALS + "*",
}


class CandidateRangeError(IndexError):
    pass


@dataclass(frozen=True, slots=True)
class Charset:
    symbols: str

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("charset must not be empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("charset symbols must be distinct")

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def encoded(self) -> bytes | None:
        """Single-byte encoding usable by the compiled kernels, or None."""
        if self.symbols.isascii():
            return self.symbols.encode("ascii")
        return None

    @classmethod
    def parse(cls, spec: "str | Charset") -> "Charset":
        """Preset name, ``+``-joined preset names, or a literal symbol string."""
        if isinstance(spec, Charset):
            return spec
        parts = spec.split("+")
        if all(p in PRESETS for p in parts):
            return cls("".join(PRESETS[p] for p in parts))
        return cls(spec)


@dataclass(frozen=True, slots=True)
class LengthRange:
    min_len: int
    max_len: int

    def __post_init__(self) -> None:
        if not 1 <= self.min_len <= self.max_len:
            raise ValueError(f"need 1 <= min_len <= max_len, got {self.min_len}..{self.max_len}")

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.min_len, self.max_len + 1))


def keyspace_size(charset: Charset, lengths: LengthRange, cumulative: bool = True) -> int:
    n = len(charset)
    if not cumulative:
        return n ** lengths.max_len
    return sum(n ** length for length in lengths)


def _locate(charset: Charset, lengths: LengthRange, index: int) -> tuple[int, int]:
    """Map a global index to (length, offset within that length)."""
    if index < 0:
        raise CandidateRangeError(f"index {index} is negative")
    n = len(charset)
    for length in lengths:
        size = n ** length
        if index < size:
            return length, index
        index -= size
    raise CandidateRangeError("index beyond the end of the keyspace")


def candidate_at(charset: Charset, lengths: LengthRange, index: int) -> str:
    length, offset = _locate(charset, lengths, index)
    n = len(charset)
    out = [""] * length
    for j in range(length - 1, -1, -1):
        offset, r = divmod(offset, n)
        out[j] = charset.symbols[r]
    return "".join(out)


def rank_candidate(charset: Charset, lengths: LengthRange, candidate: str) -> int:
    """Inverse of :func:`candidate_at`."""
    if not lengths.min_len <= len(candidate) <= lengths.max_len:
        raise CandidateRangeError(f"{candidate!r} has a length outside {lengths.min_len}..{lengths.max_len}")
    n = len(charset)
    pos = {ch: i for i, ch in enumerate(charset.symbols)}
    base = sum(n ** length for length in range(lengths.min_len, len(candidate)))
    offset = 0
    for ch in candidate:
        try:
            offset = offset * n + pos[ch]
        except KeyError:
            raise ValueError(f"{ch!r} is not in the charset") from None
    return base + offset


def segments(charset: Charset, lengths: LengthRange, lo: int, hi: int) -> Iterator[tuple[int, int, int]]:
    """Split global index range [lo, hi) into (length, offset, count) runs of equal length."""
    n = len(charset)
    base = 0
    for length in lengths:
        size = n ** length
        seg_lo = max(lo, base)
        seg_hi = min(hi, base + size)
        if seg_lo < seg_hi:
            yield length, seg_lo - base, seg_hi - seg_lo
        base += size
        if base >= hi:
            break
