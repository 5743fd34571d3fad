"""bcrypt on top of the EksBlowfish kernels, plus the modular-crypt text form."""

from __future__ import annotations

import base64
import hmac
import os
import re
from dataclasses import dataclass

from pwbench.hashcore._backend import kernels
from pwbench.hashcore.digest import to_bytes

MIN_COST = 4
MAX_COST = 31
SALT_BYTES = 16
RAW_BYTES = 24
# The text form carries only the first 23 ciphertext bytes.
ENCODED_BYTES = 23
MAX_KEY_BYTES = 72

KNOWN_VERSIONS = ("2a", "2b", "2y")
DEFAULT_VERSION = "2a"

BCRYPT_ALPHABET = "./ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789"
_STD_ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/"
_TO_STD = bytes.maketrans(BCRYPT_ALPHABET.encode(), _STD_ALPHABET.encode())
_FROM_STD = bytes.maketrans(_STD_ALPHABET.encode(), BCRYPT_ALPHABET.encode())

_RECORD_RE = re.compile(r"^\$(?P<version>[0-9a-z]{1,3})\$(?P<cost>[^$]*)\$(?P<body>[^$]*)$")


class BcryptError(ValueError):
    """Base class for bcrypt input errors."""


class InvalidCost(BcryptError):
    pass


class InvalidSalt(BcryptError):
    pass


class MalformedRecord(BcryptError):
    """The text is not a valid bcrypt record. Distinct from a failed match."""


def b64_encode(raw: bytes) -> str:
    return base64.b64encode(raw).translate(_FROM_STD).rstrip(b"=").decode("ascii")


def b64_decode(text: str, nbytes: int) -> bytes:
    """Decode exactly ``nbytes`` from bcrypt base64; rejects non-canonical trailing bits."""
    if any(ch not in BCRYPT_ALPHABET for ch in text):
        raise MalformedRecord(f"character outside the bcrypt alphabet in {text!r}")
    padded = text.encode("ascii").translate(_TO_STD)
    padded += b"=" * (-len(padded) % 4)
    raw = base64.b64decode(padded)
    if len(raw) != nbytes or b64_encode(raw) != text:
        raise MalformedRecord(f"{text!r} is not a canonical encoding of {nbytes} bytes")
    return raw


def check_cost(cost: int) -> int:
    if isinstance(cost, bool) or not isinstance(cost, int) or not MIN_COST <= cost <= MAX_COST:
        raise InvalidCost(f"bcrypt cost must be an integer in {MIN_COST}..{MAX_COST}, got {cost!r}")
    return cost


def prepare_key(password: "str | bytes") -> bytes:
    """NUL-terminate and truncate to 72 bytes, as "2a" implementations do."""
    return (to_bytes(password) + b"\x00")[:MAX_KEY_BYTES]


@dataclass(frozen=True, slots=True)
class BcryptRecord:
    version: str
    cost: int
    salt: bytes
    ciphertext: bytes

    def __post_init__(self) -> None:
        if self.version not in KNOWN_VERSIONS:
            raise MalformedRecord(f"unknown bcrypt version tag {self.version!r}")
        check_cost(self.cost)
        if len(self.salt) != SALT_BYTES:
            raise InvalidSalt(f"salt must be {SALT_BYTES} bytes, got {len(self.salt)}")
        if len(self.ciphertext) not in (ENCODED_BYTES, RAW_BYTES):
            raise MalformedRecord(f"ciphertext must be 23 or 24 bytes, got {len(self.ciphertext)}")

    @property
    def text(self) -> str:
        return format_bcrypt(self)

    def __str__(self) -> str:
        return format_bcrypt(self)

    def same_hash(self, other: "BcryptRecord") -> bool:
        return hmac.compare_digest(self.ciphertext[:ENCODED_BYTES], other.ciphertext[:ENCODED_BYTES])


@dataclass(frozen=True, slots=True)
class BlowfishState:
    P: tuple[int, ...]
    S: tuple[tuple[int, ...], ...]


def format_bcrypt(record: BcryptRecord) -> str:
    salt = b64_encode(record.salt)
    body = b64_encode(record.ciphertext[:ENCODED_BYTES])
    return f"${record.version}${record.cost:02d}${salt}{body}"


def parse_bcrypt(text: str) -> BcryptRecord:
    if not isinstance(text, str) or not text.isascii():
        raise MalformedRecord("bcrypt record must be ASCII text")
    m = _RECORD_RE.match(text.strip())
    if m is None:
        raise MalformedRecord(f"not a $version$cost$body record: {text!r}")
    version, cost_text, body = m.group("version", "cost", "body")
    if version not in KNOWN_VERSIONS:
        raise MalformedRecord(f"unknown bcrypt version tag {version!r}")
    if len(cost_text) != 2 or not cost_text.isdigit():
        raise MalformedRecord(f"cost field must be two digits, got {cost_text!r}")
    cost = int(cost_text)
    if not MIN_COST <= cost <= MAX_COST:
        raise MalformedRecord(f"cost {cost} outside {MIN_COST}..{MAX_COST}")
    if len(body) != 53:
        raise MalformedRecord(f"salt+hash field must be 22+31 characters, got {len(body)}")
    salt = b64_decode(body[:22], SALT_BYTES)
    ciphertext = b64_decode(body[22:], ENCODED_BYTES)
    return BcryptRecord(version, cost, salt, ciphertext)


def gensalt() -> bytes:
    return os.urandom(SALT_BYTES)


def eks_blowfish_setup(password: "str | bytes", salt: bytes, cost: int) -> BlowfishState:
    """Run the expensive key schedule on ``password`` exactly as given (no NUL, no truncation)."""
    check_cost(cost)
    key = to_bytes(password)
    if not key:
        raise BcryptError("key must be non-empty")
    if len(salt) != SALT_BYTES:
        raise InvalidSalt(f"salt must be {SALT_BYTES} bytes, got {len(salt)}")
    p, s = kernels.eks_setup(key, bytes(salt), cost)
    return BlowfishState(tuple(p), tuple(tuple(box) for box in s))


def bcrypt_hash(password: "str | bytes", salt: bytes | None = None, cost: int = 10) -> BcryptRecord:
    check_cost(cost)
    if salt is None:
        salt = gensalt()
    if len(salt) != SALT_BYTES:
        raise InvalidSalt(f"salt must be {SALT_BYTES} bytes, got {len(salt)}")
    raw = kernels.bcrypt_raw(prepare_key(password), bytes(salt), cost)
    return BcryptRecord(DEFAULT_VERSION, cost, bytes(salt), raw)


def bcrypt_check(password: "str | bytes", record: BcryptRecord) -> bool:
    candidate = kernels.bcrypt_raw(prepare_key(password), record.salt, record.cost)
    return hmac.compare_digest(candidate[:ENCODED_BYTES], record.ciphertext[:ENCODED_BYTES])


def bcrypt_verify(password: "str | bytes", record_text: "str | BcryptRecord") -> bool:
    """Constant-time check of ``password`` against a record.

    Raises ``MalformedRecord`` for unparseable text rather than returning False.
    """
    record = record_text if isinstance(record_text, BcryptRecord) else parse_bcrypt(record_text)
    return bcrypt_check(password, record)
