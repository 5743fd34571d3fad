"""MD5 and SHA-256 front end: message padding, digests, hex form."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from pwbench.hashcore import _pure
from pwbench.hashcore._backend import kernels


class Algorithm(str, enum.Enum):
    MD5 = "md5"
    SHA256 = "sha256"
    BCRYPT = "bcrypt"

    @classmethod
    def parse(cls, value: "str | Algorithm") -> "Algorithm":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        for alg in cls:
            if alg.value == key:
                return alg
        raise ValueError(f"unknown algorithm {value!r}")

    @property
    def kernel_id(self) -> int:
        if self is Algorithm.MD5:
            return _pure.ALG_MD5
        if self is Algorithm.SHA256:
            return _pure.ALG_SHA256
        raise ValueError("bcrypt has no fast-digest kernel")

    @property
    def digest_size(self) -> int:
        return {Algorithm.MD5: 16, Algorithm.SHA256: 32}[self]


def to_bytes(message: "str | bytes | bytearray | memoryview") -> bytes:
    """Passwords are UTF-8 encoded without normalization."""
    if isinstance(message, str):
        return message.encode("utf-8")
    return bytes(message)


@dataclass(frozen=True, slots=True)
class Digest:
    algorithm: Algorithm
    value: bytes

    def __post_init__(self) -> None:
        alg = Algorithm.parse(self.algorithm)
        object.__setattr__(self, "algorithm", alg)
        if alg is Algorithm.BCRYPT:
            raise ValueError("bcrypt outputs are BcryptRecord, not Digest")
        if len(self.value) != alg.digest_size:
            raise ValueError(f"{alg.value} digest must be {alg.digest_size} bytes, got {len(self.value)}")

    @property
    def hex(self) -> str:
        return self.value.hex()

    def __str__(self) -> str:
        return self.value.hex()

    @classmethod
    def from_hex(cls, text: str, algorithm: "Algorithm | str | None" = None) -> "Digest":
        text = text.strip()
        raw = bytes.fromhex(text)
        if algorithm is None:
            algorithm = {16: Algorithm.MD5, 32: Algorithm.SHA256}.get(len(raw))
            if algorithm is None:
                raise ValueError(f"cannot infer algorithm from {len(raw)}-byte digest")
        return cls(Algorithm.parse(algorithm), raw)


def pad_message(message: "str | bytes", length_encoding: str = "big_endian") -> list[bytes]:
    """Pad to a whole number of 64-byte blocks and split.

    ``length_encoding`` is ``"little_endian"`` (MD5) or ``"big_endian"`` (SHA-256).
    """
    order = {"little_endian": "little", "big_endian": "big", "little": "little", "big": "big"}.get(length_encoding)
    if order is None:
        raise ValueError(f"length_encoding must be little_endian or big_endian, not {length_encoding!r}")
    data = to_bytes(message)
    if len(data) >= 1 << 61:
        raise ValueError("message too long for a 64-bit bit-length field")
    padded = _pure.pad_message(data, order)
    return [padded[i:i + 64] for i in range(0, len(padded), 64)]


def md5(message: "str | bytes") -> Digest:
    return Digest(Algorithm.MD5, kernels.md5(to_bytes(message)))


def sha256(message: "str | bytes") -> Digest:
    return Digest(Algorithm.SHA256, kernels.sha256(to_bytes(message)))


def hash_message(algorithm: "Algorithm | str", message: "str | bytes") -> Digest:
    alg = Algorithm.parse(algorithm)
    return Digest(alg, kernels.digest(alg.kernel_id, to_bytes(message)))
