"""Client-side key derivation: salt the password once, then re-hash the digest."""

from __future__ import annotations

from dataclasses import dataclass, field

from pwbench.hashcore._backend import kernels
from pwbench.hashcore.digest import Algorithm, to_bytes


@dataclass(frozen=True, slots=True)
class KdfSpec:
    algorithm: Algorithm = Algorithm.SHA256
    iterations: int = 10_000
    salt: bytes = field(default=b"")

    def __post_init__(self) -> None:
        alg = Algorithm.parse(self.algorithm)
        if alg is Algorithm.BCRYPT:
            raise ValueError("kdf_iterate supports md5 and sha256 only")
        object.__setattr__(self, "algorithm", alg)
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")


def kdf_iterate(password: "str | bytes", spec: KdfSpec) -> bytes:
    """D1 = H(password || salt); Di = H(D(i-1)); returns D(iterations)."""
    alg = spec.algorithm.kernel_id
    out = kernels.digest(alg, to_bytes(password) + spec.salt)
    for _ in range(spec.iterations - 1):
        out = kernels.digest(alg, out)
    return out
