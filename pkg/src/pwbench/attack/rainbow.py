"""Rainbow tables over fixed-length candidates for unsalted fast hashes.

A chain starts at a plaintext p0 and alternates hash and reduce:
p(j+1) = reduce(H(p(j)), j). Only (end, start) pairs are stored. Reduction
positions make each column a different function, which keeps merges rare.
"""

from __future__ import annotations

import random
import struct
from dataclasses import dataclass, field
from pathlib import Path

from pwbench.attack.charset import Charset
from pwbench.hashcore import Algorithm, Digest
from pwbench.hashcore._backend import kernels

MAGIC = b"PWRT"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sBBHQQQQH")
# header: magic, version, algorithm, length, chain_count, chain_length, seed, table_index, charset bytes
_ALG_CODES = {Algorithm.MD5: 0, Algorithm.SHA256: 1}
COVERAGE_POINT_LIMIT = 5_000_000


class UnsupportedAlgorithm(ValueError):
    pass


class RainbowFormatError(ValueError):
    pass


def _fast_alg(algorithm) -> Algorithm:
    alg = Algorithm.parse(algorithm)
    if alg is Algorithm.BCRYPT:
        raise UnsupportedAlgorithm("rainbow tables need an unsalted fast hash; bcrypt salts every record")
    return alg


def _table_charset(charset: "Charset | str") -> tuple[Charset, bytes]:
    cs = Charset.parse(charset)
    enc = cs.encoded
    if enc is None or len(cs) > 255:
        raise ValueError("rainbow charsets must be ASCII with at most 255 symbols")
    return cs, enc


def reduce(digest: "Digest | bytes", position: int, charset: "Charset | str", length: int,
           table_index: int = 0) -> str:
    if length < 1:
        raise ValueError("length must be >= 1")
    _, enc = _table_charset(charset)
    raw = digest.value if isinstance(digest, Digest) else bytes(digest)
    return kernels.reduce_digest(raw, position, enc, length, table_index).decode("ascii")


@dataclass
class RainbowTable:
    algorithm: Algorithm
    charset: Charset
    length: int
    chain_count: int
    chain_length: int
    seed: int
    table_index: int = 0
    chains: dict[str, str] = field(default_factory=dict)
    coverage: float | None = None

    @property
    def keyspace(self) -> int:
        return len(self.charset) ** self.length

    def _enc(self) -> bytes:
        return self.charset.encoded  # type: ignore[return-value]

    def walk(self, plain: str, first: int, last: int) -> str:
        return kernels.walk_chain(self.algorithm.kernel_id, self._enc(), plain.encode("ascii"),
                                  first, last, self.table_index).decode("ascii")

    def chain_points(self, start: str) -> list[str]:
        """p0 .. p(chain_length - 1): every plaintext whose hash the chain covers."""
        alg = self.algorithm.kernel_id
        enc = self._enc()
        cur = start.encode("ascii")
        points = [start]
        for pos in range(self.chain_length - 1):
            cur = kernels.reduce_digest(kernels.digest(alg, cur), pos, enc, self.length, self.table_index)
            points.append(cur.decode("ascii"))
        return points

    def measure_coverage(self) -> float:
        covered: set[str] = set()
        for start in self.chains.values():
            covered.update(self.chain_points(start))
        return len(covered) / self.keyspace

    def lookup(self, digest: Digest) -> str | None:
        if Algorithm.parse(digest.algorithm) is not self.algorithm:
            raise ValueError(f"table is {self.algorithm.value}, digest is {digest.algorithm.value}")
        alg = self.algorithm.kernel_id
        enc = self._enc()
        raw = digest.value
        ti = self.table_index
        for pos in range(self.chain_length - 1, -1, -1):
            cand = kernels.reduce_digest(raw, pos, enc, self.length, ti)
            end = kernels.walk_chain(alg, enc, cand, pos + 1, self.chain_length, ti).decode("ascii")
            start = self.chains.get(end)
            if start is None:
                continue
            plain = kernels.walk_chain(alg, enc, start.encode("ascii"), 0, pos, ti)
            if kernels.digest(alg, plain) == raw:
                return plain.decode("ascii")
            # false alarm from a merge elsewhere in the chain; keep scanning
        return None

    # -- serialization ------------------------------------------------------

    def to_bytes(self) -> bytes:
        enc = self._enc()
        head = _HEADER.pack(MAGIC, FORMAT_VERSION, _ALG_CODES[self.algorithm], self.length,
                            self.chain_count, self.chain_length, self.seed, self.table_index, len(enc))
        body = [head, enc, struct.pack("<Q", len(self.chains))]
        for end in sorted(self.chains):
            body.append(end.encode("ascii"))
            body.append(self.chains[end].encode("ascii"))
        return b"".join(body)

    @classmethod
    def from_bytes(cls, data: bytes) -> "RainbowTable":
        if len(data) < _HEADER.size or data[:4] != MAGIC:
            raise RainbowFormatError("not a rainbow table file")
        magic, version, alg_code, length, count, chain_len, seed, ti, cs_len = _HEADER.unpack_from(data)
        if version != FORMAT_VERSION:
            raise RainbowFormatError(f"unsupported table format version {version}")
        algs = {v: k for k, v in _ALG_CODES.items()}
        if alg_code not in algs:
            raise RainbowFormatError(f"unknown algorithm code {alg_code}")
        off = _HEADER.size
        charset = Charset(data[off:off + cs_len].decode("ascii"))
        off += cs_len
        (npairs,) = struct.unpack_from("<Q", data, off)
        off += 8
        if len(data) != off + npairs * 2 * length:
            raise RainbowFormatError("truncated or oversized pair section")
        chains = {}
        for _ in range(npairs):
            end = data[off:off + length].decode("ascii")
            start = data[off + length:off + 2 * length].decode("ascii")
            chains[end] = start
            off += 2 * length
        return cls(algs[alg_code], charset, length, count, chain_len, seed, ti, chains)

    def save(self, path) -> Path:
        path = Path(path)
        path.write_bytes(self.to_bytes())
        return path

    @classmethod
    def load(cls, path) -> "RainbowTable":
        table = cls.from_bytes(Path(path).read_bytes())
        return table


def build_rainbow_table(
    algorithm: "Algorithm | str",
    charset: "Charset | str",
    length: int,
    chain_count: int,
    chain_length: int,
    seed: int = 0,
    table_index: int = 0,
    measure: bool = True,
) -> RainbowTable:
    """Build a table; ``measure`` also computes the fraction of the keyspace the stored chains cover."""
    alg = _fast_alg(algorithm)
    cs, enc = _table_charset(charset)
    if length < 1 or chain_count < 1 or chain_length < 1:
        raise ValueError("length, chain_count and chain_length must be >= 1")
    keyspace = len(cs) ** length
    rng = random.Random(seed)
    if chain_count <= keyspace:
        start_ids = rng.sample(range(keyspace), chain_count)
    else:
        start_ids = [rng.randrange(keyspace) for _ in range(chain_count)]
    starts = [kernels.unrank_fixed(enc, length, i) for i in start_ids]
    ends = kernels.walk_many(alg.kernel_id, enc, starts, 0, chain_length, table_index)
    chains: dict[str, str] = {}
    for start, end in zip(starts, ends):
        # merged chains share an end; keep the first start
        chains.setdefault(end.decode("ascii"), start.decode("ascii"))
    table = RainbowTable(alg, cs, length, chain_count, chain_length, seed, table_index, chains)
    if measure and len(chains) * chain_length <= COVERAGE_POINT_LIMIT:
        table.coverage = table.measure_coverage()
    return table


def rainbow_lookup(table: RainbowTable, digest: Digest) -> str | None:
    return table.lookup(digest)
