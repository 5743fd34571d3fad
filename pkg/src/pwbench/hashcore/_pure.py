"""Pure-Python hash kernels.

Same surface as the compiled ``pwbench.hashcore._native`` module. Used when
the extension is not built, or when ``PWBENCH_BACKEND=python`` is set. Every
function here is a straight transcription of the algorithm; the compiled
module is tested for bit-identical output against it.
"""

from __future__ import annotations

import struct

from pwbench.hashcore._pi_tables import P_INIT, S0_INIT, S1_INIT, S2_INIT, S3_INIT

MASK32 = 0xFFFFFFFF
MASK64 = 0xFFFFFFFFFFFFFFFF

ALG_MD5 = 0
ALG_SHA256 = 1

# floor(2**32 * abs(sin(i))) for i = 1..64
MD5_T = (
    0xD76AA478, 0xE8C7B756, 0x242070DB, 0xC1BDCEEE, 0xF57C0FAF, 0x4787C62A, 0xA8304613, 0xFD469501,
    0x698098D8, 0x8B44F7AF, 0xFFFF5BB1, 0x895CD7BE, 0x6B901122, 0xFD987193, 0xA679438E, 0x49B40821,
    0xF61E2562, 0xC040B340, 0x265E5A51, 0xE9B6C7AA, 0xD62F105D, 0x02441453, 0xD8A1E681, 0xE7D3FBC8,
    0x21E1CDE6, 0xC33707D6, 0xF4D50D87, 0x455A14ED, 0xA9E3E905, 0xFCEFA3F8, 0x676F02D9, 0x8D2A4C8A,
    0xFFFA3942, 0x8771F681, 0x6D9D6122, 0xFDE5380C, 0xA4BEEA44, 0x4BDECFA9, 0xF6BB4B60, 0xBEBFBC70,
    0x289B7EC6, 0xEAA127FA, 0xD4EF3085, 0x04881D05, 0xD9D4D039, 0xE6DB99E5, 0x1FA27CF8, 0xC4AC5665,
    0xF4292244, 0x432AFF97, 0xAB9423A7, 0xFC93A039, 0x655B59C3, 0x8F0CCC92, 0xFFEFF47D, 0x85845DD1,
    0x6FA87E4F, 0xFE2CE6E0, 0xA3014314, 0x4E0811A1, 0xF7537E82, 0xBD3AF235, 0x2AD7D2BB, 0xEB86D391,
)

MD5_SHIFTS = (
    (7, 12, 17, 22),
    (5, 9, 14, 20),
    (4, 11, 16, 23),
    (6, 10, 15, 21),
)

MD5_IV = (0x67452301, 0xEFCDAB89, 0x98BADCFE, 0x10325476)

# first 32 bits of the fractional parts of the cube roots of the first 64 primes
SHA256_K = (
    0x428A2F98, 0x71374491, 0xB5C0FBCF, 0xE9B5DBA5, 0x3956C25B, 0x59F111F1, 0x923F82A4, 0xAB1C5ED5,
    0xD807AA98, 0x12835B01, 0x243185BE, 0x550C7DC3, 0x72BE5D74, 0x80DEB1FE, 0x9BDC06A7, 0xC19BF174,
    0xE49B69C1, 0xEFBE4786, 0x0FC19DC6, 0x240CA1CC, 0x2DE92C6F, 0x4A7484AA, 0x5CB0A9DC, 0x76F988DA,
    0x983E5152, 0xA831C66D, 0xB00327C8, 0xBF597FC7, 0xC6E00BF3, 0xD5A79147, 0x06CA6351, 0x14292967,
    0x27B70A85, 0x2E1B2138, 0x4D2C6DFC, 0x53380D13, 0x650A7354, 0x766A0ABB, 0x81C2C92E, 0x92722C85,
    0xA2BFE8A1, 0xA81A664B, 0xC24B8B70, 0xC76C51A3, 0xD192E819, 0xD6990624, 0xF40E3585, 0x106AA070,
    0x19A4C116, 0x1E376C08, 0x2748774C, 0x34B0BCB5, 0x391C0CB3, 0x4ED8AA4A, 0x5B9CCA4F, 0x682E6FF3,
    0x748F82EE, 0x78A5636F, 0x84C87814, 0x8CC70208, 0x90BEFFFA, 0xA4506CEB, 0xBEF9A3F7, 0xC67178F2,
)

# first 32 bits of the fractional parts of the square roots of the first 8 primes
SHA256_IV = (
    0x6A09E667, 0xBB67AE85, 0x3C6EF372, 0xA54FF53A,
    0x510E527F, 0x9B05688C, 0x1F83D9AB, 0x5BE0CD19,
)

BCRYPT_MAGIC = b"OrpheanBeholderScryDoubt"

REDUCE_TABLE_MULT = 0x9E3779B97F4A7C15


def pad_message(data: bytes, byteorder: str) -> bytes:
    """Append the 0x80 marker, zero fill to 56 mod 64, then the 64-bit bit length."""
    bit_len = (len(data) * 8) & MASK64
    zeros = (55 - len(data)) % 64
    return data + b"\x80" + b"\x00" * zeros + bit_len.to_bytes(8, byteorder)


def _rotl(x: int, n: int) -> int:
    return ((x << n) | (x >> (32 - n))) & MASK32


def _rotr(x: int, n: int) -> int:
    return ((x >> n) | (x << (32 - n))) & MASK32


def md5(data: bytes) -> bytes:
    a0, b0, c0, d0 = MD5_IV
    padded = pad_message(data, "little")
    for off in range(0, len(padded), 64):
        m = struct.unpack_from("<16I", padded, off)
        a, b, c, d = a0, b0, c0, d0
        for i in range(64):
            if i < 16:
                f = (b & c) | (~b & d)
                k = i
            elif i < 32:
                f = (d & b) | (~d & c)
                k = (5 * i + 1) & 15
            elif i < 48:
                f = b ^ c ^ d
                k = (3 * i + 5) & 15
            else:
                f = c ^ (b | (~d & MASK32))
                k = (7 * i) & 15
            rotated = _rotl((a + f + m[k] + MD5_T[i]) & MASK32, MD5_SHIFTS[i >> 4][i & 3])
            a, d, c, b = d, c, b, (b + rotated) & MASK32
        a0 = (a0 + a) & MASK32
        b0 = (b0 + b) & MASK32
        c0 = (c0 + c) & MASK32
        d0 = (d0 + d) & MASK32
    return struct.pack("<4I", a0, b0, c0, d0)


def sha256(data: bytes) -> bytes:
    h = list(SHA256_IV)
    padded = pad_message(data, "big")
    k = SHA256_K
    for off in range(0, len(padded), 64):
        w = list(struct.unpack_from(">16I", padded, off))
        for t in range(16, 64):
            x, y = w[t - 15], w[t - 2]
            s0 = _rotr(x, 7) ^ _rotr(x, 18) ^ (x >> 3)
            s1 = _rotr(y, 17) ^ _rotr(y, 19) ^ (y >> 10)
            w.append((w[t - 16] + s0 + w[t - 7] + s1) & MASK32)
        a, b, c, d, e, f, g, hh = h
        for t in range(64):
            big_s1 = _rotr(e, 6) ^ _rotr(e, 11) ^ _rotr(e, 25)
            ch = (e & f) ^ (~e & g)
            t1 = (hh + big_s1 + ch + k[t] + w[t]) & MASK32
            big_s0 = _rotr(a, 2) ^ _rotr(a, 13) ^ _rotr(a, 22)
            mj = (a & b) ^ (a & c) ^ (b & c)
            t2 = (big_s0 + mj) & MASK32
            hh, g, f, e, d, c, b, a = g, f, e, (d + t1) & MASK32, c, b, a, (t1 + t2) & MASK32
        h = [(x + y) & MASK32 for x, y in zip(h, (a, b, c, d, e, f, g, hh))]
    return struct.pack(">8I", *h)


def digest(alg: int, data: bytes) -> bytes:
    return md5(data) if alg == ALG_MD5 else sha256(data)


# -- Blowfish / bcrypt ------------------------------------------------------


def _encipher(p: list[int], s: list[list[int]], left: int, right: int) -> tuple[int, int]:
    s0, s1, s2, s3 = s
    for i in range(16):
        left ^= p[i]
        f = (((s0[left >> 24] + s1[(left >> 16) & 0xFF]) & MASK32) ^ s2[(left >> 8) & 0xFF])
        right ^= (f + s3[left & 0xFF]) & MASK32
        left, right = right, left
    left, right = right, left
    right ^= p[16]
    left ^= p[17]
    return left, right


def _stream_words(data: bytes, count: int) -> list[int]:
    """``count`` big-endian words read cyclically from ``data``."""
    n = len(data)
    out = []
    j = 0
    for _ in range(count):
        word = 0
        for _ in range(4):
            word = (word << 8) | data[j]
            j = (j + 1) % n
        out.append(word)
    return out


def _expand_key(p: list[int], s: list[list[int]], key_words: list[int], salt_words: list[int] | None) -> None:
    for i in range(18):
        p[i] ^= key_words[i]
    left = right = 0
    j = 0
    for i in range(0, 18, 2):
        if salt_words is not None:
            left ^= salt_words[j]
            right ^= salt_words[j + 1]
            j ^= 2
        left, right = _encipher(p, s, left, right)
        p[i], p[i + 1] = left, right
    for box in s:
        for i in range(0, 256, 2):
            if salt_words is not None:
                left ^= salt_words[j]
                right ^= salt_words[j + 1]
                j ^= 2
            left, right = _encipher(p, s, left, right)
            box[i], box[i + 1] = left, right


def eks_setup(key: bytes, salt: bytes, cost: int) -> tuple[list[int], list[list[int]]]:
    """Expensive key schedule; returns the keyed (P, S) arrays.

    ``key`` is the already-prepared key bytes (terminator appended, truncated).
    """
    p = list(P_INIT)
    s = [list(S0_INIT), list(S1_INIT), list(S2_INIT), list(S3_INIT)]
    key_words = _stream_words(key, 18)
    salt_words = _stream_words(salt, 4)
    salt_as_key = _stream_words(salt, 18)
    _expand_key(p, s, key_words, salt_words)
    for _ in range(1 << cost):
        _expand_key(p, s, key_words, None)
        _expand_key(p, s, salt_as_key, None)
    return p, s


def bcrypt_raw(key: bytes, salt: bytes, cost: int) -> bytes:
    p, s = eks_setup(key, salt, cost)
    words = list(struct.unpack(">6I", BCRYPT_MAGIC))
    for i in range(0, 6, 2):
        left, right = words[i], words[i + 1]
        for _ in range(64):
            left, right = _encipher(p, s, left, right)
        words[i], words[i + 1] = left, right
    return struct.pack(">6I", *words)


def eks_first_p(key: bytes, salt: bytes, cost: int) -> list[int]:
    return eks_setup(key, salt, cost)[0]


# -- candidate-space kernels ------------------------------------------------


def mix64(x: int) -> int:
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    x = (x ^ (x >> 27)) * 0x94D049BB133111EB & MASK64
    return x ^ (x >> 31)


def reduce_digest(dg: bytes, position: int, charset: bytes, length: int, table_index: int) -> bytes:
    n = len(charset)
    x = int.from_bytes(dg[:8], "little")
    x ^= (position + table_index * REDUCE_TABLE_MULT) & MASK64
    out = bytearray(length)
    for j in range(length):
        x = mix64((x + REDUCE_TABLE_MULT) & MASK64)
        out[j] = charset[x % n]
    return bytes(out)


def unrank_fixed(charset: bytes, length: int, index: int) -> bytes:
    n = len(charset)
    out = bytearray(length)
    for j in range(length - 1, -1, -1):
        index, r = divmod(index, n)
        out[j] = charset[r]
    return bytes(out)


def crack_block(alg: int, charset: bytes, length: int, start: int, count: int, targets: bytes) -> list:
    """Hash ``count`` consecutive fixed-length candidates from offset ``start``.

    ``targets`` is the sorted concatenation of target digests. Returns
    ``(offset, digest)`` for every candidate whose digest is a target.
    """
    width = 16 if alg == ALG_MD5 else 32
    wanted = {targets[i:i + width] for i in range(0, len(targets), width)}
    n = len(charset)
    digits = [0] * length
    idx = start
    for j in range(length - 1, -1, -1):
        idx, digits[j] = divmod(idx, n)
    buf = bytearray(charset[d] for d in digits)
    hashfn = md5 if alg == ALG_MD5 else sha256
    hits = []
    for i in range(count):
        dg = hashfn(bytes(buf))
        if dg in wanted:
            hits.append((start + i, dg))
        j = length - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < n:
                buf[j] = charset[digits[j]]
                break
            digits[j] = 0
            buf[j] = charset[0]
            j -= 1
    return hits


def walk_chain(alg: int, charset: bytes, plain: bytes, first: int, last: int, table_index: int) -> bytes:
    """Apply hash-then-reduce for positions ``first .. last - 1``."""
    length = len(plain)
    for pos in range(first, last):
        plain = reduce_digest(digest(alg, plain), pos, charset, length, table_index)
    return plain


def hash_many(alg: int, items: list) -> list:
    hashfn = md5 if alg == ALG_MD5 else sha256
    return [hashfn(x) for x in items]


def walk_many(alg: int, charset: bytes, plains: list, first: int, last: int, table_index: int) -> list:
    return [walk_chain(alg, charset, p, first, last, table_index) for p in plains]
