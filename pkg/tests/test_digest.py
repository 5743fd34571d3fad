import hashlib
import os

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pwbench.hashcore import Algorithm, Digest, hash_message, md5, pad_message, sha256

# RFC 1321 appendix and FIPS 180-2 examples
MD5_VECTORS = {
    "": "d41d8cd98f00b204e9800998ecf8427e",
    "a": "0cc175b9c0f1b6a831c399e269772661",
    "abc": "900150983cd24fb0d6963f7d28e17f72",
    "message digest": "f96b697d7cb7938d525a2f31aaf161d0",
    "abcdefghijklmnopqrstuvwxyz": "c3fcd3d76192e4007dfb496cca67e13b",
    "12345678901234567890123456789012345678901234567890123456789012345678901234567890":
        "57edf4a22be3c955ac49da2e2107b67a",
}
SHA256_VECTORS = {
    "abc": "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
    "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq":
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1",
    "": "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855",
}


@pytest.mark.parametrize("msg,hexd", MD5_VECTORS.items())
def test_md5_reference_vectors(msg, hexd):
    assert md5(msg).hex == hexd


@pytest.mark.parametrize("msg,hexd", SHA256_VECTORS.items())
def test_sha256_reference_vectors(msg, hexd):
    assert sha256(msg).hex == hexd


def test_sha256_million_a():
    assert sha256("a" * 1_000_000).hex == "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0"


@pytest.mark.parametrize("n", [0, 1, 55, 56, 57, 63, 64, 65, 119, 120, 128])
def test_padding_boundaries(n):
    msg = bytes(range(256))[:n] if n <= 256 else os.urandom(n)
    for enc, order in (("little_endian", "little"), ("big_endian", "big")):
        blocks = pad_message(msg, enc)
        joined = b"".join(blocks)
        assert all(len(b) == 64 for b in blocks)
        assert joined[:n] == msg and joined[n] == 0x80
        assert int.from_bytes(joined[-8:], order) == 8 * n
        assert set(joined[n + 1:-8]) <= {0}
        # padding never wastes a whole block
        assert len(joined) - n - 9 < 64


def test_padding_rejects_unknown_encoding():
    with pytest.raises(ValueError):
        pad_message(b"x", "middle")


@settings(max_examples=200)
@given(st.binary(max_size=300))
def test_matches_hashlib(data):
    assert md5(data).value == hashlib.md5(data).digest()
    assert sha256(data).value == hashlib.sha256(data).digest()


def test_utf8_text_input():
    assert md5("pässwörd").value == hashlib.md5("pässwörd".encode()).digest()


def test_avalanche_single_bit():
    rnd = os.urandom(32)
    for alg in (Algorithm.MD5, Algorithm.SHA256):
        flips = []
        for bit in range(64):
            mutated = bytearray(rnd)
            mutated[bit // 8] ^= 1 << (bit % 8)
            a = int.from_bytes(hash_message(alg, rnd).value, "big")
            b = int.from_bytes(hash_message(alg, bytes(mutated)).value, "big")
            flips.append(bin(a ^ b).count("1") / (8 * alg.digest_size))
        assert 0.45 < sum(flips) / len(flips) < 0.55


def test_digest_value_object():
    d = Digest.from_hex("E10ADC3949BA59ABBE56E057F20F883E".lower())
    assert d.algorithm is Algorithm.MD5 and str(d) == d.hex
    with pytest.raises(ValueError):
        Digest(Algorithm.MD5, b"\x00" * 31)
    with pytest.raises(ValueError):
        Digest.from_hex("abcd")
    with pytest.raises(ValueError):
        hash_message(Algorithm.BCRYPT, "x")


def test_algorithm_parse():
    assert Algorithm.parse("SHA-256") is Algorithm.SHA256
    assert Algorithm.parse("md5") is Algorithm.MD5
    with pytest.raises(ValueError):
        Algorithm.parse("sha1")
