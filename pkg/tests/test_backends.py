"""The compiled kernels and the pure-Python fallback must agree bit for bit."""

import os
import random

import pytest

from pwbench.hashcore import _backend


def test_selection_reports_a_backend():
    assert _backend.BACKEND in ("native", "python")
    assert "python" in _backend.available()


def test_digest_parity(native, pure):
    for n in (0, 1, 55, 56, 64, 200):
        data = os.urandom(n)
        for alg in (0, 1):
            assert native.digest(alg, data) == pure.digest(alg, data)
    items = [os.urandom(random.randrange(40)) for _ in range(50)]
    assert native.hash_many(0, items) == pure.hash_many(0, items)


def test_bcrypt_parity(native, pure):
    key, salt = b"parity\x00", os.urandom(16)
    assert native.bcrypt_raw(key, salt, 4) == pure.bcrypt_raw(key, salt, 4)
    assert list(native.eks_first_p(key, salt, 4)) == list(pure.eks_first_p(key, salt, 4))


def test_candidate_kernels_parity(native, pure):
    cs = b"abc123!"
    for i in (0, 1, 48, 342):
        assert native.unrank_fixed(cs, 3, i) == pure.unrank_fixed(cs, 3, i)
    dg = os.urandom(32)
    for pos in (0, 7, 99):
        assert native.reduce_digest(dg, pos, cs, 5, 3) == pure.reduce_digest(dg, pos, cs, 5, 3)
    assert native.walk_chain(1, cs, b"ab1", 0, 40, 2) == pure.walk_chain(1, cs, b"ab1", 0, 40, 2)
    assert native.walk_many(0, cs, [b"aaa", b"!!!"], 3, 20, 0) == pure.walk_many(0, cs, [b"aaa", b"!!!"], 3, 20, 0)


def test_crack_block_parity(native, pure):
    import hashlib

    cs = b"abcdef"
    words = [b"fab", b"ccc", b"aaa"]
    blob = b"".join(sorted(hashlib.md5(w).digest() for w in words))
    a = sorted(native.crack_block(0, cs, 3, 0, 216, blob))
    b = sorted(pure.crack_block(0, cs, 3, 0, 216, blob))
    assert a == b and len(a) == 3


def test_forced_python_backend(monkeypatch):
    import importlib

    monkeypatch.setenv("PWBENCH_BACKEND", "python")
    mod = importlib.reload(_backend)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("PWBENCH_BACKEND")
        importlib.reload(_backend)
