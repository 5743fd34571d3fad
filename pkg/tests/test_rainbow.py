import random

import pytest

from pwbench.attack import RainbowFormatError, RainbowTable, UnsupportedAlgorithm, build_rainbow_table, reduce
from pwbench.hashcore import md5, sha256


def test_reduce_properties():
    dg = md5("x")
    out = reduce(dg, 3, "digits", 6)
    assert len(out) == 6 and out.isdigit()
    assert reduce(dg, 3, "digits", 6) == out
    assert len({reduce(dg, p, "lower", 8) for p in range(50)}) > 45
    assert reduce(dg, 3, "lower", 8, table_index=1) != reduce(dg, 3, "lower", 8, table_index=0)


def test_chains_walk_to_stored_ends():
    table = build_rainbow_table("md5", "digits", 4, 50, 30, seed=1)
    for end, start in table.chains.items():
        assert table.walk(start, 0, table.chain_length) == end
        assert table.chain_points(start)[0] == start


def test_lookup_hits_are_correct():
    table = build_rainbow_table("sha256", "digits", 3, 100, 20, seed=4)
    rng = random.Random(0)
    hits = 0
    for _ in range(100):
        plain = f"{rng.randrange(1000):03d}"
        got = table.lookup(sha256(plain))
        if got is not None:
            assert sha256(got) == sha256(plain)
            hits += 1
    assert hits > 0


def test_deterministic_by_seed():
    a = build_rainbow_table("md5", "digits", 4, 40, 10, seed=9, measure=False)
    b = build_rainbow_table("md5", "digits", 4, 40, 10, seed=9, measure=False)
    assert a.chains == b.chains


def test_save_load_roundtrip(tmp_path):
    table = build_rainbow_table("md5", "lower", 3, 30, 10, seed=2)
    path = table.save(tmp_path / "t.rt")
    back = RainbowTable.load(path)
    assert back.chains == table.chains and back.algorithm == table.algorithm and back.charset == table.charset
    data = path.read_bytes()
    with pytest.raises(RainbowFormatError):
        RainbowTable.from_bytes(b"XXXX" + data[4:])
    with pytest.raises(RainbowFormatError):
        RainbowTable.from_bytes(data[:-1])


def test_bcrypt_rejected():
    with pytest.raises(UnsupportedAlgorithm):
        build_rainbow_table("bcrypt", "digits", 4, 10, 10)


def test_lookup_wrong_algorithm():
    table = build_rainbow_table("md5", "digits", 2, 10, 5)
    with pytest.raises(ValueError):
        table.lookup(sha256("1"))
