import hashlib
import itertools
import random
import threading

import pytest

from conftest import cpu_count
from pwbench.attack import (
    AttackError,
    Charset,
    LengthRange,
    RuleSet,
    brute_force,
    candidate_at,
    dictionary_attack,
    keyspace_size,
)
from pwbench.hashcore import Algorithm, Digest, bcrypt_hash, md5, sha256


def oracle_brute(digests, charset, lengths):
    """Single-threaded exhaustive loop over itertools.product."""
    wanted = {d.value: d for d in digests}
    found = {}
    fn = hashlib.md5 if digests[0].algorithm is Algorithm.MD5 else hashlib.sha256
    for n in range(lengths.min_len, lengths.max_len + 1):
        for combo in itertools.product(charset.symbols, repeat=n):
            cand = "".join(combo)
            dg = fn(cand.encode()).digest()
            if dg in wanted:
                found[wanted[dg]] = cand
    return found


@pytest.mark.parametrize("workers", [1, 2, 4])
def test_brute_force_equals_oracle(workers):
    rng = random.Random(workers)
    cs, lr = Charset("ab1!Z"), LengthRange(1, 4)
    space = keyspace_size(cs, lr)
    plains = [candidate_at(cs, lr, rng.randrange(space)) for _ in range(6)]
    digests = list({md5(p) for p in plains}) + [md5("not-in-space")]
    report = brute_force(digests, "md5", cs, lr, workers=workers, block_size=7)
    assert report.cracked == oracle_brute(digests, cs, lr)
    assert report.exhausted and report.guesses == space


def test_every_candidate_hashed_once_across_workers():
    cs, lr = Charset("abc"), LengthRange(1, 3)
    report = brute_force([md5("zzzz")], "md5", cs, lr, workers=3, block_size=5)
    assert report.guesses == keyspace_size(cs, lr)


def test_non_ascii_charset_path():
    cs = Charset("äöü")
    report = brute_force([sha256("üä")], None, cs, LengthRange(1, 2))
    assert list(report.cracked.values()) == ["üä"]


def test_early_exit_when_all_cracked():
    report = brute_force([md5("a")], "md5", "lower", LengthRange(1, 6), block_size=1 << 10)
    assert report.cracked and not report.exhausted
    assert report.guesses < keyspace_size(Charset.parse("lower"), LengthRange(1, 6))


def test_budget_stops_the_run():
    report = brute_force([md5("unreachable-target")], "md5", "full70", LengthRange(6, 8), budget=1.0,
                         checkpoint_every=0.25)
    assert 0.9 < report.elapsed < 3.0
    assert not report.exhausted and not report.cracked
    assert len(report.checkpoint_rates) >= 2


def test_external_stop():
    stop = threading.Event()
    threading.Timer(0.3, stop.set).start()
    report = brute_force([md5("unreachable-target")], "md5", "full70", LengthRange(6, 8), stop=stop)
    assert report.elapsed < 3.0 and not report.exhausted


def test_bcrypt_brute_force():
    rec = bcrypt_hash("b", cost=4)
    report = brute_force([rec], None, "abc", LengthRange(1, 1))
    assert report.cracked == {rec: "b"}


def test_mixed_or_empty_targets_rejected():
    with pytest.raises(AttackError):
        brute_force([md5("a"), sha256("a")])
    with pytest.raises(AttackError):
        brute_force([])
    with pytest.raises(AttackError):
        brute_force([md5("a")], "sha256")


@pytest.mark.parametrize("workers", [1, 3])
def test_dictionary_attack(workers):
    words = ["alpha", "bravo", "charlie", "delta"]
    targets = [md5("Bravo"), md5("delta7"), md5("alpha"), md5("nope")]
    report = dictionary_attack(targets, "md5", words, RuleSet.parse("identity,capitalize,append-digit"),
                               workers=workers)
    assert {report.cracked[t] for t in targets[:3]} == {"Bravo", "delta7", "alpha"}
    # 4 words x (identity, capitalize, 10 digits), no duplicates
    assert report.guesses == 4 * 12 and report.exhausted


def test_dictionary_candidates_hashed_once():
    report = dictionary_attack([md5("x")], "md5", ["a", "a", "A"], RuleSet.parse("identity,lowercase"))
    assert report.guesses == 2  # "a", "A"


def test_dictionary_bcrypt_stops_hashing_cracked_records():
    recs = [bcrypt_hash("iloveyou", cost=4), bcrypt_hash("dragon", cost=4)]
    words = ["dragon", "iloveyou", "x1", "x2", "x3"]
    report = dictionary_attack(recs, None, words)
    assert set(report.cracked.values()) == {"dragon", "iloveyou"}
    assert report.guesses <= 2 + 2  # each record checked until its own word


def test_wordlist_file_and_errors(tmp_path):
    p = tmp_path / "w.txt"
    p.write_text("one\n\ntwo\r\n")
    report = dictionary_attack([md5("two")], "md5", p)
    assert list(report.cracked.values()) == ["two"]
    with pytest.raises(AttackError):
        dictionary_attack([md5("two")], "md5", tmp_path / "missing.txt")


def test_crack_callback_and_events():
    seen = []
    report = brute_force([md5("ab"), md5("ba")], "md5", "ab", LengthRange(1, 2),
                         on_crack=lambda t, p: seen.append(p))
    assert sorted(seen) == ["ab", "ba"]
    assert len(report.events) == 2 and "cracked=2" in report.summary()


@pytest.mark.skipif(cpu_count() < 2, reason="needs at least two cores")
def test_workers_scale_under_native_backend(native):
    t = [md5("unreachable-target")]
    one = brute_force(t, "md5", "full70", LengthRange(6, 8), workers=1, budget=2.0).rate
    two = brute_force(t, "md5", "full70", LengthRange(6, 8), workers=2, budget=2.0).rate
    assert two > 1.4 * one
