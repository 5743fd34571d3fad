"""Acceptance gate: one PASS/FAIL line per criterion.

Run standalone with ``python3 tests/test_acceptance.py [N ...]`` or through
pytest, where the lines are repeated in the terminal summary. Tolerances are
pinned as module constants below.
"""

from __future__ import annotations

import hashlib
import random
import statistics
import sys
import tempfile
import time
from collections import Counter
from pathlib import Path

import bcrypt as bcrypt_oracle
import pytest

from pwbench.attack import (
    Charset,
    LengthRange,
    UnsupportedAlgorithm,
    brute_force,
    build_rainbow_table,
    candidate_at,
    keyspace_size,
    measure_throughput,
)
from pwbench.bench.report import PAPER_KEYSPACE, build_keyspace, paper_matches
from pwbench.defense import (
    AuthResponse,
    Authenticator,
    CredentialStore,
    EventKind,
    EventLog,
    Honeychecker,
    LockoutConfig,
    LockoutState,
    RiskContext,
    UserBaseline,
    make_sweetwords,
    record_attempt,
    register_user,
)
from pwbench.defense.honeywords import ALL_STRATEGIES
from pwbench.defense.policy import shape
from pwbench.hashcore import MalformedRecord, bcrypt_hash, bcrypt_verify, md5, parse_bcrypt, sha256

# -- pinned tolerances -------------------------------------------------------
AC1_MAX_SECONDS = 1.0
AC2_MAX_SECONDS = 30.0
AC4_WINDOW = 60.0
AC4_BCRYPT_FACTOR = 1e4
AC5_COSTS = (6, 7, 8, 9, 10)
AC5_SAMPLES = 20
AC5_RATIO = (1.6, 2.6)
AC5_MAX_SECONDS = 120.0
AC6_CONFIGS = 5
AC6_MAX_KEYSPACE = 10**5
AC6_WORKERS = (1, 2, 4)
AC6_MAX_SECONDS = 60.0
AC7_CHAINS, AC7_CHAIN_LENGTH = 5000, 100
AC7_SAMPLES = 4000
AC7_TOLERANCE = 0.05
AC7_MAX_SECONDS = 120.0
AC8_USERS, AC8_K, AC8_COST = 1000, 8, 4
AC8_TOLERANCE = 0.10
AC9_CASES = 10_000
AC10_MAX_SECONDS = 25 * 60.0

# -- published values ----------------------------------------------------------
PUBLISHED_DIGESTS = [
    ("md5", "123456", "e10adc39496a59a66e56e057f20f883e"),
    ("md5", "password", "5f4dcc3b5aa765d61d8327deb882cf99"),
    ("md5", "abcdef", "e80b5017098950fc58aad83c8c14978e"),
    ("sha256", "123456", "8D969EEF6ECAD3C29A3A629280E686CF0C3F5D5A86AFF3CA12020C923ADC6C92"),
    ("sha256", "abcdef", "BEF57EC7F53A6D40BEB640A780A639C83BC29AC8A9816F1FC6C5C6DCD93C4721"),
]

PUBLISHED_BCRYPT = [
    ("123456789", "$2a$10$Y0pz86lvVpYXDZgkrT/JheGQG8wTbPXfaRq2xBj.Ne16RxzZWXLfO"),
    ("111111", "$2a$10$9hosumvMZjK9eMVCI2qzeO0tWgyCYb5.2ULlCRkGFDSh1vk1r0jvu"),
    ("123123", "$2a$10$j7qZaTfmX87GrHHZfMKvludnjl2oYexEUL3SradS44BgZcz4opr4."),
    ("123456", "$2a$10$cixOlw9mU.IT1QBxFZ1fduwdiZ7yUjIK0Wt5py9medOXnUKcleXjq"),
    ("200254", "$2a$10$I2CiytLTS0YFs7mCPdjQsexwRzykbjKVSNUGaP7MMUSiMfEeobkdG"),
    ("19780214", "$2a$10$y/yNWjKt2l/e00M/bsavNeHno9jzF39W721iR6ujMWfnaHcVtTV8a"),
    ("abcdef", "$2a$10$Okog3OBiZ664q73iYptT2eaKOAAzTRohPSkSMIEZYSkali7Sk/o5q"),
    ("dhak1", "$2a$10$4LfH3264Jk2lu42S5LSKreseWCzwHdETMySHxJwEKJD06QeRtPhS6"),
    ("dragon", "$2a$10$4SCiziTjExT5lzdB.3yna.pmr1Hh4XK.a.xLentHl6TtlvNAZHQxO"),
    ("!@#", "$2a$10$08BCj3miPJu9lVE8bRhb8e0XaNQIApE3oNeQ1TZAaA8EdlaXLzRba"),
    ("Acj816", "$2a$10$IHVZXyzuOvtVeSHtYnLVy.H0aS4unReMCIVO3S9lgxNOcwqiQs17S"),
    ("sfh3840", "$2a$10$3etSaX2jMzifNlwO0JNQeuHrjrelzfQV0O9hkx4.SuEyTyY96ot8Wk6"),
    ("34vgdh", "$2a$10$.2gbfBTZRxzoWgrYggQBbO1DEn4UA/AzocILRZXg2mVlbqlcAR38O"),
    ("iloveyou", "$2a$10$kDYGRIV.WlArimXGHIUFDO7RQXp3Af3GLGovT3qdhdghWhOFomZVS"),
    ("qwerty", "$2a$10$.EblGu7kZg3JgXbxiiQZt.fsT7OXrTeJa1JrSJ2Bbp1XVVYJWfpXy"),
    ("dhf576", "$2a$10$whwDXfJEyGEGXnt1aeFSHeGhtpphRctQeldJjGkx9dDQEuAuHN3za"),
    ("83740", "$2a$10$PS4nv60AAFffoecAjzMItOd0d4vCw5Qbwn.HJkFnC073Cs0evQuN2"),
]

PUBLISHED_KEYSPACE = {1: 69, 2: 4761, 3: 328509, 4: 22667121}

RESULTS: list[str] = []
CRITERIA = {}


def criterion(number: int, title: str):
    def wrap(fn):
        CRITERIA[number] = (title, fn)
        return fn
    return wrap


def evaluate(number: int) -> bool:
    title, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, reported on its line
        ok, detail = False, f"error: {type(exc).__name__}: {exc}"
    line = f"AC{number} {'PASS' if ok else 'FAIL'} {title} ({time.perf_counter() - start:.1f}s): {detail}"
    RESULTS.append(line)
    print(line, flush=True)
    return ok


# -- criteria -----------------------------------------------------------------

@criterion(1, "hash vectors vs published table")
def ac1():
    start = time.perf_counter()
    wrong, oracle_wrong = [], []
    for alg, pw, published in PUBLISHED_DIGESTS:
        ours = (md5 if alg == "md5" else sha256)(pw).hex
        if ours != published.lower():
            wrong.append(f"{alg}({pw!r}) published={published.lower()} computed={ours}")
        if hashlib.new(alg, pw.encode()).hexdigest() != ours:
            oracle_wrong.append(f"{alg}({pw!r})")
    elapsed = time.perf_counter() - start
    ok = not wrong and not oracle_wrong and elapsed < AC1_MAX_SECONDS
    detail = (f"{len(PUBLISHED_DIGESTS) - len(wrong)}/{len(PUBLISHED_DIGESTS)} rows match; implementation agrees with hashlib on "
              f"{len(PUBLISHED_DIGESTS) - len(oracle_wrong)}/{len(PUBLISHED_DIGESTS)}")
    if wrong:
        detail += "; mismatches: " + "; ".join(wrong)
    return ok, detail


@criterion(2, "bcrypt interop with oracle guard")
def ac2():
    start = time.perf_counter()
    disagreements, damaged, recompute_bad = [], [], []
    for pw, record in PUBLISHED_BCRYPT:
        try:
            oracle_ok = bcrypt_oracle.checkpw(pw.encode(), record.encode())
        except ValueError:
            oracle_ok = False
        try:
            ours = bcrypt_verify(pw, record)
        except MalformedRecord:
            ours = False
        if ours != oracle_ok:
            disagreements.append(pw)
        if not oracle_ok:
            damaged.append(pw)
        try:
            salt_prefix = record[:29].encode()
            rec = parse_bcrypt(record[:29] + "." * 31)
        except (MalformedRecord, ValueError):
            continue
        if bcrypt_hash(pw, salt=rec.salt, cost=rec.cost).text != bcrypt_oracle.hashpw(pw.encode(), salt_prefix).decode():
            recompute_bad.append(pw)
    elapsed = time.perf_counter() - start
    ok = not disagreements and not recompute_bad and elapsed < AC2_MAX_SECONDS
    detail = (f"bcrypt_verify agrees with the reference library on {len(PUBLISHED_BCRYPT) - len(disagreements)}/{len(PUBLISHED_BCRYPT)}; "
              f"recomputation with each record's salt matches the library on every parseable row; "
              f"{len(PUBLISHED_BCRYPT) - len(damaged)}/{len(PUBLISHED_BCRYPT)} published records verify, "
              f"oracle rejects (transcription damage, oracle wins): {', '.join(damaged)}")
    return ok, detail


@criterion(3, "keyspace arithmetic")
def ac3():
    cs = Charset.parse("paper69")
    exact = {n: keyspace_size(cs, LengthRange(n, n), cumulative=False) for n in range(1, 10)}
    rows_ok = all(exact[n] == v for n, v in PUBLISHED_KEYSPACE.items())
    flagged = [n for n in range(5, 10) if not paper_matches(n, exact[n])]
    table = build_keyspace({"md5": 1.0}, cs)
    report_flags = [int(r[0]) for r in table.rows if r[3].startswith("no")]
    ok = rows_ok and all(exact[n] == 69**n for n in exact) and report_flags == flagged
    return ok, (f"rows 1-4 exact={rows_ok}; rows 5-9 recomputed as 69^L; published values flagged inconsistent "
                f"for lengths {flagged} ({', '.join(PAPER_KEYSPACE[n] for n in flagged)})")


@criterion(4, "speed ordering md5 > sha256 > bcrypt")
def ac4():
    r_md5 = measure_throughput("md5", duration=AC4_WINDOW, checkpoint_every=0)
    r_sha = measure_throughput("sha256", duration=AC4_WINDOW, checkpoint_every=0)
    r_bc = measure_throughput("bcrypt", cost_if_bcrypt=10, duration=AC4_WINDOW, checkpoint_every=0)
    ok = r_sha < r_md5 and r_bc < r_md5 / AC4_BCRYPT_FACTOR
    return ok, (f"md5={r_md5:,.0f}/s sha256={r_sha:,.0f}/s ({r_sha / r_md5:.0%} of md5) "
                f"bcrypt10={r_bc:.2f}/s (md5/bcrypt={r_md5 / r_bc:,.0f})")


@criterion(5, "bcrypt cost scaling")
def ac5():
    start = time.perf_counter()
    medians = {}
    for cost in AC5_COSTS:
        samples = []
        for i in range(AC5_SAMPLES):
            t = time.perf_counter()
            bcrypt_hash(f"sample{i}", salt=bytes(16), cost=cost)
            samples.append(time.perf_counter() - t)
        medians[cost] = statistics.median(samples)
    ratios = [medians[c + 1] / medians[c] for c in AC5_COSTS[:-1]]
    elapsed = time.perf_counter() - start
    ok = all(AC5_RATIO[0] <= r <= AC5_RATIO[1] for r in ratios) and elapsed < AC5_MAX_SECONDS
    return ok, "ratios " + ", ".join(f"{c}->{c + 1}: {r:.2f}" for c, r in zip(AC5_COSTS, ratios))


def _oracle_loop(digests, cs, lr):
    wanted = {d.value: d for d in digests}
    fn = hashlib.md5 if digests[0].algorithm.value == "md5" else hashlib.sha256
    found = {}
    for i in range(keyspace_size(cs, lr)):
        cand = candidate_at(cs, lr, i)
        dg = fn(cand.encode("utf-8")).digest()
        if dg in wanted:
            found[wanted[dg]] = cand
    return found


@criterion(6, "brute force equals exhaustive oracle")
def ac6():
    start = time.perf_counter()
    rng = random.Random(20240601)
    pool = "abcdefghijklmnopqrstuvwxyz0123456789!@#$%^&ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    checked = 0
    mismatches = []
    configs = 0
    while configs < AC6_CONFIGS:
        symbols = "".join(rng.sample(pool, rng.randint(3, 30)))
        lo = rng.randint(1, 3)
        lr = LengthRange(lo, rng.randint(lo, 5))
        cs = Charset(symbols)
        space = keyspace_size(cs, lr)
        if space > AC6_MAX_KEYSPACE:
            continue
        configs += 1
        alg = rng.choice(["md5", "sha256"])
        h = md5 if alg == "md5" else sha256
        digests = list({h(candidate_at(cs, lr, rng.randrange(space))) for _ in range(5)}) + [h("~outside~")]
        want = _oracle_loop(digests, cs, lr)
        for workers in AC6_WORKERS:
            got = brute_force(digests, alg, cs, lr, workers=workers, block_size=rng.randint(1, 5000)).cracked
            checked += 1
            if got != want:
                mismatches.append(f"{symbols!r} {lr} w={workers}")
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < AC6_MAX_SECONDS
    return ok, f"{checked} runs over {AC6_CONFIGS} configs, mismatches={mismatches or 'none'}"


@criterion(7, "rainbow coverage vs Monte-Carlo hit rate")
def ac7():
    start = time.perf_counter()
    table = build_rainbow_table("md5", "digits", 4, AC7_CHAINS, AC7_CHAIN_LENGTH, seed=7)
    rng = random.Random(77)
    hits = sum(table.lookup(md5(f"{rng.randrange(10**4):04d}")) is not None for _ in range(AC7_SAMPLES))
    rate = hits / AC7_SAMPLES
    try:
        build_rainbow_table("bcrypt", "digits", 4, 10, 10)
        rejected = False
    except UnsupportedAlgorithm:
        rejected = True
    elapsed = time.perf_counter() - start
    ok = abs(rate - table.coverage) <= AC7_TOLERANCE and rejected and elapsed < AC7_MAX_SECONDS
    return ok, f"coverage={table.coverage:.3f} hit_rate={rate:.3f} bcrypt_rejected={rejected}"


def _user_passwords(n: int, rng: random.Random) -> list[str]:
    words = ["sunshine", "dragonfly", "monkey", "shadow", "football", "princess", "starwars", "harbor",
             "letmein", "whatever", "pineapple", "mustang", "tiger", "orange", "buster", "coffee"]
    out = set()
    while len(out) < n:
        w = rng.choice(words)
        form = rng.randrange(5)
        if form == 0:
            pw = w + str(rng.randrange(10, 100))
        elif form == 1:
            pw = w.capitalize() + str(rng.randrange(1970, 2025)) + rng.choice("!@#$")
        elif form == 2:
            pw = w + "-" + rng.choice(words)
        elif form == 3:
            pw = "".join(rng.choice("abcdefghjkmnpqrstuvwxyz23456789") for _ in range(rng.randint(9, 14)))
        else:
            pw = w.upper()[:3] + w[3:] + str(rng.randrange(1000))
        if len(pw) >= 8:
            out.add(pw)
    return sorted(out)


@criterion(8, "honeyword flatness and decoy alerts")
def ac8():
    rng = random.Random(8)
    passwords = _user_passwords(AC8_USERS, rng)
    store = CredentialStore(default_k=AC8_K, default_cost=AC8_COST)
    checker = Honeychecker()
    seeds = {}
    for i, pw in enumerate(passwords):
        seeds[f"user{i}"] = 10_000 + i
        register_user(store, checker, f"user{i}", pw, seed=seeds[f"user{i}"])

    # naive realness guesser: the sweetword whose class pattern is most common, first on ties
    correct = 0
    decoys = {}
    for i, pw in enumerate(passwords):
        words, real = make_sweetwords(pw, AC8_K, ALL_STRATEGIES, seeds[f"user{i}"])
        counts = Counter(shape(w) for w in words)
        guess = max(range(AC8_K), key=lambda j: counts[shape(words[j])])
        correct += guess == real
        decoys[f"user{i}"] = words[(real + 1) % AC8_K]
    accuracy = correct / AC8_USERS

    now = 1_700_000_000.0
    base = UserBaseline(frozenset(range(24)), frozenset({"US"}), frozenset({"d"}), frozenset({"n"}))
    ctx = RiskContext(now, "US", "d", "n", base)
    log = EventLog()
    auth = Authenticator(store, checker, log=log)
    good = 0
    for user, decoy in decoys.items():
        out = auth.login(user, decoy, ctx, now)
        alerts = [e for e in out.events if e.kind is EventKind.HONEYWORD_ALERT]
        good += out.response is AuthResponse.GENERIC_FAILURE and len(alerts) == 1 and len(out.events) == 1
    ok = abs(accuracy - 1 / AC8_K) <= AC8_TOLERANCE and good == len(decoys)
    return ok, (f"guesser accuracy={accuracy:.3f} (chance {1 / AC8_K:.3f}); "
                f"decoy logins with GenericFailure and exactly one alert: {good}/{len(decoys)}")


@criterion(9, "lockout property suite")
def ac9():
    cfg = LockoutConfig()
    rng = random.Random(9)
    violations = []
    for case in range(AC9_CASES):
        state = LockoutState("u", config=cfg)
        now = 0.0
        streak = 0
        for _ in range(rng.randint(1, 30)):
            now += rng.choice([1.0, 30.0, 120.0])
            outcome = "failure" if rng.random() < 0.7 else "success"
            if state.is_locked(now):
                continue
            state = record_attempt(state, outcome, now)
            streak = streak + 1 if outcome == "failure" else 0
            locked = state.is_locked(now)
            if locked != (streak >= cfg.threshold):
                violations.append(case)
                break
            if locked:
                t = state.locked_until
                if not (state.is_locked(t - 1e-6) and not state.is_locked(t)):
                    violations.append(case)
                    break
                now = t
                streak = 0
    ok = not violations
    return ok, f"{AC9_CASES} randomized sequences, violations={len(violations)}"


@criterion(10, "end-to-end desk experiment")
def ac10():
    from pwbench import cli
    from pwbench.bench import load_cells, load_records, parse_plan
    from pwbench.bench.plan import desk_plan_text
    from pwbench.bench.report import build_matrix

    start = time.perf_counter()
    with tempfile.TemporaryDirectory() as tmp:
        plan_path = Path(tmp) / "desk.ini"
        plan_path.write_text(desk_plan_text(), encoding="utf-8")
        plan = parse_plan(desk_plan_text(), tmp)
        code = cli.main(["bench", "run", "--plan", str(plan_path)])
        journal = plan.output_dir / "records.jsonl"
        records = load_records(journal)
        table = build_matrix(records, load_cells(journal))
    elapsed = time.perf_counter() - start
    from pwbench.bench import builtin_reference_set
    labels = {e.password: e for e in builtin_reference_set()}
    low_dict = {p for p in plan.subset if labels[p].complexity.value == "Low" and labels[p].randomness.value == "Dictionary"}
    high_rand = {p for p in plan.subset if labels[p].complexity.value == "High" and labels[p].randomness.value == "PseudoRandom"}
    by = {(r.algorithm, r.attack, r.password): r for r in records}
    algs = sorted({r.algorithm for r in records})
    dict_miss = [f"{a}:{p}" for a in algs for p in low_dict if by[(a, "dict1", p)].outcome.value != "cracked"]
    brute_fall = [f"{a}:{p}" for a in algs for p in high_rand if by[(a, "brute", p)].outcome.value == "cracked"]
    shaped = len(table.rows) == len(plan.subset) and len(table.header) == 2 + len({(r.algorithm, r.attack) for r in records})
    ok = code == 0 and shaped and not dict_miss and not brute_fall and elapsed < AC10_MAX_SECONDS
    return ok, (f"{len(table.rows)} rows x {len(table.header) - 2} attack columns; "
                f"{len(low_dict)} Low dictionary passwords cracked by dictionary 1 on {algs} "
                f"(misses: {dict_miss or 'none'}); {len(high_rand)} High pseudo-random passwords survived brute force "
                f"(fell: {brute_fall or 'none'})")


# -- pytest entry points ---------------------------------------------------------

def test_ac1_hash_vectors():
    assert evaluate(1)


def test_ac2_bcrypt_interop():
    assert evaluate(2)


def test_ac3_keyspace():
    assert evaluate(3)


@pytest.mark.slow
def test_ac4_speed_ordering():
    assert evaluate(4)


@pytest.mark.slow
def test_ac5_cost_scaling():
    assert evaluate(5)


def test_ac6_oracle_equivalence():
    assert evaluate(6)


@pytest.mark.slow
def test_ac7_rainbow_coverage():
    assert evaluate(7)


@pytest.mark.slow
def test_ac8_honeywords():
    assert evaluate(8)


def test_ac9_lockout():
    assert evaluate(9)


@pytest.mark.slow
def test_ac10_desk_experiment():
    assert evaluate(10)


if __name__ == "__main__":
    wanted = [int(a) for a in sys.argv[1:]] or sorted(CRITERIA)
    results = [evaluate(n) for n in wanted]
    sys.exit(0 if all(results) else 1)
