import json
import threading

import pytest
from filelock import FileLock

from pwbench.bench import ExperimentLocked, Outcome, load_records, parse_plan, run_experiment
from pwbench.bench.runner import JOURNAL, projection_rate

PLAN = """
[experiment]
dataset = data.tsv
algorithms = md5, bcrypt
bcrypt_cost = 4
seed = 1
checkpoint_every = 0.2
output_dir = out

[attack:brute]
kind = brute
charset = paper69
max_length = 3
budget_fast = 30
budget_slow = 1

[attack:dict]
kind = dict
wordlist = words.txt
"""

DATA = "aa1\tLow\tPseudoRandom\tshort\niloveyou\tLow\tDictionary\tcommon\nZq9!x7#Lm\tHigh\tPseudoRandom\tlong\n"


@pytest.fixture
def plan(tmp_path):
    (tmp_path / "data.tsv").write_text(DATA)
    (tmp_path / "words.txt").write_text("123456\niloveyou\npassword\n")
    return parse_plan(PLAN, tmp_path)


def by_key(records):
    return {(r.algorithm, r.attack, r.password): r for r in records}


def test_run_and_outcomes(plan):
    recs = by_key(run_experiment(plan))
    assert recs[("md5", "brute", "aa1")].outcome is Outcome.CRACKED
    assert recs[("md5", "brute", "aa1")].seconds <= 30
    assert recs[("md5", "brute", "iloveyou")].outcome is Outcome.NOT_CRACKED  # space exhausted
    assert recs[("md5", "dict", "iloveyou")].outcome is Outcome.CRACKED
    assert recs[("bcrypt", "dict", "iloveyou")].outcome is Outcome.CRACKED
    est = recs[("bcrypt", "brute", "Zq9!x7#Lm")]
    assert est.outcome is Outcome.ESTIMATED and est.projected_seconds > 0 and est.rate_basis > 0
    assert len(recs) == 2 * 2 * 3
    assert load_records(plan.output_dir / JOURNAL)


def test_resume_skips_finished_cells(plan):
    first = run_experiment(plan)
    lines = (plan.output_dir / JOURNAL).read_text().count("\n")
    second = run_experiment(plan)
    assert (plan.output_dir / JOURNAL).read_text().count("\n") == lines
    assert {(r.algorithm, r.attack, r.password, r.outcome) for r in first} == \
        {(r.algorithm, r.attack, r.password, r.outcome) for r in second}


def test_interrupted_run_resumes_to_same_result(plan, tmp_path):
    reference = run_experiment(plan)
    import dataclasses

    other = dataclasses.replace(plan, output_dir=tmp_path / "resumed")
    stop = threading.Event()
    stop.set()
    run_experiment(other, stop=stop)
    resumed = run_experiment(other)
    assert {(r.algorithm, r.attack, r.password, r.outcome) for r in resumed} == \
        {(r.algorithm, r.attack, r.password, r.outcome) for r in reference}


def test_journal_is_json_lines(plan):
    run_experiment(plan)
    kinds = {json.loads(l)["type"] for l in (plan.output_dir / JOURNAL).read_text().splitlines()}
    assert kinds == {"hit", "cell", "run"}


def test_lock_prevents_concurrent_runs(plan):
    plan.output_dir.mkdir(parents=True)
    with FileLock(str(plan.output_dir / ".pwbench.lock")):
        with pytest.raises(ExperimentLocked):
            run_experiment(plan)


def test_projection_uses_trailing_five():
    cps = [(i, r) for i, r in enumerate([1000, 1, 2, 3, 4, 5])]
    assert projection_rate(cps, 99) == 3
    assert projection_rate([], 99) == 99
