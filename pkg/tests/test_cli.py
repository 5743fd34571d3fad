import io
import sys

import pytest

from pwbench import cli
from pwbench.hashcore import bcrypt_verify, md5


def run(argv, stdin="", monkeypatch=None, capsys=None):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def sh(monkeypatch, capsys):
    return lambda argv, stdin="": run(argv, stdin, monkeypatch, capsys)


def test_hash_md5_stdin(sh):
    code, out, _ = sh(["hash", "--alg", "md5"], "123456\n")
    assert code == 0 and out.strip() == "e10adc3949ba59abbe56e057f20f883e"


def test_hash_bcrypt_with_salt(sh):
    code, out, _ = sh(["hash", "--alg", "bcrypt", "--cost", "4", "--salt", "00" * 16], "pw\n")
    assert code == 0 and bcrypt_verify("pw", out.strip()) and out.startswith("$2a$04$......")


def test_crack_brute_tiny(sh, tmp_path):
    f = tmp_path / "f"
    f.write_text(md5("aa").hex + "\n")
    pot = tmp_path / "p.pot"
    code, out, _ = sh(["crack", "--mode", "brute", "--charset", "lower", "--min", "1", "--max", "2",
                       "--hashfile", str(f), "--potfile", str(pot)])
    assert code == 0 and "cracked=1" in out.splitlines()[-1]
    assert pot.read_text().strip().endswith("\taa")


def test_crack_dict_and_env_potfile(sh, tmp_path, monkeypatch):
    f = tmp_path / "f"
    f.write_text(md5("Dragon").hex + "\n")
    w = tmp_path / "w"
    w.write_text("dragon\n")
    monkeypatch.setenv(cli.POTFILE_ENV, str(tmp_path / "env.pot"))
    code, out, _ = sh(["crack", "--mode", "dict", "--hashfile", str(f), "--wordlist", str(w), "--rules", "capitalize"])
    assert code == 0 and "cracked=1" in out
    assert (tmp_path / "env.pot").exists()


def test_rainbow_build_lookup_crack(sh, tmp_path):
    table = tmp_path / "t.rt"
    code, out, _ = sh(["rainbow", "build", "--alg", "md5", "--charset", "digits", "--length", "3",
                       "--chains", "400", "--chain-length", "20", "--out", str(table)])
    assert code == 0 and "coverage=" in out
    digests = "\n".join(md5(f"{i:03d}").hex for i in range(0, 1000, 37)) + "\n"
    code, out, _ = sh(["rainbow", "lookup", "--table", str(table)], digests)
    assert code == 0 and "hits=" in out.splitlines()[-1]
    f = tmp_path / "h"
    f.write_text(digests)
    code, out, _ = sh(["crack", "--mode", "rainbow", "--table", str(table), "--hashfile", str(f),
                       "--potfile", str(tmp_path / "p")])
    assert code == 0 and out.splitlines()[-1].startswith("summary mode=rainbow")


def test_defend_demo(sh):
    code, out, _ = sh(["defend", "demo", "--cost", "4", "--k", "4"])
    assert code == 0 and "HoneywordAlert" in out and "[Locked]" in out


def test_bench_and_report(sh, tmp_path):
    (tmp_path / "d.tsv").write_text("ab\tLow\tPseudoRandom\tx\n")
    plan = tmp_path / "p.ini"
    plan.write_text("[experiment]\ndataset = d.tsv\nalgorithms = md5\noutput_dir = out\n"
                    "[attack:b]\nkind = brute\ncharset = lower\nmax_length = 2\nbudget_fast = 5\n")
    code, out, _ = sh(["bench", "run", "--plan", str(plan)])
    assert code == 0 and "cracked=1" in out
    records = tmp_path / "out" / "records.jsonl"
    code, out, _ = sh(["report", "--records", str(records), "--schema", "matrix", "--format", "csv"])
    assert code == 0 and out.splitlines()[1].startswith("1,ab,")
    code, out, _ = sh(["report", "--records", str(records), "--schema", "keyspace", "--format", "md",
                       "--max", "3"])
    assert code == 0 and "| 3 | 17576 |" in out
    code, _, _ = sh(["bench", "init-plan", str(tmp_path / "desk.ini")])
    assert code == 0 and (tmp_path / "desk.ini").exists()


@pytest.mark.parametrize("argv,stdin,expected", [
    (["hash", "--alg", "bcrypt", "--cost", "3"], "x\n", 2),
    (["hash", "--alg", "sha1"], "x\n", 2),
    (["hash", "--alg", "md5", "--salt", "00"], "x\n", 2),
    (["hash", "--alg", "bcrypt", "--cost", "4", "--salt", "zz"], "x\n", 2),
    (["hash", "--alg", "md5", "--bogus"], "", 2),
    (["frobnicate"], "", 2),
    (["crack", "--mode", "brute", "--hashfile", "/nonexistent/h"], "", 1),
    (["crack", "--mode", "dict", "--hashfile", "HASHFILE"], "", 2),
    (["crack", "--mode", "rainbow", "--hashfile", "HASHFILE"], "", 2),
    (["crack", "--mode", "brute", "--hashfile", "HASHFILE", "--min", "3", "--max", "1"], "", 2),
    (["crack", "--mode", "dict", "--hashfile", "HASHFILE", "--wordlist", "/nonexistent/w"], "", 1),
    (["rainbow", "build", "--alg", "bcrypt", "--length", "2", "--chains", "2", "--chain-length", "2",
      "--out", "OUT"], "", 2),
    (["rainbow", "lookup", "--table", "/nonexistent/t"], "", 1),
    (["bench", "run", "--plan", "/nonexistent/p.ini"], "", 1),
    (["report", "--records", "/nonexistent/r", "--schema", "matrix", "--format", "csv"], "", 1),
    (["report", "--records", "R", "--schema", "pie", "--format", "csv"], "", 2),
])
def test_exit_code_contract(sh, tmp_path, argv, stdin, expected):
    h = tmp_path / "h"
    h.write_text(md5("x").hex + "\n")
    argv = [str(h) if a == "HASHFILE" else str(tmp_path / "o") if a == "OUT" else a for a in argv]
    code, out, err = sh(argv, stdin)
    assert code == expected
    assert err.strip() and len(err.strip().splitlines()) <= 2
