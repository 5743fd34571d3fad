import pytest

from pwbench.bench import Outcome, ReportError, RunRecord, render_report
from pwbench.bench.report import build_keyspace, build_matrix, parse_csv, parse_markdown_table, paper_matches, to_csv, to_markdown


def rec(pid, pw, attack, kind, outcome, seconds=1.0, **kw):
    return RunRecord(pid, pw, "md5", attack, attack, kind, outcome, seconds, 60.0, **kw)


def test_single_cell():
    table = build_matrix([rec(1, "aa1", "Brute-force Time", "brute", Outcome.CRACKED, 34.0)])
    assert table.rows == (("1", "aa1", "34s"),)


def test_cell_vocabulary():
    records = [
        rec(1, "x", "Brute", "brute", Outcome.CRACKED, 0.1),
        rec(2, "y", "Brute", "brute", Outcome.NOT_CRACKED, 60.0),
        rec(3, "z", "Brute", "brute", Outcome.ESTIMATED, 60.0, projected_seconds=7200.0, rate_basis=1e6),
        rec(1, "x", "Dict", "dict", Outcome.CRACKED),
        rec(2, "y", "Dict", "dict", Outcome.NOT_CRACKED),
        rec(3, "z", "Dict", "dict", Outcome.NOT_CRACKED),
    ]
    rows = build_matrix(records).rows
    assert [r[2] for r in rows] == ["<1s", ">1min", ">1min (est. 2h)"]
    assert [r[3] for r in rows] == ["1", "0", "0"]


def test_keyspace_table():
    table = build_keyspace({"md5": 1e6}, "paper69")
    counts = [r[1] for r in table.rows]
    assert counts[:3] == ["69", "4761", "328509"]
    flags = {int(r[0]): r[3] for r in table.rows}
    assert [l for l, f in flags.items() if f != "yes"] == [5, 6, 8, 9]


def test_paper_value_rounding():
    assert paper_matches(4, 69**4) and paper_matches(7, 69**7) and not paper_matches(5, 69**5)


def test_markdown_roundtrips_through_csv():
    records = [rec(1, "a|b", "Brute", "brute", Outcome.CRACKED, 5.0),
               rec(2, 'q"uote,comma', "Brute", "brute", Outcome.NOT_CRACKED, 60.0),
               rec(3, "back\\slash", "Brute", "brute", Outcome.NOT_CRACKED, 60.0)]
    table = build_matrix(records)
    from_md = parse_markdown_table(to_markdown(table))
    from_csv = parse_csv(to_csv(table))
    assert from_md == from_csv == [list(r) for r in table.all_rows()]


def test_render_errors():
    with pytest.raises(ReportError):
        render_report([], "matrix", "csv")
    with pytest.raises(ReportError):
        render_report([rec(1, "x", "B", "brute", Outcome.CRACKED)], "keyspace", "md")
    with pytest.raises(ValueError):
        render_report([rec(1, "x", "B", "brute", Outcome.CRACKED)], "pie", "md")
