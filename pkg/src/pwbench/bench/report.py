"""Report tables in the cracking-matrix and keyspace-time shapes, as CSV or Markdown."""

from __future__ import annotations

import csv
import enum
import io
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from pwbench.attack.charset import Charset, LengthRange, keyspace_size
from pwbench.attack.throughput import estimate_time, format_duration
from pwbench.bench.runner import Outcome, RunRecord

# Published keyspace column for the 69-symbol charset, lengths 1..9.
PAPER_KEYSPACE = {
    1: "69", 2: "4,761", 3: "≈0.33M", 4: "≈22.7M", 5: "≈15.6B",
    6: "≈1079.2B", 7: "≈7.4T", 8: "≈51.3T", 9: "≈3,540T",
}
_SCALE = {"": 1, "K": 10**3, "M": 10**6, "B": 10**9, "T": 10**12}


class Schema(str, enum.Enum):
    MATRIX = "matrix"
    KEYSPACE = "keyspace"


class Format(str, enum.Enum):
    CSV = "csv"
    MARKDOWN = "md"


class ReportError(ValueError):
    pass


@dataclass(frozen=True)
class ReportTable:
    schema: Schema
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    footer: tuple[tuple[str, ...], ...] = ()

    def all_rows(self) -> list[tuple[str, ...]]:
        return [self.header, *self.rows, *self.footer]


def paper_value(text: str) -> float:
    m = re.fullmatch(r"≈?\s*([\d,]+(?:\.\d+)?)\s*([KMBT]?)", text.strip())
    if not m:
        raise ValueError(f"unrecognized keyspace value {text!r}")
    return float(m.group(1).replace(",", "")) * _SCALE[m.group(2)]


def paper_matches(length: int, exact: int, rel_tol: float = 0.05) -> bool:
    """Whether the published keyspace for ``length`` agrees with ``exact`` up to its rounding."""
    return abs(paper_value(PAPER_KEYSPACE[length]) - exact) <= rel_tol * exact


def _brute_cell(r: RunRecord) -> str:
    if r.outcome is Outcome.CRACKED:
        return format_duration(r.seconds)
    cell = f">{format_duration(r.budget)}"
    if r.outcome is Outcome.ESTIMATED and r.projected_seconds is not None:
        cell += f" (est. {format_duration(r.projected_seconds)})"
    return cell


def _dict_cell(r: RunRecord) -> str:
    return "1" if r.outcome is Outcome.CRACKED else "0"


def build_matrix(records: Sequence[RunRecord], cells: Sequence[dict] = ()) -> ReportTable:
    if not records:
        raise ReportError("no records")
    algs = list(dict.fromkeys(r.algorithm for r in records))
    multi = len(algs) > 1
    columns: list[tuple[str, str]] = list(dict.fromkeys((r.algorithm, r.attack) for r in records))
    labels = {(r.algorithm, r.attack): r.label for r in records}
    kinds = {(r.algorithm, r.attack): r.kind for r in records}
    passwords = {}
    grid: dict[tuple[int, str, str], RunRecord] = {}
    for r in records:
        passwords[r.password_id] = r.password
        grid[(r.password_id, r.algorithm, r.attack)] = r
    header = ("No.", "Password", *[f"{a} {labels[c]}" if multi else labels[c] for c in columns for a in [c[0]]])
    rows = []
    for pid in sorted(passwords):
        row = [str(pid), passwords[pid]]
        for c in columns:
            r = grid.get((pid, *c))
            if r is None:
                row.append("")
            else:
                row.append(_brute_cell(r) if kinds[c] == "brute" else _dict_cell(r))
        rows.append(tuple(row))
    footer = []
    by_cell = {(c["algorithm"], c["attack"]): c for c in cells}
    if by_cell:
        footer.append(("Attack Completion Time", "", *[
            format_duration(by_cell[c]["elapsed"]) if c in by_cell else "" for c in columns]))
        depth = max((len(by_cell[c]["checkpoint_rates"]) for c in columns if c in by_cell), default=0)
        for i in range(depth):
            line = []
            stamp = ""
            for c in columns:
                cps = by_cell.get(c, {}).get("checkpoint_rates", [])
                if i < len(cps) and kinds[c] == "brute":
                    stamp = stamp or format_duration(cps[i][0])
                    line.append(f"{cps[i][1]:.0f} p/s")
                else:
                    line.append("")
            if any(line):
                footer.append((f"Real-time Cracking Speed ({stamp})", "", *line))
    return ReportTable(Schema.MATRIX, header, tuple(rows), tuple(footer))


def build_keyspace(rates: dict[str, float], charset: "Charset | str" = "paper69",
                   lengths: LengthRange = LengthRange(1, 9)) -> ReportTable:
    """One row per length: exact keyspace, the published value where one exists, and projected times."""
    if not rates:
        raise ReportError("keyspace report needs at least one measured rate")
    cs = Charset.parse(charset)
    compare = len(cs) == 69
    algs = list(rates)
    header = ["Password Length", "Character Combination Count"]
    if compare:
        header += ["Published Count", "Published Consistent"]
    header += [f"Brute-force {a} Time" for a in algs]
    rows = []
    for length in range(lengths.min_len, lengths.max_len + 1):
        exact = keyspace_size(cs, LengthRange(length, length), cumulative=False)
        row = [str(length), str(exact)]
        if compare:
            if length in PAPER_KEYSPACE:
                row += [PAPER_KEYSPACE[length], "yes" if paper_matches(length, exact) else "no (flagged)"]
            else:
                row += ["", ""]
        for a in algs:
            secs = exact / rates[a]
            row.append(format_duration(secs) if secs < 1 else format_duration(estimate_time(exact, rates[a]), estimated=True))
        rows.append(tuple(row))
    footer = (("Measured rate", "", *([""] * 2 if compare else []), *[f"{rates[a]:.1f} p/s" for a in algs]),)
    return ReportTable(Schema.KEYSPACE, tuple(header), tuple(rows), footer)


def to_csv(table: ReportTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerows(table.all_rows())
    return buf.getvalue()


def _md_escape(cell: str) -> str:
    return cell.replace("\\", "\\\\").replace("|", "\\|")


def to_markdown(table: ReportTable) -> str:
    lines = ["| " + " | ".join(_md_escape(c) for c in table.header) + " |",
             "|" + "|".join("---" for _ in table.header) + "|"]
    for row in (*table.rows, *table.footer):
        lines.append("| " + " | ".join(_md_escape(c) for c in row) + " |")
    return "\n".join(lines) + "\n"


def parse_markdown_table(text: str) -> list[list[str]]:
    """Cells of a pipe table, separator row dropped and escapes undone."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line.startswith("|"):
            continue
        cells, cur, i = [], [], 1
        while i < len(line):
            ch = line[i]
            if ch == "\\" and i + 1 < len(line):
                cur.append(line[i + 1])
                i += 2
                continue
            if ch == "|":
                cells.append("".join(cur).strip())
                cur = []
            else:
                cur.append(ch)
            i += 1
        if all(re.fullmatch(r":?-{3,}:?", c) for c in cells):
            continue
        rows.append(cells)
    return rows


def parse_csv(text: str) -> list[list[str]]:
    return [row for row in csv.reader(io.StringIO(text))]


def render_table(table: ReportTable, fmt: "Format | str") -> str:
    fmt = Format(fmt)
    return to_csv(table) if fmt is Format.CSV else to_markdown(table)


def brute_rates(cells: Iterable[dict]) -> dict[str, float]:
    """Per-algorithm guess rate from finished brute-force cells (projection basis)."""
    rates = {}
    for c in cells:
        if c.get("kind") == "brute" and c.get("rate_basis"):
            rates.setdefault(c["algorithm"], c["rate_basis"])
    return rates


def render_report(records: Sequence[RunRecord], schema: "Schema | str", fmt: "Format | str",
                  cells: Sequence[dict] = (), lengths: LengthRange = LengthRange(1, 9)) -> str:
    schema = Schema(schema)
    if schema is Schema.MATRIX:
        if not records:
            raise ReportError("matrix report needs run records")
        return render_table(build_matrix(records, cells), fmt)
    brute = [c for c in cells if c.get("kind") == "brute"]
    if not brute:
        raise ReportError("keyspace report needs finished brute-force cells in the records file")
    return render_table(build_keyspace(brute_rates(brute), brute[0].get("charset") or "paper69", lengths), fmt)
