"""Command-line entry point.

Exit codes: 0 success, 1 operational failure, 2 usage error. Passwords are
read from standard input (or a file), never from argv.
"""

from __future__ import annotations

import argparse
import logging
import os
import random
import signal
import sys
import threading
import time
from pathlib import Path

from pwbench.hashcore import Algorithm, BcryptError, InvalidCost, bcrypt_hash, hash_message
from pwbench.hashcore.bcrypt import check_cost

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
POTFILE_ENV = "PWBENCH_POTFILE"
DEFAULT_POTFILE = "pwbench.pot"

log = logging.getLogger("pwbench")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # one-line diagnostic, exit 2
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _input_lines(source: str) -> list[str]:
    data = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    lines = data.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line.rstrip("\r") for line in lines]


# -- hash ------------------------------------------------------------------

def cmd_hash(args) -> int:
    alg = Algorithm.parse(args.alg)
    salt = None
    if alg is Algorithm.BCRYPT:
        try:
            check_cost(args.cost)
        except InvalidCost as exc:
            raise UsageError(str(exc)) from None
        if args.salt is not None:
            try:
                salt = bytes.fromhex(args.salt)
            except ValueError:
                raise UsageError("--salt must be hex") from None
            if len(salt) != 16:
                raise UsageError("--salt must be 16 bytes (32 hex digits)")
    elif args.salt is not None:
        raise UsageError("--salt applies to bcrypt only")
    for line in _input_lines(args.input):
        if alg is Algorithm.BCRYPT:
            print(bcrypt_hash(line, salt=salt, cost=args.cost).text)
        else:
            print(hash_message(alg, line).hex)
    return EXIT_OK


# -- crack -----------------------------------------------------------------

def _potfile_path(arg: str | None) -> Path:
    return Path(arg or os.environ.get(POTFILE_ENV) or DEFAULT_POTFILE)


def _stop_on_sigint() -> threading.Event:
    stop = threading.Event()
    if threading.current_thread() is threading.main_thread():
        signal.signal(signal.SIGINT, lambda *_: stop.set())
    return stop


def cmd_crack(args) -> int:
    from pwbench.attack import Potfile, RuleSet, brute_force, dictionary_attack, read_hashfile
    from pwbench.attack.charset import Charset, LengthRange
    from pwbench.attack.rainbow import RainbowTable
    from pwbench.attack.targets import target_text

    try:
        targets = read_hashfile(args.hashfile, args.alg)
    except OSError as exc:
        print(f"pwbench: cannot read hashfile: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    potfile = Potfile(_potfile_path(args.potfile))
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    stop = _stop_on_sigint()
    common = dict(workers=args.workers, budget=args.budget, on_crack=potfile.append, stop=stop,
                  checkpoint_every=args.checkpoint)
    if args.mode == "brute":
        try:
            cs = Charset.parse(args.charset)
            lr = LengthRange(args.min, args.max)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        report = brute_force(targets, None, cs, lr, **common)
    elif args.mode == "dict":
        if not args.wordlist:
            raise UsageError("--mode dict needs --wordlist")
        try:
            rules = RuleSet.parse(args.rules)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        report = dictionary_attack(targets, None, args.wordlist, rules, **common)
    else:
        if not args.table:
            raise UsageError("--mode rainbow needs --table")
        table = RainbowTable.load(args.table)
        start = time.perf_counter()
        found = {}
        for t in targets:
            plain = table.lookup(t)
            if plain is not None:
                found[t] = plain
                potfile.append(t, plain)
        from pwbench.attack.engine import AttackReport

        report = AttackReport(cracked=found, guesses=0, elapsed=time.perf_counter() - start,
                              exhausted=True, source="rainbow")
    for t, plain in report.cracked.items():
        print(f"{target_text(t)}\t{plain}")
    print(f"summary mode={args.mode} targets={len(targets)} {report.summary()}")
    return EXIT_OK


# -- rainbow ---------------------------------------------------------------

def cmd_rainbow(args) -> int:
    from pwbench.attack.rainbow import RainbowTable, UnsupportedAlgorithm, build_rainbow_table
    from pwbench.hashcore import Digest

    if args.rainbow_cmd == "build":
        try:
            table = build_rainbow_table(args.alg, args.charset, args.length, args.chains, args.chain_length,
                                        seed=args.seed, table_index=args.table_index, measure=not args.no_coverage)
        except UnsupportedAlgorithm as exc:
            raise UsageError(str(exc)) from None
        table.save(args.out)
        cov = "n/a" if table.coverage is None else f"{table.coverage:.4f}"
        print(f"summary table={args.out} chains={len(table.chains)} chain_length={table.chain_length} "
              f"keyspace={table.keyspace} coverage={cov}")
        return EXIT_OK
    table = RainbowTable.load(args.table)
    hits = 0
    lines = [ln.strip() for ln in _input_lines(args.input) if ln.strip()]
    for text in lines:
        try:
            dg = Digest.from_hex(text, table.algorithm)
        except ValueError as exc:
            raise UsageError(f"bad digest {text!r}: {exc}") from None
        plain = table.lookup(dg)
        if plain is not None:
            hits += 1
            print(f"{dg.hex}\t{plain}")
    print(f"summary lookups={len(lines)} hits={hits}")
    return EXIT_OK


# -- defend ----------------------------------------------------------------

def cmd_defend(args) -> int:
    from pwbench.defense import HoneycheckerServer

    if args.defend_cmd == "serve-checker":
        server = HoneycheckerServer(args.socket)
        print(f"summary socket={server.socket_path} pubkey={server.checker.public_key.hex()}", flush=True)
        signal.signal(signal.SIGTERM, lambda *_: threading.Thread(target=server.shutdown).start())
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
        finally:
            server.server_close()
            for p in (server.socket_path, server.pubkey_path):
                p.unlink(missing_ok=True)
        return EXIT_OK
    return _defend_demo(args)


def _defend_demo(args) -> int:
    from pwbench.defense import (
        Authenticator,
        CredentialStore,
        Honeychecker,
        HoneycheckerClient,
        RiskContext,
        UserBaseline,
        register_user,
    )

    rng = random.Random(args.seed)
    store = CredentialStore(default_k=args.k, default_cost=args.cost)
    checker = HoneycheckerClient(args.checker) if args.checker else Honeychecker()
    password = "correct-horse-battery"
    record = register_user(store, checker, "alice", password, seed=rng)
    auth = Authenticator(store, checker)
    now = time.time()
    hour = time.gmtime(now).tm_hour
    home = UserBaseline(frozenset({hour}), frozenset({"US-CA"}), frozenset({"laptop-1"}), frozenset({"home-isp"}))
    usual = RiskContext(now, "US-CA", "laptop-1", "home-isp", home)
    new_device = RiskContext(now, "US-CA", "phone-9", "cafe-wifi", home)
    abroad = RiskContext(now, "XX", "unknown", "unknown", home)

    # an attacker who cracked the store offline cannot tell which sweetword is real
    from pwbench.hashcore import bcrypt_check

    decoys = []
    from pwbench.defense.honeywords import generate_honeywords

    for cand in generate_honeywords(password, 64, seed=rng):
        if cand != password and any(bcrypt_check(cand, r) for r in record.sweetword_records):
            decoys.append(cand)
            break

    steps = [("real password, usual context", password, usual),
             ("real password, new device", password, new_device),
             ("real password, abroad", password, abroad)]
    if decoys:
        steps.append(("cracked honeyword", decoys[0], usual))
    steps += [(f"wrong password #{i}", "not-the-password", usual) for i in range(1, 6)]
    steps.append(("real password while locked", password, usual))
    for label, pw, ctx in steps:
        out = auth.login("alice", pw, ctx, now)
        ev = out.events[-1]
        print(f"{label:32s} -> {out.response.value:15s} [{ev.kind.value}] {ev.detail}")
        if out.challenge is not None:
            done = auth.complete_mfa(out.challenge, out.challenge.code, now)
            print(f"{'  mfa code submitted':32s} -> {done.response.value:15s} [{done.events[-1].kind.value}]")
    if args.log:
        Path(args.log).write_text("".join(e.to_line() + "\n" for e in auth.log.snapshot()), encoding="utf-8")
    print(f"summary users={len(store)} k={record.k} events={len(auth.log)}")
    return EXIT_OK


# -- bench / report --------------------------------------------------------

def cmd_bench(args) -> int:
    from pwbench.bench import PlanError, load_plan, run_experiment
    from pwbench.bench.plan import desk_plan_text
    from pwbench.bench.runner import ExperimentError

    if args.bench_cmd == "init-plan":
        path = Path(args.path)
        if path.exists() and not args.force:
            print(f"pwbench: {path} exists (use --force)", file=sys.stderr)
            return EXIT_FAILURE
        path.write_text(desk_plan_text(), encoding="utf-8")
        print(f"summary plan={path}")
        return EXIT_OK
    try:
        plan = load_plan(args.plan)
    except PlanError as exc:
        print(f"pwbench: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    if args.output_dir:
        from dataclasses import replace

        plan = replace(plan, output_dir=Path(args.output_dir))
    stop = _stop_on_sigint()
    try:
        records = run_experiment(plan, stop=stop, progress=lambda m: print(m, file=sys.stderr, flush=True))
    except ExperimentError as exc:
        print(f"pwbench: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    cracked = sum(r.outcome.value == "cracked" for r in records)
    print(f"summary records={len(records)} cracked={cracked} journal={plan.output_dir / 'records.jsonl'}")
    return EXIT_FAILURE if stop.is_set() else EXIT_OK


def cmd_report(args) -> int:
    from pwbench.attack.charset import LengthRange
    from pwbench.bench import ReportError, load_cells, load_records, render_report

    path = Path(args.records)
    if not path.exists():
        print(f"pwbench: no such records file {path}", file=sys.stderr)
        return EXIT_FAILURE
    try:
        text = render_report(load_records(path), args.schema, args.format, load_cells(path),
                             LengthRange(args.min, args.max))
    except ReportError as exc:
        print(f"pwbench: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    sys.stdout.write(text)
    return EXIT_OK


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pwbench", description="Password hashing, cracking and defense workbench.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    h = sub.add_parser("hash", help="hash passwords read one per line")
    h.add_argument("--alg", required=True, choices=["md5", "sha256", "bcrypt"])
    h.add_argument("--cost", type=int, default=10, help="bcrypt cost (4..31)")
    h.add_argument("--salt", help="bcrypt salt as 32 hex digits (random if omitted)")
    h.add_argument("input", nargs="?", default="-", help="file of passwords, or - for stdin")
    h.set_defaults(func=cmd_hash)

    c = sub.add_parser("crack", help="attack a hashfile")
    c.add_argument("--mode", required=True, choices=["brute", "dict", "rainbow"])
    c.add_argument("--hashfile", required=True)
    c.add_argument("--alg", choices=["md5", "sha256", "bcrypt"], help="force the target algorithm")
    c.add_argument("--charset", default="paper69", help="preset (lower, digits, paper69, full70, ...) or literal")
    c.add_argument("--min", type=int, default=1, help="minimum candidate length")
    c.add_argument("--max", type=int, default=4, help="maximum candidate length")
    c.add_argument("--wordlist")
    c.add_argument("--rules", default="identity", help="comma-separated rules, e.g. identity,capitalize,best")
    c.add_argument("--table", help="rainbow table file")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--budget", type=float, help="seconds before giving up")
    c.add_argument("--checkpoint", type=float, default=60.0, help="seconds between rate checkpoints")
    c.add_argument("--potfile", help=f"crack journal (default ${POTFILE_ENV} or {DEFAULT_POTFILE})")
    c.set_defaults(func=cmd_crack)

    r = sub.add_parser("rainbow", help="build or query rainbow tables")
    rsub = r.add_subparsers(dest="rainbow_cmd", required=True, parser_class=_Parser)
    rb = rsub.add_parser("build")
    rb.add_argument("--alg", required=True, choices=["md5", "sha256", "bcrypt"])
    rb.add_argument("--charset", default="digits")
    rb.add_argument("--length", type=int, required=True)
    rb.add_argument("--chains", type=int, required=True)
    rb.add_argument("--chain-length", type=int, required=True)
    rb.add_argument("--seed", type=int, default=0)
    rb.add_argument("--table-index", type=int, default=0)
    rb.add_argument("--no-coverage", action="store_true", help="skip the coverage measurement")
    rb.add_argument("--out", required=True)
    rl = rsub.add_parser("lookup")
    rl.add_argument("--table", required=True)
    rl.add_argument("input", nargs="?", default="-", help="file of hex digests, or - for stdin")
    r.set_defaults(func=cmd_rainbow)

    d = sub.add_parser("defend", help="authentication simulation and honeychecker")
    dsub = d.add_subparsers(dest="defend_cmd", required=True, parser_class=_Parser)
    dd = dsub.add_parser("demo")
    dd.add_argument("--k", type=int, default=8)
    dd.add_argument("--cost", type=int, default=6)
    dd.add_argument("--seed", type=int, default=0)
    dd.add_argument("--checker", help="unix socket of a running honeychecker (in-process if omitted)")
    dd.add_argument("--log", help="write the event log here")
    ds = dsub.add_parser("serve-checker")
    ds.add_argument("--socket", required=True)
    d.set_defaults(func=cmd_defend)

    b = sub.add_parser("bench", help="run an experiment plan")
    bsub = b.add_subparsers(dest="bench_cmd", required=True, parser_class=_Parser)
    br = bsub.add_parser("run")
    br.add_argument("--plan", required=True)
    br.add_argument("--output-dir", help="override the plan's output_dir")
    bi = bsub.add_parser("init-plan", help="write the default desk-scale plan")
    bi.add_argument("path")
    bi.add_argument("--force", action="store_true")
    b.set_defaults(func=cmd_bench)

    rp = sub.add_parser("report", help="render a results journal")
    rp.add_argument("--records", required=True)
    rp.add_argument("--schema", required=True, choices=["matrix", "keyspace"])
    rp.add_argument("--format", required=True, choices=["csv", "md"])
    rp.add_argument("--min", type=int, default=1, help="first length (keyspace schema)")
    rp.add_argument("--max", type=int, default=9, help="last length (keyspace schema)")
    rp.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pwbench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, BcryptError, ValueError) as exc:
        print(f"pwbench: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
