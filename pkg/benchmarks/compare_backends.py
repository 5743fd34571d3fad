"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/compare_backends.py [--seconds 2]

Each kernel runs for roughly ``--seconds`` per backend; the table reports
operations per second and the native speedup.
"""

from __future__ import annotations

import argparse
import os
import time

from pwbench.hashcore._backend import available, load

CHARSET = b"abcdefghijklmnopqrstuvwxyz0123456789"


def _rate(fn, seconds: float) -> float:
    done = 0
    start = time.perf_counter()
    while True:
        done += fn()
        elapsed = time.perf_counter() - start
        if elapsed >= seconds:
            return done / elapsed


def cases(k):
    salt = os.urandom(16)
    words = [b"pw%06d" % i for i in range(512)]
    blob = bytes(16)  # one unreachable target

    def md5_batch():
        k.hash_many(0, words)
        return len(words)

    def sha256_batch():
        k.hash_many(1, words)
        return len(words)

    def md5_crack(count=4096):
        k.crack_block(0, CHARSET, 5, 0, count, blob)
        return count

    def bcrypt_cost6():
        k.bcrypt_raw(b"password\x00", salt, 6)
        return 1

    def rainbow_walk():
        k.walk_chain(0, b"0123456789", b"0000", 0, 200, 0)
        return 200

    return {
        "md5 hash_many": md5_batch,
        "sha256 hash_many": sha256_batch,
        "md5 crack_block": md5_crack,
        "bcrypt cost 6": bcrypt_cost6,
        "rainbow chain step": rainbow_walk,
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seconds", type=float, default=2.0)
    args = ap.parse_args()
    backends = available()
    results = {b: {name: _rate(fn, args.seconds) for name, fn in cases(load(b)).items()} for b in backends}
    names = list(next(iter(results.values())))
    print(f"{'kernel':22s}" + "".join(f"{b + ' ops/s':>18s}" for b in backends) + ("  speedup" if len(backends) == 2 else ""))
    for name in names:
        row = f"{name:22s}" + "".join(f"{results[b][name]:18,.0f}" for b in backends)
        if {"native", "python"} <= set(backends):
            row += f"  {results['native'][name] / results['python'][name]:7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
