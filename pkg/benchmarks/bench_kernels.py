"""Time the compiled and pure-Python kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--copies 8] [--length 20000] [--repeat 3]

Input: mutated copies of a random DNA seed (0.1% substitutions per copy).
Reports the best of ``--repeat`` runs for the direct SAIS path, the PFP path
and the hash kernel, plus the speedup of each backend over the fallback.
"""
from __future__ import annotations

import argparse
import random
import time

from omegabwt import _backend
from omegabwt.pfp.merge import pfp_ebwt
from omegabwt.pfp.parse import window_hashes
from omegabwt.sais import ebwt
from omegabwt.strings import SeqCollection


def mutated_copies(copies: int, length: int, rate: float, seed: int) -> SeqCollection:
    rng = random.Random(seed)
    base = bytes(rng.choice(b"ACGT") for _ in range(length))
    docs = []
    for _ in range(copies):
        s = bytearray(base)
        for i in rng.sample(range(length), int(length * rate)):
            s[i] = rng.choice([c for c in b"ACGT" if c != s[i]])
        docs.append(bytes(s))
    return SeqCollection.from_seqs(docs)


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--copies", type=int, default=8)
    ap.add_argument("--length", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    coll = mutated_copies(args.copies, args.length, 0.001, args.seed)
    first = coll.seqs[0]
    tasks = {
        "sais_direct": lambda b: ebwt(coll, backend=b),
        "pfp_w10_p100": lambda b: pfp_ebwt(coll, w=10, p=100, backend=b),
        "kr_hashes": lambda b: window_hashes(first, 10, backend=b),
    }
    backends = _backend.available()
    print(f"N={coll.N} m={coll.m} backends={','.join(backends)}")
    print(f"{'task':<14}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in tasks.items():
        times = {b: best_of(lambda: fn(b), args.repeat) for b in backends}
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        row = "".join(f"{times[b]:>11.3f}s" for b in backends)
        print(f"{name:<14}{row}{speed:>9.1f}x")


if __name__ == "__main__":
    main()
