"""Random collection generators shared by the tests."""
from __future__ import annotations

import itertools
import random


def random_collection(rng: random.Random, max_docs=8, max_len=64, alphabet=b"ACGTN",
                      power_frac=0.1, dup_frac=0.1) -> list[bytes]:
    docs = []
    for _ in range(rng.randint(1, max_docs)):
        roll = rng.random()
        if roll < dup_frac and docs:
            docs.append(rng.choice(docs))
        elif roll < dup_frac + power_frac:
            root_len = rng.randint(1, max(1, max_len // 2))
            root = bytes(rng.choice(alphabet) for _ in range(root_len))
            docs.append(root * rng.randint(2, max(2, max_len // root_len)))
        else:
            docs.append(bytes(rng.choice(alphabet) for _ in range(rng.randint(1, max_len))))
    return docs


def all_strings(alphabet: bytes, max_len: int):
    for n in range(1, max_len + 1):
        for t in itertools.product(alphabet, repeat=n):
            yield bytes(t)


def small_multisets(alphabet=b"ab", max_len=5, max_docs=3):
    strings = list(all_strings(alphabet, max_len))
    for m in range(1, max_docs + 1):
        for combo in itertools.combinations_with_replacement(strings, m):
            yield list(combo)


def mutated_copies(copies: int, length: int, rate: float, seed: int) -> list[bytes]:
    rng = random.Random(seed)
    base = bytes(rng.choice(b"ACGT") for _ in range(length))
    out = []
    for _ in range(copies):
        s = bytearray(base)
        for i in rng.sample(range(length), int(length * rate)):
            s[i] = rng.choice([c for c in b"ACGT" if c != s[i]])
        out.append(bytes(s))
    return out
