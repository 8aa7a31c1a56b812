"""Brute-force references used as ground truth by the tests and ``check``.

Nothing here shares code with the induced-sorting path: conjugates are
materialised explicitly and sorted by an omega-order key.
"""
from __future__ import annotations

from .strings import (EbwtResult, GcaEntry, SeqCollection, as_bytes,
                      ebwt_from_gca, root_and_exponent)


def _omega_key(conj: bytes, exponent: int, width: int):
    # Conjugates with different roots differ within |S| + |T| <= width symbols.
    reps = width // len(conj) + 1
    return (conj * reps)[:width], exponent


def oracle_gca(coll: SeqCollection) -> list[GcaEntry]:
    seqs = coll.seqs
    if not seqs:
        return []
    width = 2 * max(len(s) for s in seqs)
    keyed = []
    for d, T in enumerate(seqs, start=1):
        exponent = root_and_exponent(T).exponent
        for j in range(1, len(T) + 1):
            conj = T[j - 1:] + T[:j - 1]
            keyed.append((_omega_key(conj, exponent, width), d, j))
    keyed.sort()
    return [GcaEntry(j, d) for _, d, j in keyed]


def oracle_ebwt(coll: SeqCollection) -> EbwtResult:
    return ebwt_from_gca(coll, oracle_gca(coll))


def naive_bwt(T) -> tuple[bytes, int]:
    """Last column of the sorted rotation matrix, ties by rotation index."""
    T = as_bytes(T)
    rows = sorted(range(len(T)), key=lambda i: (T[i:] + T[:i], i))
    bwt = bytes(T[i - 1] for i in rows)
    return bwt, rows.index(0) + 1
