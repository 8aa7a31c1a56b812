"""Cyclic induced sorting: GCA and eBWT of a multiset without sentinels.

The heavy lifting lives in the kernel backends (see ``_backend``). The
step-level functions here (:func:`assign_types`, :func:`induced_sort`,
:func:`name_lms_substrings`) always run the pure-Python kernels so that
intermediate states can be inspected.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend
from . import _pykernels as pk
from .strings import (EbwtResult, GcaEntry, SeqCollection, as_bytes,
                      smallest_int_period, smallest_period)


@dataclass
class TypeArray:
    types: str  # one of "S"/"L" per position
    lms: list[bool]

    @property
    def lms_positions(self) -> list[int]:
        return [i + 1 for i, f in enumerate(self.lms) if f]


@dataclass
class LmsNaming:
    names: dict[GcaEntry, int]  # 0-based ranks in LMS-order
    all_distinct: bool
    reduced: list[list[int]]


def _symbols(T) -> list[int]:
    if isinstance(T, str):
        T = T.encode("ascii")
    return list(T)


def assign_types(T) -> TypeArray:
    text = _symbols(T)
    if len(text) < 2:
        raise ValueError("cyclic types need a string of length >= 2")
    stype = pk.classify(text, [0], [len(text)])
    prev, _ = pk.cyclic_links([0], [len(text)], len(text))
    lms = pk.lms_flags(stype, prev)
    return TypeArray("".join("S" if t else "L" for t in stype), [bool(f) for f in lms])


class _Flat:
    """A collection flattened for the kernels, with (pos, doc) conversions."""

    def __init__(self, seqs: Sequence):
        self.text = []
        self.starts = []
        self.lengths = []
        for s in seqs:
            self.starts.append(len(self.text))
            self.lengths.append(len(s))
            self.text.extend(_symbols(s))
        self.sigma = max(self.text, default=-1) + 1
        self._owner = np.repeat(np.arange(len(self.lengths)), self.lengths)

    def entry(self, g: int) -> GcaEntry:
        d = int(self._owner[g])
        return GcaEntry(g - self.starts[d] + 1, d + 1)

    def glob(self, e: GcaEntry) -> int:
        j, d = e
        if not (1 <= d <= len(self.lengths) and 1 <= j <= self.lengths[d - 1]):
            raise ValueError(f"invalid GCA entry {e}")
        return self.starts[d - 1] + j - 1


def _require_long(flat: _Flat):
    if any(n < 2 for n in flat.lengths):
        raise ValueError("induced sorting steps need documents of length >= 2")


def default_seeds(coll: SeqCollection) -> list[GcaEntry]:
    """LMS positions in the in-bucket order used by the first induced sort."""
    flat = _Flat(coll.seqs)
    _require_long(flat)
    stype = pk.classify(flat.text, flat.starts, flat.lengths)
    prev, _ = pk.cyclic_links(flat.starts, flat.lengths, len(flat.text))
    lms = pk.lms_flags(stype, prev)
    return [flat.entry(g) for g in pk.lms_seed_order(flat.starts, flat.lengths, lms)]


def induced_sort(coll: SeqCollection, seeds: Sequence[GcaEntry]) -> list[GcaEntry]:
    """One Induced Sorting pass; ``seeds`` are placed at bucket tails in order."""
    flat = _Flat(coll.seqs)
    _require_long(flat)
    text = flat.text
    stype = pk.classify(text, flat.starts, flat.lengths)
    prev, _ = pk.cyclic_links(flat.starts, flat.lengths, len(text))
    lms = pk.lms_flags(stype, prev)
    gseeds = [flat.glob(e) for e in seeds]
    for e, g in zip(seeds, gseeds):
        if not lms[g]:
            raise ValueError(f"seed {e} is not an LMS position")
    counts, starts = pk.bucket_starts(text, flat.sigma)
    A = pk.induce(text, prev, stype, counts, starts, gseeds)
    return [flat.entry(g) for g in A]


def name_lms_substrings(coll: SeqCollection, A: Sequence[GcaEntry]) -> LmsNaming:
    flat = _Flat(coll.seqs)
    _require_long(flat)
    text = flat.text
    stype = pk.classify(text, flat.starts, flat.lengths)
    prev, nxt = pk.cyclic_links(flat.starts, flat.lengths, len(text))
    lms = pk.lms_flags(stype, prev)
    names, count = pk.name_lms(text, nxt, lms, [flat.glob(e) for e in A])
    rtext, rstarts, rlengths, lms_all = pk.reduce_collection(
        flat.starts, flat.lengths, lms, names)
    return LmsNaming(
        names={flat.entry(g): names[g] for g in lms_all},
        all_distinct=count == len(lms_all),
        reduced=[rtext[s:s + n] for s, n in zip(rstarts, rlengths)],
    )


def sais_gca(coll: SeqCollection, backend: str | None = None) -> tuple[list[GcaEntry], list[int]]:
    """GCA and first-rotation index set of a multiset of primitive strings."""
    seqs = coll.seqs
    for h, s in enumerate(seqs, start=1):
        if smallest_period(s) != len(s):
            raise ValueError(f"document {h} is not primitive")
    if not seqs:
        return [], []
    pos, doc = conjugate_array(seqs, 256, backend=backend)
    gca = [GcaEntry(int(j) + 1, int(d) + 1) for j, d in zip(pos, doc)]
    return gca, [i + 1 for i, e in enumerate(gca) if e.pos == 1]


def conjugate_array(seqs: Sequence, sigma: int | None = None,
                    backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """GCA of an arbitrary multiset (powers allowed) as 0-based arrays.

    ``seqs`` holds byte strings or integer sequences. Each document is
    reduced to its root; roots are sorted, then expanded back. Roots are
    handed to the kernel ordered by (exponent, input index) so that equal
    conjugates of different documents tie-break the way omega-order does.
    """
    m = len(seqs)
    if m == 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    is_bytes = isinstance(seqs[0], (bytes, bytearray))
    lengths = np.array([len(s) for s in seqs], dtype=np.int64)
    if (lengths == 0).any():
        raise ValueError("empty document")
    periods = np.array([smallest_period(bytes(s)) if is_bytes else smallest_int_period(s)
                        for s in seqs], dtype=np.int64)
    exps = lengths // periods
    order = sorted(range(m), key=lambda h: (int(exps[h]), h))
    if is_bytes:
        text = np.frombuffer(b"".join(bytes(seqs[h][:periods[h]]) for h in order),
                             dtype=np.uint8).astype(np.int64)
    else:
        text = np.concatenate([np.asarray(seqs[h][:periods[h]], dtype=np.int64)
                               for h in order])
    if sigma is None:
        sigma = int(text.max()) + 1
    rl = periods[order]
    rstarts = np.zeros(m, dtype=np.int64)
    np.cumsum(rl[:-1], out=rstarts[1:])
    kern = _backend.get(backend)
    if kern.NAME == "python":
        g = kern.sais_flat(text.tolist(), rstarts.tolist(), rl.tolist(), sigma)
    else:
        g = kern.sais_flat(text, rstarts, rl, sigma)
    g = np.asarray(g, dtype=np.int64)
    hnew = np.searchsorted(rstarts, g, side="right") - 1
    j0 = g - rstarts[hnew]
    dorig = np.asarray(order, dtype=np.int64)[hnew]
    reps = exps[dorig]
    if (reps == 1).all():
        return j0, dorig
    idx = np.repeat(np.arange(g.size), reps)
    first = np.repeat(np.cumsum(reps) - reps, reps)
    t = np.arange(idx.size) - first
    return j0[idx] + t * periods[dorig[idx]], dorig[idx]


def ebwt(coll: SeqCollection, samples: bool = False,
         backend: str | None = None) -> EbwtResult:
    seqs = coll.seqs
    if not seqs:
        return EbwtResult(b"", [], [] if samples else None)
    pos, doc = conjugate_array(seqs, 256, backend=backend)
    return _result_from_arrays(seqs, pos, doc, samples)


def _result_from_arrays(seqs, pos, doc, samples):
    lengths = np.array([len(s) for s in seqs], dtype=np.int64)
    starts = np.zeros(len(seqs), dtype=np.int64)
    np.cumsum(lengths[:-1], out=starts[1:])
    flat = np.frombuffer(b"".join(seqs), dtype=np.uint8)
    prev = starts[doc] + (pos - 1) % lengths[doc]
    bwt = flat[prev]
    index_set = (np.flatnonzero(pos == 0) + 1).tolist()
    res = EbwtResult(bwt.tobytes(), index_set)
    if samples:
        res.samples = run_boundary_samples(bwt, pos, doc)
    return res


def run_boundary_samples(bwt: np.ndarray, pos: np.ndarray, doc: np.ndarray):
    n = bwt.size
    if n == 0:
        return []
    change = np.flatnonzero(bwt[1:] != bwt[:-1])
    keep = np.unique(np.concatenate(([0, n - 1], change, change + 1)))
    return [(int(i) + 1, GcaEntry(int(pos[i]) + 1, int(doc[i]) + 1)) for i in keep]


def bwt_single(T, backend: str | None = None) -> tuple[bytes, int]:
    res = ebwt(SeqCollection.from_seqs([as_bytes(T)]), backend=backend)
    return res.bwt, res.index_set[0]
