"""eBWT of a collection from its cyclic prefix-free parse.

The parse is sorted with the cyclic induced-sorting kernel; the text eBWT is
then produced one block per dictionary suffix, in lexicographic suffix
order. Inside a block, occurrences are taken in the order their phrase
appears in the eBWT of the parse.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .. import _backend
from ..sais import conjugate_array
from ..strings import EbwtResult, GcaEntry, SeqCollection, smallest_period
from .parse import (PfpError, PfpOutput, TriggerConfig, parse_collection,
                    select_remainders, sorted_suffixes)


@dataclass
class ParseEbwt:
    """eBWT of the parse plus the bookkeeping the merge needs.

    Position ``p`` (0-based) stands for the parse conjugate that follows
    phrase occurrence ``origin_idx[p]`` of document ``origin_doc[p]``;
    ``ebwt_p[p]`` is the rank of that phrase occurrence.
    """

    ebwt_p: np.ndarray
    origin_doc: np.ndarray
    origin_idx: np.ndarray
    occ_bounds: np.ndarray
    occ_pos: np.ndarray
    start_off: np.ndarray  # 0-based owned offset of a document start, else -1

    def occ(self, rank: int) -> list[int]:
        """1-based positions of phrase ``rank`` in the parse eBWT."""
        lo, hi = self.occ_bounds[rank - 1], self.occ_bounds[rank]
        return (self.occ_pos[lo:hi] + 1).tolist()

    @property
    def start_flags(self) -> dict[int, int]:
        """1-based parse-eBWT position -> 1-based offset of a document start."""
        return {int(p) + 1: int(k) + 1 for p, k in enumerate(self.start_off) if k >= 0}


def ebwt_of_parse(parses: Sequence[Sequence[int]], start_marks: Sequence[tuple[int, int]],
                  dict_size: int | None = None, backend: str | None = None) -> ParseEbwt:
    if not parses:
        raise ValueError("empty parse")
    if dict_size is None:
        dict_size = max(max(p) for p in parses)
    arrs = [np.asarray(p, dtype=np.int64) for p in parses]
    pos, doc = conjugate_array(arrs, dict_size + 1, backend=backend)
    plen = np.array([a.size for a in arrs], dtype=np.int64)
    pstart = np.zeros(len(arrs), dtype=np.int64)
    np.cumsum(plen[:-1], out=pstart[1:])
    flat = np.concatenate(arrs)
    idx = (pos - 1) % plen[doc]
    ebwt_p = flat[pstart[doc] + idx]
    occ_pos = np.argsort(ebwt_p, kind="stable")
    occ_bounds = np.zeros(dict_size + 1, dtype=np.int64)
    np.cumsum(np.bincount(ebwt_p - 1, minlength=dict_size), out=occ_bounds[1:])
    start_off = np.full(ebwt_p.size, -1, dtype=np.int64)
    where = np.empty(flat.size, dtype=np.int64)
    where[pstart[doc] + idx] = np.arange(ebwt_p.size)
    for h, (i, k) in enumerate(start_marks):
        start_off[where[pstart[h] + i - 1]] = k - 1
    return ParseEbwt(ebwt_p, doc, idx, occ_bounds, occ_pos, start_off)


def preceding_byte(pe: ParseEbwt, parses, dictionary, w: int, p: int, k: int) -> int:
    """Byte preceding offset ``k`` of the phrase at parse-eBWT position ``p``.

    Both arguments 1-based. For ``k > 1`` it lies inside the phrase; for
    ``k == 1`` it is the last owned byte of the previous phrase of the same
    document.
    """
    rank = int(pe.ebwt_p[p - 1])
    phrase = dictionary[rank - 1]
    if not 1 <= k <= len(phrase) - w:
        raise ValueError(f"offset {k} outside the owned range of phrase {rank}")
    if k > 1:
        return phrase[k - 2]
    h, i = int(pe.origin_doc[p - 1]), int(pe.origin_idx[p - 1])
    prev = dictionary[parses[h][i - 1] - 1]  # i - 1 == -1 wraps
    return prev[len(prev) - w - 1]


def merge(out: PfpOutput, pe: ParseEbwt, weights: Sequence[int] | None = None,
          samples: bool = False, backend: str | None = None) -> EbwtResult:
    """Assemble the text eBWT from the parse eBWT and the dictionary.

    ``weights[h]`` repeats every conjugate of document ``h`` that many times
    (the exponent when the parsed documents are roots of powers).
    """
    w = out.w
    dictionary = out.dict
    ndict = len(dictionary)
    m = len(out.parses)
    weights = np.ones(m, dtype=np.int64) if weights is None else np.asarray(weights, np.int64)
    plen = np.array([len(d) for d in dictionary], dtype=np.int64)
    dict_off = np.zeros(ndict, dtype=np.int64)
    np.cumsum(plen[:-1], out=dict_off[1:])
    dict_bytes = b"".join(dictionary)

    phrase, offset, bounds = sorted_suffixes(dictionary, w, backend)

    weight = weights[pe.origin_doc]
    parse_len = np.array([len(p) for p in out.parses], dtype=np.int64)
    pstart = np.zeros(m, dtype=np.int64)
    np.cumsum(parse_len[:-1], out=pstart[1:])
    flat_parse = np.concatenate([np.asarray(p, dtype=np.int64) for p in out.parses]) - 1
    prev_rank = flat_parse[pstart[pe.origin_doc] + (pe.origin_idx - 1) % parse_len[pe.origin_doc]]
    dict_arr = np.frombuffer(dict_bytes, dtype=np.uint8)
    prev_char = dict_arr[dict_off[prev_rank] + plen[prev_rank] - w - 1].astype(np.int64)

    rank0 = pe.ebwt_p - 1
    phrase_weight = np.bincount(rank0, weights=weight, minlength=ndict).astype(np.int64)
    phrase_flagged = np.zeros(ndict, dtype=np.uint8)
    phrase_flagged[rank0[pe.start_off >= 0]] = 1

    kern = _backend.get(backend)
    args = (bounds, phrase, offset, dict_bytes, dict_off, pe.occ_bounds, pe.occ_pos,
            phrase_weight, phrase_flagged, weight, prev_char, pe.start_off, bool(samples))
    if kern.NAME == "python":
        args = tuple(a.tolist() if isinstance(a, np.ndarray) else a for a in args)
    bwt, starts, segs = kern.merge_blocks(*args)

    index_set = [int(o) + 1 for o, _ in starts]
    res = EbwtResult(bytes(bwt), index_set)
    if samples:
        res.samples = _segment_samples(out, pe, weights, segs)
    return res


def _segment_samples(out: PfpOutput, pe: ParseEbwt, weights, segs):
    root_len = out.lengths

    def entry(p, k, last):
        h = int(pe.origin_doc[p])
        q = root_len[h]
        j = (out.phrase_starts[h][int(pe.origin_idx[p])] - 1 + k) % q
        if last:
            j += (int(weights[h]) - 1) * q
        return GcaEntry(j + 1, h + 1)

    res = []
    for o, ln, pf, kf, pl, kl in segs:
        res.append((int(o) + 1, entry(int(pf), int(kf), False)))
        if ln > 1:
            res.append((int(o) + int(ln), entry(int(pl), int(kl), True)))
    return res


def pfp_ebwt(coll: SeqCollection, w: int = 10, p: int = 100, triggers=None,
             samples: bool = False, threads: int = 1,
             backend: str | None = None, keep: dict | None = None) -> EbwtResult:
    """Full pipeline: roots, remainder selection, parse, parse eBWT, merge.

    Powers are parsed through their roots and expanded in the merge.
    ``keep``, when given, receives the ``PfpOutput`` under ``"parse"``.
    """
    seqs = coll.seqs
    if not seqs:
        return EbwtResult(b"", [], [] if samples else None)
    periods = [smallest_period(s) for s in seqs]
    exps = [len(s) // q for s, q in zip(seqs, periods)]
    roots = [s[:q] for s, q in zip(seqs, periods)]
    for h, r in enumerate(roots, start=1):
        if len(r) < w:
            raise PfpError(f"document {h}: primitive root of length {len(r)} is shorter than w={w}")
    if triggers is not None:
        cfg = TriggerConfig(w=w, p=p, explicit_triggers=triggers)
    else:
        rem = select_remainders(SeqCollection.from_seqs(roots), w, p, backend)
        cfg = TriggerConfig(w=w, p=p, remainders=rem)
    # Ties between equal conjugates of different documents go by exponent first.
    order = sorted(range(len(seqs)), key=lambda h: (exps[h], h))
    parsed = parse_collection(SeqCollection.from_seqs([roots[h] for h in order]), cfg,
                              threads=threads, backend=backend)
    if keep is not None:
        keep["parse"] = parsed
        keep["order"] = order
        keep["config"] = cfg
    pe = ebwt_of_parse(parsed.parses, parsed.start_marks, len(parsed.dict), backend)
    res = merge(parsed, pe, [exps[h] for h in order], samples, backend)
    if res.samples:
        res.samples = [(i, GcaEntry(e.pos, order[e.doc - 1] + 1)) for i, e in res.samples]
    return res
