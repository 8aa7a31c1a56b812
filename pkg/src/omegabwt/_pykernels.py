"""Pure-Python kernels, the reference for the compiled ``_ckernels`` module.

Collections are passed flat: ``text`` concatenates every document,
``starts``/``lengths`` delimit them. Positions are 0-based global offsets
into ``text``. Both backends must return identical results.
"""
from __future__ import annotations

import heapq

NAME = "python"
EMPTY = -1
KR_BASE = 256
KR_PRIME = 1999999973


def cyclic_links(starts, lengths, n):
    prev = list(range(-1, n - 1))
    nxt = list(range(1, n + 1))
    for s, ln in zip(starts, lengths):
        prev[s] = s + ln - 1
        nxt[s + ln - 1] = s
    return prev, nxt


def classify(text, starts, lengths):
    """Cyclic S/L types: ``stype[g] == 1`` for S-type.

    One anchor where two cyclically adjacent symbols differ fixes the type
    of that position; a single right-to-left cyclic sweep does the rest.
    """
    stype = bytearray(len(text))
    for s, ln in zip(starts, lengths):
        if ln < 2:
            continue
        end = s + ln
        anchor = -1
        for i in range(s, end):
            j = i + 1 if i + 1 < end else s
            if text[i] != text[j]:
                anchor = i
                t = 1 if text[i] < text[j] else 0
                break
        if anchor < 0:
            raise ValueError("document is not primitive (single repeated symbol)")
        stype[anchor] = t
        i = anchor
        for _ in range(ln - 1):
            j = i - 1 if i > s else end - 1
            a, b = text[j], text[i]
            if a < b:
                t = 1
            elif a > b:
                t = 0
            stype[j] = t
            i = j
    return stype


def lms_flags(stype, prev):
    return bytearray(1 if stype[g] and not stype[prev[g]] else 0
                     for g in range(len(stype)))


def bucket_starts(text, sigma):
    counts = [0] * sigma
    for c in text:
        counts[c] += 1
    starts = [0] * sigma
    total = 0
    for c in range(sigma):
        starts[c] = total
        total += counts[c]
    return counts, starts


def induce(text, prev, stype, counts, starts, seeds):
    """Induced Sorting with ``seeds`` given in their final in-bucket order."""
    n = len(text)
    A = [EMPTY] * n
    sigma = len(counts)
    tail = [starts[c] + counts[c] for c in range(sigma)]
    for g in reversed(seeds):
        c = text[g]
        tail[c] -= 1
        A[tail[c]] = g
    head = list(starts)
    for i in range(n):
        g = A[i]
        if g == EMPTY:
            continue
        p = prev[g]
        if not stype[p]:
            c = text[p]
            A[head[c]] = p
            head[c] += 1
    tail = [starts[c] + counts[c] for c in range(sigma)]
    for i in range(n - 1, -1, -1):
        g = A[i]
        if g == EMPTY:
            continue
        p = prev[g]
        if stype[p]:
            c = text[p]
            tail[c] -= 1
            A[tail[c]] = p
    return A


def lms_seed_order(starts, lengths, lms):
    """LMS positions in in-bucket order for the first induced sort.

    Inserting each document's LMS positions right to left at bucket tails,
    documents in input order; read back that is reversed document order with
    ascending positions.
    """
    seeds = []
    for s, ln in zip(reversed(starts), reversed(lengths)):
        seeds.extend(g for g in range(s, s + ln) if lms[g])
    return seeds


def name_lms(text, nxt, lms, A):
    """Rank LMS-substrings in the order they appear in ``A``.

    Returns ``(names, count)``; ``names[g]`` is a 0-based rank for LMS
    positions and ``EMPTY`` elsewhere.
    """
    names = [EMPTY] * len(text)
    count = 0
    last = EMPTY
    for g in A:
        if not lms[g]:
            continue
        if last == EMPTY or not _lms_equal(text, nxt, lms, last, g):
            count += 1
        names[g] = count - 1
        last = g
    return names, count


def _lms_equal(text, nxt, lms, a, b):
    while True:
        if text[a] != text[b]:
            return False
        a, b = nxt[a], nxt[b]
        la, lb = lms[a], lms[b]
        if la and lb:
            return text[a] == text[b]
        if la != lb:
            return False


def reduce_collection(starts, lengths, lms, names):
    """Reduced strings (names of LMS-substrings in text order) per document."""
    rtext, rstarts, rlengths, lms_all = [], [], [], []
    for s, ln in zip(starts, lengths):
        rstarts.append(len(rtext))
        k = 0
        for g in range(s, s + ln):
            if lms[g]:
                rtext.append(names[g])
                lms_all.append(g)
                k += 1
        rlengths.append(k)
    return rtext, rstarts, rlengths, lms_all


def sort_long(text, starts, lengths, sigma):
    """GCA of primitive documents that all have length >= 2.

    Returns ``(A, stype)``.
    """
    n = len(text)
    prev, nxt = cyclic_links(starts, lengths, n)
    stype = classify(text, starts, lengths)
    lms = lms_flags(stype, prev)
    counts, bstarts = bucket_starts(text, sigma)
    A = induce(text, prev, stype, counts, bstarts, lms_seed_order(starts, lengths, lms))
    names, count = name_lms(text, nxt, lms, A)
    rtext, rstarts, rlengths, lms_all = reduce_collection(starts, lengths, lms, names)
    if count < len(lms_all):
        assert 2 * len(rtext) <= n, "reduced problem did not shrink"
        rorder = sais_flat(rtext, rstarts, rlengths, count)
        sorted_lms = [lms_all[r] for r in rorder]
    else:
        sorted_lms = [g for g in A if lms[g]]
    return induce(text, prev, stype, counts, bstarts, sorted_lms), stype


def sais_flat(text, starts, lengths, sigma):
    """GCA (0-based global positions) of a flat multiset of primitive strings.

    Identical conjugates are ordered by document, length-1 documents sit
    between the L- and S-type conjugates of their symbol's bucket.
    """
    text = list(text)
    starts = list(starts)
    lengths = list(lengths)
    if not text:
        return []
    ctext, cstarts, clengths, shift = [], [], [], []
    singles = {}
    for s, ln in zip(starts, lengths):
        if ln == 1:
            singles.setdefault(text[s], []).append(s)
            continue
        cstarts.append(len(ctext))
        clengths.append(ln)
        shift.append(s - len(ctext))
        ctext.extend(text[s:s + ln])
    if not ctext:
        return [g for c in sorted(singles) for g in singles[c]]
    A, stype = sort_long(ctext, cstarts, clengths, sigma)
    if shift and any(shift):
        owner = [0] * len(ctext)
        for h, (s, ln) in enumerate(zip(cstarts, clengths)):
            owner[s:s + ln] = [h] * ln
        A = [g + shift[owner[g]] for g in A]
    if not singles:
        return A
    counts, _ = bucket_starts(ctext, sigma)
    lcount = [0] * sigma
    for g, t in zip(range(len(ctext)), stype):
        if not t:
            lcount[ctext[g]] += 1
    out = []
    pos = 0
    for c in sorted(set(ctext) | set(singles)):
        k = counts[c] if c < sigma else 0
        split = pos + lcount[c]
        out.extend(A[pos:split])
        out.extend(singles.get(c, ()))
        out.extend(A[split:pos + k])
        pos += k
    return out


# ---------------------------------------------------------------- hashing

def kr_cyclic_hashes(seq, w):
    """Karp-Rabin hash of every cyclic window ``seq[t:t+w]``, ``t = 0..n-1``."""
    n = len(seq)
    if n < w:
        raise ValueError(f"sequence of length {n} shorter than window {w}")
    top = pow(KR_BASE, w - 1, KR_PRIME)
    h = 0
    for i in range(w):
        h = (h * KR_BASE + seq[i]) % KR_PRIME
    out = [0] * n
    out[0] = h
    for t in range(1, n):
        old = seq[t - 1]
        new = seq[(t + w - 1) % n]
        h = ((h - old * top) * KR_BASE + new) % KR_PRIME
        out[t] = h
    return out


# ---------------------------------------------------------------- merge

def merge_blocks(grp_bounds, sfx_phrase, sfx_offset, dict_bytes, dict_off,
                 occ_bounds, occ_pos, phrase_weight, phrase_flagged,
                 weight, prev_char, start_off, sampling):
    """Emit eBWT blocks for every dictionary-suffix group in order.

    Groups are runs ``[grp_bounds[g], grp_bounds[g+1])`` of the sorted suffix
    arrays. ``sfx_offset`` is the 0-based offset of the suffix inside its
    phrase; 0 marks a whole phrase, whose preceding byte is ``prev_char[p]``.
    Every parse-eBWT position ``p`` stands for ``weight[p]`` identical
    conjugates (the exponent of its document).

    Returns ``(bwt, starts, segs)``. ``starts`` lists ``(out_pos, p)`` for each
    emitted first rotation. When sampling, ``segs`` lists maximal equal-byte
    segments as ``(out_pos, length, p_first, off_first, p_last, off_last)``;
    the first entry is copy 0 of its conjugate, the last is the final copy.
    """
    out = bytearray()
    starts = []
    segs = []
    cur = [-1]

    def emit(c, count, pf, kf, pl, kl):
        if sampling:
            if c == cur[0]:
                seg = segs[-1]
                segs[-1] = (seg[0], seg[1] + count, seg[2], seg[3], pl, kl)
            else:
                segs.append((len(out), count, pf, kf, pl, kl))
                cur[0] = c
        out.extend(bytes((c,)) * count)

    for g in range(len(grp_bounds) - 1):
        lo, hi = grp_bounds[g], grp_bounds[g + 1]
        d0 = sfx_phrase[lo]
        k0 = sfx_offset[lo]
        if k0 == 0:
            for i in range(occ_bounds[d0], occ_bounds[d0 + 1]):
                p = occ_pos[i]
                if start_off[p] == 0:
                    starts.append((len(out), p))
                emit(prev_char[p], weight[p], p, 0, p, 0)
            continue
        c = dict_bytes[dict_off[d0] + k0 - 1]
        uniform = True
        flagged = False
        total = 0
        for i in range(lo, hi):
            d = sfx_phrase[i]
            if dict_bytes[dict_off[d] + sfx_offset[i] - 1] != c:
                uniform = False
            if phrase_flagged[d]:
                flagged = True
            total += phrase_weight[d]
        if uniform and not flagged:
            if sampling:
                pf = kf = pl = kl = -1
                for i in range(lo, hi):
                    d = sfx_phrase[i]
                    a = occ_pos[occ_bounds[d]]
                    b = occ_pos[occ_bounds[d + 1] - 1]
                    if pf < 0 or a < pf:
                        pf, kf = a, sfx_offset[i]
                    if b > pl:
                        pl, kl = b, sfx_offset[i]
                emit(c, total, pf, kf, pl, kl)
            else:
                out.extend(bytes((c,)) * total)
            continue
        lists = []
        for i in range(lo, hi):
            d = sfx_phrase[i]
            k = sfx_offset[i]
            ch = dict_bytes[dict_off[d] + k - 1]
            lists.append([(occ_pos[j], ch, k)
                          for j in range(occ_bounds[d], occ_bounds[d + 1])])
        merged = lists[0] if len(lists) == 1 else heapq.merge(*lists)
        for p, ch, k in merged:
            if start_off[p] == k:
                starts.append((len(out), p))
            emit(ch, weight[p], p, k, p, k)
    return bytes(out), starts, segs


def suffix_group_bounds(dict_bytes, dict_off, plen, phrase, offset):
    """Boundaries of runs of equal suffixes in a sorted suffix list."""
    dict_off, plen = list(dict_off), list(plen)
    n = len(phrase)
    bounds = [0]
    last = None
    for i, (d, k) in enumerate(zip(list(phrase), list(offset))):
        s = dict_bytes[dict_off[d] + k:dict_off[d] + plen[d]]
        if i and s != last:
            bounds.append(i)
        last = s
    if n:
        bounds.append(n)
    return bounds
