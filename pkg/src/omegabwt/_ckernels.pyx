# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled kernels; same contracts and results as ``_pykernels``."""
import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t
from libc.string cimport memcmp
from libcpp.algorithm cimport sort as cpp_sort
from libcpp.pair cimport pair
from libcpp.vector cimport vector

cnp.import_array()

NAME = "cython"
EMPTY = -1
KR_BASE = 256
KR_PRIME = 1999999973

ctypedef int64_t i64


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


# ------------------------------------------------------------------ SAIS

cdef void _links(const i64[:] starts, const i64[:] lengths, i64[:] prev, i64[:] nxt):
    cdef Py_ssize_t n = prev.shape[0], i, h
    for i in range(n):
        prev[i] = i - 1
        nxt[i] = i + 1
    for h in range(starts.shape[0]):
        prev[starts[h]] = starts[h] + lengths[h] - 1
        nxt[starts[h] + lengths[h] - 1] = starts[h]


cdef int _classify(const i64[:] text, const i64[:] starts, const i64[:] lengths,
                   uint8_t[:] stype) except -1:
    cdef Py_ssize_t h, s, ln, end, i, j, anchor, step
    cdef uint8_t t = 0
    for h in range(starts.shape[0]):
        s = starts[h]
        ln = lengths[h]
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
        for step in range(ln - 1):
            j = i - 1 if i > s else end - 1
            if text[j] < text[i]:
                t = 1
            elif text[j] > text[i]:
                t = 0
            stype[j] = t
            i = j
    return 0


cdef void _induce(const i64[:] text, const i64[:] prev, const uint8_t[:] stype,
                  const i64[:] counts, const i64[:] bstarts, const i64[:] seeds,
                  i64[:] A):
    cdef Py_ssize_t n = text.shape[0], sigma = counts.shape[0], i, c
    cdef i64 g, p
    cdef i64[:] ptr = np.empty(sigma, dtype=np.int64)
    A[:] = -1
    for c in range(sigma):
        ptr[c] = bstarts[c] + counts[c]
    for i in range(seeds.shape[0] - 1, -1, -1):
        g = seeds[i]
        c = text[g]
        ptr[c] -= 1
        A[ptr[c]] = g
    for c in range(sigma):
        ptr[c] = bstarts[c]
    for i in range(n):
        g = A[i]
        if g < 0:
            continue
        p = prev[g]
        if not stype[p]:
            c = text[p]
            A[ptr[c]] = p
            ptr[c] += 1
    for c in range(sigma):
        ptr[c] = bstarts[c] + counts[c]
    for i in range(n - 1, -1, -1):
        g = A[i]
        if g < 0:
            continue
        p = prev[g]
        if stype[p]:
            c = text[p]
            ptr[c] -= 1
            A[ptr[c]] = p


cdef bint _lms_equal(const i64[:] text, const i64[:] nxt, const uint8_t[:] lms,
                     i64 a, i64 b):
    cdef uint8_t la, lb
    while True:
        if text[a] != text[b]:
            return False
        a = nxt[a]
        b = nxt[b]
        la = lms[a]
        lb = lms[b]
        if la and lb:
            return text[a] == text[b]
        if la != lb:
            return False


def _sort_long(text_in, starts_in, lengths_in, Py_ssize_t sigma):
    cdef i64[:] text = _i64(text_in)
    cdef i64[:] starts = _i64(starts_in)
    cdef i64[:] lengths = _i64(lengths_in)
    cdef Py_ssize_t n = text.shape[0], m = starts.shape[0], i, h, g, k
    prev_a = np.empty(n, dtype=np.int64)
    nxt_a = np.empty(n, dtype=np.int64)
    cdef i64[:] prev = prev_a
    cdef i64[:] nxt = nxt_a
    _links(starts, lengths, prev, nxt)
    stype_a = np.zeros(n, dtype=np.uint8)
    cdef uint8_t[:] stype = stype_a
    _classify(text, starts, lengths, stype)
    lms_a = np.zeros(n, dtype=np.uint8)
    cdef uint8_t[:] lms = lms_a
    cdef Py_ssize_t nlms = 0
    for g in range(n):
        if stype[g] and not stype[prev[g]]:
            lms[g] = 1
            nlms += 1
    counts_a = np.bincount(np.asarray(text), minlength=sigma).astype(np.int64)
    bstarts_a = np.zeros(sigma, dtype=np.int64)
    np.cumsum(counts_a[:-1], out=bstarts_a[1:])
    cdef i64[:] counts = counts_a
    cdef i64[:] bstarts = bstarts_a

    # LMS positions: documents in reverse order, ascending positions inside.
    seeds_a = np.empty(nlms, dtype=np.int64)
    cdef i64[:] seeds = seeds_a
    k = 0
    for h in range(m - 1, -1, -1):
        for g in range(starts[h], starts[h] + lengths[h]):
            if lms[g]:
                seeds[k] = g
                k += 1
    A_a = np.empty(n, dtype=np.int64)
    cdef i64[:] A = A_a
    _induce(text, prev, stype, counts, bstarts, seeds, A)

    names_a = np.full(n, -1, dtype=np.int64)
    cdef i64[:] names = names_a
    cdef i64 count = 0, last = -1
    for i in range(n):
        g = A[i]
        if not lms[g]:
            continue
        if last < 0 or not _lms_equal(text, nxt, lms, last, g):
            count += 1
        names[g] = count - 1
        last = g

    cdef i64[:] sorted_lms, rtext, lms_all, rstarts, rlengths
    if count < nlms:
        rtext_a = np.empty(nlms, dtype=np.int64)
        lms_all_a = np.empty(nlms, dtype=np.int64)
        rstarts_a = np.empty(m, dtype=np.int64)
        rlengths_a = np.empty(m, dtype=np.int64)
        rtext = rtext_a
        lms_all = lms_all_a
        rstarts = rstarts_a
        rlengths = rlengths_a
        k = 0
        for h in range(m):
            rstarts[h] = k
            for g in range(starts[h], starts[h] + lengths[h]):
                if lms[g]:
                    rtext[k] = names[g]
                    lms_all[k] = g
                    k += 1
            rlengths[h] = k - rstarts[h]
        if 2 * nlms > n:
            raise AssertionError("reduced problem did not shrink")
        rorder = sais_flat(rtext_a, rstarts_a, rlengths_a, count)
        sorted_lms = lms_all_a[rorder]
    else:
        sorted_lms = A_a[lms_a[A_a].astype(bool)]
    _induce(text, prev, stype, counts, bstarts, sorted_lms, A)
    return A_a, stype_a


def sais_flat(text, starts, lengths, sigma):
    """GCA (0-based global positions) of a flat multiset of primitive strings."""
    text = _i64(text)
    starts = _i64(starts)
    lengths = _i64(lengths)
    if text.size == 0:
        return np.zeros(0, dtype=np.int64)
    sigma = int(sigma)
    single = lengths == 1
    if not single.any():
        return _sort_long(text, starts, lengths, sigma)[0]
    long_ = ~single
    sing_pos = starts[single]
    sing_pos = sing_pos[np.argsort(text[sing_pos], kind="stable")]
    if not long_.any():
        return sing_pos
    owner = np.repeat(np.arange(starts.size), lengths)
    keep = long_[owner]
    ctext = text[keep]
    gpos = np.flatnonzero(keep)
    clen = lengths[long_]
    cstarts = np.zeros(clen.size, dtype=np.int64)
    np.cumsum(clen[:-1], out=cstarts[1:])
    A, stype = _sort_long(ctext, cstarts, clen, sigma)
    A = gpos[A]
    # Length-1 documents go between the L- and S-type parts of their bucket.
    csyms = ctext
    counts = np.bincount(csyms, minlength=sigma)
    lcount = np.bincount(csyms[stype == 0], minlength=sigma)
    bstart = np.zeros(sigma + 1, dtype=np.int64)
    np.cumsum(counts, out=bstart[1:])
    sing_sym = text[sing_pos]
    split = bstart[sing_sym] + lcount[sing_sym]
    return np.insert(A, split, sing_pos)


# ------------------------------------------------------------------ hashing

def kr_cyclic_hashes(seq, Py_ssize_t w):
    """Karp-Rabin hash of every cyclic window ``seq[t:t+w]``, ``t = 0..n-1``."""
    cdef const uint8_t[:] s = np.frombuffer(bytes(seq), dtype=np.uint8)
    cdef Py_ssize_t n = s.shape[0], i, t
    if n < w:
        raise ValueError(f"sequence of length {n} shorter than window {w}")
    cdef i64 P = KR_PRIME, top = 1, h = 0
    for i in range(w - 1):
        top = (top * KR_BASE) % P
    for i in range(w):
        h = (h * KR_BASE + s[i]) % P
    out_a = np.empty(n, dtype=np.int64)
    cdef i64[:] out = out_a
    out[0] = h
    for t in range(1, n):
        h = (h - s[t - 1] * top) % P
        if h < 0:
            h += P
        h = (h * KR_BASE + s[(t + w - 1) % n]) % P
        out[t] = h
    return out_a


# ------------------------------------------------------------------ merge

def suffix_group_bounds(dict_bytes, dict_off, plen, phrase, offset):
    """Boundaries of runs of equal suffixes in a sorted suffix list."""
    cdef const uint8_t[:] db = np.frombuffer(bytes(dict_bytes), dtype=np.uint8) \
        if len(dict_bytes) else np.zeros(1, dtype=np.uint8)
    cdef i64[:] off = _i64(dict_off)
    cdef i64[:] pl = _i64(plen)
    cdef i64[:] ph = _i64(phrase)
    cdef i64[:] of = _i64(offset)
    cdef Py_ssize_t n = ph.shape[0], i
    cdef i64 la = 0, lb, a = 0, b
    out = [0]
    for i in range(n):
        b = off[ph[i]] + of[i]
        lb = pl[ph[i]] - of[i]
        if i and (la != lb or memcmp(&db[a], &db[b], lb) != 0):
            out.append(i)
        a = b
        la = lb
    if n:
        out.append(n)
    return np.asarray(out, dtype=np.int64)


cdef class _Writer:
    """Output buffer that also tracks equal-byte segments for sampling."""
    cdef uint8_t[:] out
    cdef Py_ssize_t pos
    cdef int cur
    cdef bint sampling
    cdef list segs

    def __init__(self, Py_ssize_t total, bint sampling):
        self.out = np.empty(total, dtype=np.uint8)
        self.pos = 0
        self.cur = -1
        self.sampling = sampling
        self.segs = []

    cdef inline void emit(self, int c, i64 count, i64 pf, i64 kf, i64 pl, i64 kl):
        cdef Py_ssize_t i, last
        cdef tuple seg
        if self.sampling:
            if c == self.cur:
                last = len(self.segs) - 1
                seg = self.segs[last]
                self.segs[last] = (seg[0], seg[1] + count, seg[2], seg[3], pl, kl)
            else:
                self.segs.append((self.pos, count, pf, kf, pl, kl))
                self.cur = c
        for i in range(count):
            self.out[self.pos + i] = c
        self.pos += count


def merge_blocks(grp_bounds_in, sfx_phrase_in, sfx_offset_in, dict_bytes, dict_off_in,
                 occ_bounds_in, occ_pos_in, phrase_weight_in, phrase_flagged_in,
                 weight_in, prev_char_in, start_off_in, bint sampling):
    """Emit eBWT blocks for every dictionary-suffix group in order."""
    cdef i64[:] grp_bounds = _i64(grp_bounds_in)
    cdef i64[:] sfx_phrase = _i64(sfx_phrase_in)
    cdef i64[:] sfx_offset = _i64(sfx_offset_in)
    cdef const uint8_t[:] db = np.frombuffer(bytes(dict_bytes), dtype=np.uint8)
    cdef i64[:] dict_off = _i64(dict_off_in)
    cdef i64[:] occ_bounds = _i64(occ_bounds_in)
    cdef i64[:] occ_pos = _i64(occ_pos_in)
    cdef i64[:] phrase_weight = _i64(phrase_weight_in)
    cdef uint8_t[:] phrase_flagged = np.ascontiguousarray(phrase_flagged_in, dtype=np.uint8)
    cdef i64[:] weight = _i64(weight_in)
    cdef i64[:] prev_char = _i64(prev_char_in)
    cdef i64[:] start_off = _i64(start_off_in)

    cdef Py_ssize_t ngroups = grp_bounds.shape[0] - 1, g, i, j
    cdef i64 total = 0, lo, hi, d, d0, k, k0, p, tot, a, b, pf, kf, pl, kl
    cdef int c, ch
    cdef bint uniform, flagged
    cdef vector[pair[i64, i64]] buf

    for i in range(sfx_phrase.shape[0]):
        total += phrase_weight[sfx_phrase[i]]
    cdef _Writer wr = _Writer(total, sampling)
    starts = []

    for g in range(ngroups):
        lo = grp_bounds[g]
        hi = grp_bounds[g + 1]
        d0 = sfx_phrase[lo]
        k0 = sfx_offset[lo]
        if k0 == 0:
            for i in range(occ_bounds[d0], occ_bounds[d0 + 1]):
                p = occ_pos[i]
                if start_off[p] == 0:
                    starts.append((wr.pos, p))
                wr.emit(<int>prev_char[p], weight[p], p, 0, p, 0)
            continue
        c = db[dict_off[d0] + k0 - 1]
        uniform = True
        flagged = False
        tot = 0
        for i in range(lo, hi):
            d = sfx_phrase[i]
            if db[dict_off[d] + sfx_offset[i] - 1] != c:
                uniform = False
            if phrase_flagged[d]:
                flagged = True
            tot += phrase_weight[d]
        if uniform and not flagged:
            pf = kf = pl = kl = -1
            if sampling:
                for i in range(lo, hi):
                    d = sfx_phrase[i]
                    a = occ_pos[occ_bounds[d]]
                    b = occ_pos[occ_bounds[d + 1] - 1]
                    if pf < 0 or a < pf:
                        pf = a
                        kf = sfx_offset[i]
                    if b > pl:
                        pl = b
                        kl = sfx_offset[i]
            wr.emit(c, tot, pf, kf, pl, kl)
            continue
        buf.clear()
        for i in range(lo, hi):
            d = sfx_phrase[i]
            for j in range(occ_bounds[d], occ_bounds[d + 1]):
                buf.push_back(pair[i64, i64](occ_pos[j], i))
        cpp_sort(buf.begin(), buf.end())
        for j in range(<Py_ssize_t>buf.size()):
            p = buf[j].first
            i = buf[j].second
            k = sfx_offset[i]
            ch = db[dict_off[sfx_phrase[i]] + k - 1]
            if start_off[p] == k:
                starts.append((wr.pos, p))
            wr.emit(ch, weight[p], p, k, p, k)
    return bytes(wr.out), starts, wr.segs
