"""String primitives: conjugates, roots, omega-order and GCA helpers.

All positions exposed by this module are 1-based, matching the usual
textbook notation for conjugate arrays. Strings are treated cyclically,
``T[0] == T[n]`` and ``T[n + 1] == T[1]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union

BytesLike = Union[bytes, bytearray, str]


def as_bytes(seq: BytesLike) -> bytes:
    if isinstance(seq, str):
        return seq.encode("ascii")
    return bytes(seq)


class GcaEntry(NamedTuple):
    """Conjugate ``conj_pos(T_doc)``; both fields 1-based."""

    pos: int
    doc: int


Gca = list  # list[GcaEntry]


@dataclass(frozen=True)
class RootDecomposition:
    root: bytes
    exponent: int


@dataclass
class SeqCollection:
    """Ordered multiset of non-empty byte strings with labels."""

    docs: list[tuple[str, bytes]]

    def __post_init__(self):
        docs = []
        for ident, seq in self.docs:
            seq = as_bytes(seq)
            if not seq:
                raise ValueError(f"document {ident!r} is empty")
            docs.append((ident, seq))
        self.docs = docs

    @classmethod
    def from_seqs(cls, seqs: Sequence[BytesLike]) -> "SeqCollection":
        return cls([(f"seq{i + 1}", s) for i, s in enumerate(seqs)])

    @property
    def seqs(self) -> list[bytes]:
        return [s for _, s in self.docs]

    @property
    def m(self) -> int:
        return len(self.docs)

    @property
    def N(self) -> int:
        return sum(len(s) for _, s in self.docs)

    def __len__(self):
        return len(self.docs)


@dataclass
class EbwtResult:
    """eBWT bytes plus 1-based positions of every document's first rotation.

    ``samples`` (optional) holds ``(bwt_position, GcaEntry)`` pairs for the
    first and last entry of each maximal run of equal bytes, sorted by
    position; a run of length one contributes a single pair.
    """

    bwt: bytes
    index_set: list[int]
    samples: list[tuple[int, GcaEntry]] | None = field(default=None)

    def run_heads(self) -> list[tuple[int, GcaEntry]]:
        bwt = self.bwt
        return [(i, e) for i, e in self.samples or ()
                if i == 1 or bwt[i - 2] != bwt[i - 1]]

    def run_tails(self) -> list[tuple[int, GcaEntry]]:
        bwt = self.bwt
        n = len(bwt)
        return [(i, e) for i, e in self.samples or ()
                if i == n or bwt[i] != bwt[i - 1]]


def border_array(T: Sequence) -> list[int]:
    """KMP failure function: ``b[i]`` is the longest proper border of ``T[:i+1]``."""
    n = len(T)
    if n == 0:
        raise ValueError("border array of empty string")
    b = [0] * n
    k = 0
    for i in range(1, n):
        while k and T[i] != T[k]:
            k = b[k - 1]
        if T[i] == T[k]:
            k += 1
        b[i] = k
    return b


def root_and_exponent(T: BytesLike) -> RootDecomposition:
    T = as_bytes(T)
    n = len(T)
    period = n - border_array(T)[-1]
    if period < n and n % period == 0:
        return RootDecomposition(T[:period], n // period)
    return RootDecomposition(T, 1)


def smallest_period(T: bytes) -> int:
    """Length of the primitive root of ``T`` (bulk variant of :func:`root_and_exponent`)."""
    n = len(T)
    p = (T + T).find(T, 1)
    return p if p < n else n


def smallest_int_period(T: Sequence[int]) -> int:
    """Same as :func:`smallest_period` for integer sequences."""
    import numpy as np

    arr = np.ascontiguousarray(T, dtype="<u4")
    n = arr.size
    raw = arr.tobytes()
    hay = raw + raw
    start = 1
    while True:
        p = hay.find(raw, start)
        if p % 4 == 0:
            p //= 4
            return p if p < n else n
        start = p + 1


def conjugate(T: BytesLike, i: int) -> bytes:
    T = as_bytes(T)
    if not 1 <= i <= len(T):
        raise IndexError(f"rotation {i} out of range for length {len(T)}")
    return T[i - 1:] + T[:i - 1]


def _omega_prefix(S: bytes, length: int) -> bytes:
    reps = length // len(S) + 1
    return (S * reps)[:length]


def omega_compare(S: BytesLike, T: BytesLike) -> int:
    """Three-way omega-order comparison; returns -1, 0 or 1.

    Strings sharing a root are ordered by exponent; otherwise ``S^w`` and
    ``T^w`` differ within the first ``|S| + |T|`` symbols (Fine and Wilf).
    """
    S, T = as_bytes(S), as_bytes(T)
    if not S or not T:
        raise ValueError("omega_compare needs non-empty strings")
    if S == T:
        return 0
    rs, rt = root_and_exponent(S), root_and_exponent(T)
    if rs.root == rt.root:
        return -1 if rs.exponent < rt.exponent else 1
    k = len(S) + len(T)
    a, b = _omega_prefix(S, k), _omega_prefix(T, k)
    return -1 if a < b else 1


def expand_gca(gca_roots: Sequence[GcaEntry], exponents: Sequence[int],
               root_lengths: Sequence[int]) -> list[GcaEntry]:
    """Expand the GCA of the roots into the GCA of the powers."""
    if len(exponents) != len(root_lengths):
        raise ValueError("exponents and root_lengths differ in length")
    if len(gca_roots) != sum(root_lengths):
        raise ValueError("GCA length does not match total root length")
    if any(k < 1 for k in exponents):
        raise ValueError("exponents must be positive")
    out = []
    for j, d in gca_roots:
        q = root_lengths[d - 1]
        out.extend(GcaEntry(j + t * q, d) for t in range(exponents[d - 1]))
    return out


def ebwt_from_gca(coll: SeqCollection, gca: Sequence[GcaEntry]) -> EbwtResult:
    seqs = coll.seqs
    out = bytearray(len(gca))
    index_set = []
    for i, (j, d) in enumerate(gca):
        T = seqs[d - 1]
        out[i] = T[j - 2]  # j == 1 wraps to T[-1]
        if j == 1:
            index_set.append(i + 1)
    return EbwtResult(bytes(out), index_set)


def samples_from_gca(bwt: bytes, gca: Sequence[GcaEntry]) -> list[tuple[int, GcaEntry]]:
    """First and last GCA entry of every maximal run of ``bwt``."""
    n = len(bwt)
    out = []
    for i in range(n):
        head = i == 0 or bwt[i - 1] != bwt[i]
        tail = i == n - 1 or bwt[i + 1] != bwt[i]
        if head or tail:
            out.append((i + 1, GcaEntry(*gca[i])))
    return out
