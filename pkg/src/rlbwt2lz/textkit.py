"""Builders and brute-force oracles used to construct and check inputs.

Texts are sequences of integer codes with a terminating sentinel that is
strictly smaller than every other code.  Builder-produced texts append code 0
and shift input bytes to 1..256.  Arrays holding positional data are padded
so that index 1 is the first text position.
"""

from dataclasses import dataclass

import numpy as np

from .converter import Copy, Literal, Lz77Parse
from .rlbwt import MAX_CODE, Rlbwt


@dataclass(eq=False)
class Text:
    """Code sequence with sentinel. codes is padded: codes[1..n] are the text."""

    codes: np.ndarray
    n: int
    sigma: int

    def to_bytes(self) -> bytes:
        """Undo the byte builder: strip the sentinel, shift codes back down."""
        body = self.codes[1 : self.n]
        if self.n < 1 or self.codes[self.n] != 0:
            raise ValueError("text does not end with the builder sentinel")
        if body.size and (body.min() < 1 or body.max() > 256):
            raise ValueError("codes outside the byte range")
        return bytes((body - 1).astype(np.uint8).tolist())


@dataclass(eq=False)
class SuffixArray:
    """sa[i] = start of the i-th smallest suffix; isa is its inverse. Padded."""

    sa: np.ndarray
    isa: np.ndarray
    n: int


def text_from_bytes(data: bytes) -> Text:
    codes = np.zeros(len(data) + 2, dtype=np.int64)
    if data:
        codes[1 : len(data) + 1] = np.frombuffer(data, dtype=np.uint8).astype(np.int64) + 1
    n = len(data) + 1
    sigma = int(np.unique(codes[1 : n + 1]).size)
    return Text(codes=codes, n=n, sigma=sigma)


def text_from_codes(codes, append_sentinel: bool = True) -> Text:
    body = np.asarray(list(codes), dtype=np.int64)
    if append_sentinel:
        if body.size and (body.min() < 1 or body.max() > MAX_CODE):
            raise ValueError("codes must lie in 1..2^32-1 (0 is the sentinel)")
        body = np.concatenate([body, [0]])
    else:
        if body.size == 0 or body[-1] != 0:
            raise ValueError("text must end with a single sentinel code 0")
        head = body[:-1]
        if head.size and (head.min() < 1 or head.max() > MAX_CODE):
            raise ValueError("codes must lie in 1..2^32-1 (0 is the sentinel)")
    padded = np.concatenate([[0], body])
    n = int(body.size)
    return Text(codes=padded, n=n, sigma=int(np.unique(body).size))


def build_suffix_array(text: Text) -> SuffixArray:
    """Suffix array by prefix doubling on numpy ranks.

    O(n log n) sorts per doubling round; entirely adequate for builder-side
    use, including the million-position benchmark inputs.
    """
    n = text.n
    codes = text.codes[1 : n + 1]
    _, rank = np.unique(codes, return_inverse=True)
    rank = rank.astype(np.int64)
    k = 1
    while True:
        shifted = np.full(n, -1, dtype=np.int64)
        if k < n:
            shifted[: n - k] = rank[k:]
        order = np.lexsort((shifted, rank))
        r1 = rank[order]
        r2 = shifted[order]
        neq = np.zeros(n, dtype=np.int64)
        if n > 1:
            neq[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[order] = np.cumsum(neq)
        rank = new_rank
        if rank[order[-1]] == n - 1:
            break
        k <<= 1
    sa = np.zeros(n + 1, dtype=np.int64)
    sa[1:] = order + 1
    isa = np.zeros(n + 1, dtype=np.int64)
    isa[sa[1:]] = np.arange(1, n + 1)
    return SuffixArray(sa=sa, isa=isa, n=n)


def bwt_from_sa(text: Text, sa: SuffixArray):
    """BWT of the text plus the row y holding the last text character.

    L[i] is the code preceding suffix sa[i], wrapping at the text start, and
    y = isa[1] is the row whose L entry is T[n].
    """
    n = text.n
    prev = np.where(sa.sa[1:] == 1, n, sa.sa[1:] - 1)
    bwt = np.zeros(n + 1, dtype=np.int64)
    bwt[1:] = text.codes[prev]
    return bwt, int(sa.isa[1])


def rle_encode(seq):
    """Maximal-run encoding of a plain sequence: list of (code, length)."""
    arr = np.asarray(list(seq), dtype=np.int64)
    if arr.size == 0:
        return []
    breaks = np.flatnonzero(arr[1:] != arr[:-1]) + 1
    starts = np.concatenate([[0], breaks])
    lens = np.diff(np.concatenate([starts, [arr.size]]))
    return list(zip(arr[starts].tolist(), lens.tolist()))


def build_rlbwt(text: Text) -> Rlbwt:
    """Compose the builders: text -> suffix array -> BWT -> run-length BWT."""
    sa = build_suffix_array(text)
    bwt, y = bwt_from_sa(text, sa)
    runs = rle_encode(bwt[1:])
    return Rlbwt(runs=runs, n=text.n, r=len(runs), y=y, sigma=text.sigma)


def oracle_lz77(text: Text) -> Lz77Parse:
    """Brute-force LZ77 parse of the reversed text, phrases emitted rightmost
    first.

    Working right to left, each phrase is the longest suffix of the remaining
    prefix that also occurs starting strictly to the right of the phrase
    (the occurrence may overlap the phrase and run past its end).  A code
    with no later occurrence becomes a literal.  Copy phrases store the
    smallest valid occurrence start.

    Matching runs over a fixed-width byte encoding of the codes so that
    bytes.find does the scanning; hits at misaligned offsets are skipped.
    """
    n = text.n
    codes = text.codes[1 : n + 1]
    width = 2 if (n == 0 or int(codes.max()) <= 0xFFFF) else 4
    dt = ">u2" if width == 2 else ">u4"
    buf = codes.astype(dt).tobytes()

    def find_from(needle: bytes, char_start: int) -> int:
        # leftmost aligned hit at 0-based char position >= char_start, or -1
        pos = buf.find(needle, char_start * width)
        while pos >= 0 and pos % width:
            pos = buf.find(needle, pos + 1)
        return -1 if pos < 0 else pos // width

    phrases = []
    end = n
    while end >= 1:
        best_len = 0
        best_pos = 0
        length = 1
        while end - length + 1 >= 1:
            start = end - length + 1
            needle = buf[(start - 1) * width : end * width]
            hit = find_from(needle, start)
            if hit < 0:
                break
            best_len = length
            best_pos = hit + 1
            length += 1
        if best_len == 0:
            phrases.append(Literal(int(codes[end - 1])))
            end -= 1
        else:
            phrases.append(Copy(best_pos, best_len))
            end -= best_len
    return Lz77Parse(phrases=phrases, n=n)


def oracle_rmtq(sa: SuffixArray, b: int, e: int, k: int):
    """Leftmost suffix-array value >= k in sa[b..e], or None."""
    if not 1 <= b <= e <= sa.n:
        raise IndexError("oracle_rmtq interval out of range")
    for j in range(b, e + 1):
        if sa.sa[j] >= k:
            return int(sa.sa[j])
    return None
