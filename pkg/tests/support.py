"""Shared naive reference implementations and corpus helpers for the tests.

Everything here recomputes results from first principles (full suffix sort,
expanded BWT, linear scans) so the structures under test are checked against
an independent path.
"""

import random

import numpy as np

from rlbwt2lz.converter import Copy, Literal
from rlbwt2lz.rlbwt import Rlbwt
from rlbwt2lz.textkit import Text, text_from_bytes, text_from_codes


def naive_suffix_array(text: Text):
    """Padded suffix array by sorting materialized suffixes."""
    n = text.n
    codes = text.codes[1 : n + 1].tolist()
    order = sorted(range(1, n + 1), key=lambda i: codes[i - 1 :])
    sa = np.zeros(n + 1, dtype=np.int64)
    sa[1:] = order
    return sa


def expand_bwt(rlbwt: Rlbwt):
    return rlbwt.expand()


def naive_rank(L, c, i):
    """Occurrences of c in the padded BWT L[1..i]."""
    return int(np.count_nonzero(L[1 : i + 1] == c))

def naive_select(L, c, j):
    hits = np.flatnonzero(L[1:] == c) + 1
    return int(hits[j - 1]) if j <= hits.size else len(L)


def naive_lf(L, i):
    c = int(L[i])
    smaller = int(np.count_nonzero(L[1:] < c))
    return smaller + naive_rank(L, c, i)


def sa_interval(text: Text, sa, pattern):
    """Rows whose suffix starts with pattern, by scanning every row."""
    n = text.n
    pat = list(pattern)
    rows = []
    for row in range(1, n + 1):
        s = int(sa[row])
        if s + len(pat) - 1 > n:
            continue
        if text.codes[s : s + len(pat)].tolist() == pat:
            rows.append(row)
    if not rows:
        return None
    return rows[0], rows[-1]


def brute_open_close(sa, Z, r, n, k):
    """Formal open/close arrays at threshold k, from the real suffix array."""
    open_val = np.full(r + 1, -1, dtype=np.int64)
    open_pos = np.full(r + 1, n + 1, dtype=np.int64)
    close_val = np.full(r + 1, -1, dtype=np.int64)
    close_pos = np.zeros(r + 1, dtype=np.int64)
    for i in range(1, r + 1):
        lo = int(Z[i])
        hi = int(Z[i + 1]) - 1
        for row in range(lo, hi + 1):
            if sa[row] >= k:
                open_val[i] = sa[row]
                open_pos[i] = row
                break
        for row in range(hi, lo - 1, -1):
            if sa[row] >= k:
                close_val[i] = sa[row]
                close_pos[i] = row
                break
    return open_val, open_pos, close_val, close_pos


def phrase_boundaries(parse):
    """(is_literal, length) per phrase in emission order."""
    out = []
    for ph in parse.phrases:
        if isinstance(ph, Literal):
            out.append((True, 1))
        else:
            out.append((False, ph.length))
    return out


def copies_content_valid(parse, text: Text) -> bool:
    """Every phrase reproduces the text region it covers, copies from their
    source; the source must start strictly right of the phrase."""
    end = text.n
    for ph in parse.phrases:
        if isinstance(ph, Literal):
            if int(text.codes[end]) != ph.code:
                return False
            end -= 1
            continue
        start = end - ph.length + 1
        if ph.pos <= start or ph.pos + ph.length - 1 > text.n:
            return False
        if not np.array_equal(text.codes[start : start + ph.length],
                              text.codes[ph.pos : ph.pos + ph.length]):
            return False
        end = start - 1
    return end == 0


def parses_agree(got, want) -> bool:
    """Same phrase boundaries and literal codes; copy positions may differ."""
    if phrase_boundaries(got) != phrase_boundaries(want):
        return False
    for a, b in zip(got.phrases, want.phrases):
        if isinstance(a, Literal) and a != b:
            return False
    return True


ALPHABETS = (2, 4, 26, 256)


def random_bytes_text(rng: random.Random, max_len: int, sigma=None) -> bytes:
    if sigma is None:
        sigma = rng.choice(ALPHABETS)
    n = rng.randint(1, max_len)
    return bytes(rng.randrange(sigma) for _ in range(n))


def random_text(rng: random.Random, max_len: int, sigma=None) -> Text:
    return text_from_bytes(random_bytes_text(rng, max_len, sigma))


def sparse_code_text(rng: random.Random, max_len: int) -> Text:
    n = rng.randint(1, max_len)
    pool = [rng.randint(1, (1 << 32) - 1) for _ in range(rng.randint(1, 12))]
    return text_from_codes([rng.choice(pool) for _ in range(n)])


def text_without_sentinel(codes) -> Text:
    """A Text that does not end in a sentinel; builders reject these, but the
    brute-force parser has no reason to."""
    body = np.asarray(list(codes), dtype=np.int64)
    padded = np.concatenate([[0], body])
    return Text(codes=padded, n=int(body.size), sigma=int(np.unique(body).size))
