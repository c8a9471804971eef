"""Run-length BWT representation and the occurrence index built on it.

Everything here works from the run heads only: the BWT itself is never
expanded.  Positions are 1-based; code 0 is reserved for the sentinel that
terminates builder-produced texts.

The occurrence index keeps, for every code c, the sorted run start positions
B_c and checkpoint values V_c[i] = rank(L, c, B_c[i]), plus one extra
checkpoint V_c[run(c)+1] = rank(L, c, n) + 1.  rank, select, access and LF
all reduce to predecessor counts over these arrays.
"""

from dataclasses import dataclass, field

import numpy as np

from .succinct import pred_count

MAX_CODE = (1 << 32) - 1


class InvalidRlbwt(ValueError):
    """Raised when a run-length BWT fails structural validation."""


@dataclass
class Rlbwt:
    """A run-length BWT: maximal equal-code runs of L plus the sentinel row y.

    runs:  list of (code, length) pairs in L order
    n:     total length of L
    r:     number of runs
    y:     row of L holding the last text character (1-based)
    sigma: number of distinct codes present
    """

    runs: list = field(default_factory=list)
    n: int = 0
    r: int = 0
    y: int = 0
    sigma: int = 0

    def validate(self) -> None:
        if self.r != len(self.runs):
            raise InvalidRlbwt("r does not match the number of runs")
        total = 0
        prev_code = None
        codes = set()
        for code, length in self.runs:
            if length < 1:
                raise InvalidRlbwt("run length must be positive")
            if code < 0 or code > MAX_CODE:
                raise InvalidRlbwt("code out of range")
            if code == prev_code:
                raise InvalidRlbwt("adjacent runs share a code")
            prev_code = code
            total += length
            codes.add(code)
        if total != self.n:
            raise InvalidRlbwt("run lengths do not sum to n")
        if self.sigma != len(codes):
            raise InvalidRlbwt("sigma does not match distinct codes")
        if self.n > 0 and not (1 <= self.y <= self.n):
            raise InvalidRlbwt("sentinel row y out of range")
        if self.n == 0:
            raise InvalidRlbwt("empty BWT")

    def expand(self) -> np.ndarray:
        """L as a padded 1-based array (index 0 unused). Debug and test aid."""
        out = np.zeros(self.n + 1, dtype=np.int64)
        pos = 1
        for code, length in self.runs:
            out[pos : pos + length] = code
            pos += length
        return out


def shrink_alphabet(rlbwt: Rlbwt):
    """Remap codes to their rank among the distinct codes present.

    Returns (shrunk, W) where shrunk uses dense codes 1..sigma and W is the
    padded inverse map: W[new_code] = original code.  Run boundaries, n, r
    and y are unchanged, and the remapping preserves code order, so the
    shrunk BWT is the BWT of the equally remapped text.
    """
    rlbwt.validate()
    distinct = sorted({code for code, _ in rlbwt.runs})
    remap = {code: i + 1 for i, code in enumerate(distinct)}
    runs = [(remap[code], length) for code, length in rlbwt.runs]
    W = np.zeros(len(distinct) + 1, dtype=np.int64)
    W[1:] = distinct
    shrunk = Rlbwt(runs=runs, n=rlbwt.n, r=rlbwt.r, y=rlbwt.y, sigma=len(distinct))
    return shrunk, W


class OccIndex:
    """Occurrence queries over a run-length BWT with dense codes 1..sigma.

    Arrays (all int64, positional ones padded so index 1 is the first entry):
      C[c]     number of codes smaller than c in L, for c in 1..sigma+1
      B[t]     start position of run t, E[t] its code
      bc_off[c] offset of code c's block in bc_flat / vc_flat
      bc_flat  run starts grouped by code (sorted within each code)
      vc_flat  rank checkpoints per code, one extra closing entry per code

    vc_flat block offsets are bc_off[c] + (c - 1): each code contributes
    exactly one extra checkpoint.
    """

    __slots__ = ("n", "r", "sigma", "C", "B", "E", "bc_off", "bc_flat", "vc_flat")

    def __init__(self, n, r, sigma, C, B, E, bc_off, bc_flat, vc_flat):
        self.n = n
        self.r = r
        self.sigma = sigma
        self.C = C
        self.B = B
        self.E = E
        self.bc_off = bc_off
        self.bc_flat = bc_flat
        self.vc_flat = vc_flat

    # -- basic queries ----------------------------------------------------

    def access(self, i: int) -> int:
        """Code of L[i]."""
        if not 1 <= i <= self.n:
            raise IndexError("access position out of range")
        t = pred_count(self.B, i, 1, self.r + 1)
        return int(self.E[t])

    def rank(self, c: int, i: int) -> int:
        """Occurrences of code c in L[1..i]; 0 for absent codes or i = 0."""
        if i < 0 or i > self.n:
            raise IndexError("rank position out of range")
        if i == 0 or c < 1 or c > self.sigma:
            return 0
        bo = int(self.bc_off[c])
        cnt = int(self.bc_off[c + 1]) - bo
        vo = bo + c - 1
        t = pred_count(self.bc_flat, i, bo, bo + cnt)
        if t == 0:
            return 0
        start = int(self.bc_flat[bo + t - 1])
        v_t = int(self.vc_flat[vo + t - 1])
        v_next = int(self.vc_flat[vo + t])
        if i - start + 1 <= v_next - v_t:
            return v_t + i - start
        return v_next - 1

    def select(self, c: int, j: int) -> int:
        """Position of the j-th occurrence of code c, or n + 1 if there is none."""
        if j < 1:
            raise ValueError("select ordinal must be >= 1")
        if c < 1 or c > self.sigma:
            return self.n + 1
        if j > int(self.C[c + 1]) - int(self.C[c]):
            return self.n + 1
        bo = int(self.bc_off[c])
        cnt = int(self.bc_off[c + 1]) - bo
        vo = bo + c - 1
        t = pred_count(self.vc_flat, j, vo, vo + cnt + 1)
        return int(self.bc_flat[bo + t - 1]) + j - int(self.vc_flat[vo + t - 1])

    def lf(self, i: int) -> int:
        """Row of the suffix one text position earlier: C[L[i]] + rank(L[i], i)."""
        c = self.access(i)
        return int(self.C[c]) + self.rank(c, i)

    def backward_search(self, b: int, e: int, c: int):
        """Extend the row interval [b, e] by prepending code c.

        Returns the new interval (b', e') or None when c does not occur in
        L[b..e].
        """
        if not 1 <= b <= e <= self.n:
            raise IndexError("backward_search interval out of range")
        x = self.rank(c, b - 1)
        y = self.rank(c, e)
        if x == y:
            return None
        b2 = self.lf(self.select(c, x + 1))
        e2 = self.lf(self.select(c, y))
        return b2, e2

    def element_count(self) -> int:
        """Stored array entries, excluding padding slots."""
        return (
            (self.sigma + 1)        # C[1..sigma+1]
            + self.r                # B
            + self.r                # E
            + (self.sigma + 1)      # bc_off
            + len(self.bc_flat)
            + len(self.vc_flat)
        )


def build_occ_index(rlbwt: Rlbwt) -> OccIndex:
    """Build the occurrence index. Requires dense codes 1..sigma (shrink first)."""
    rlbwt.validate()
    r = rlbwt.r
    sigma = rlbwt.sigma
    codes = np.fromiter((c for c, _ in rlbwt.runs), dtype=np.int64, count=r)
    lens = np.fromiter((l for _, l in rlbwt.runs), dtype=np.int64, count=r)
    if codes.min() != 1 or codes.max() != sigma:
        raise InvalidRlbwt("codes must be dense 1..sigma; shrink the alphabet first")

    B = np.zeros(r + 1, dtype=np.int64)
    B[1:] = np.cumsum(lens) - lens + 1
    E = np.zeros(r + 1, dtype=np.int64)
    E[1:] = codes

    totals = np.zeros(sigma + 1, dtype=np.int64)
    np.add.at(totals, codes, lens)
    if np.any(totals[1:] == 0):
        raise InvalidRlbwt("codes must be dense 1..sigma; shrink the alphabet first")
    C = np.zeros(sigma + 2, dtype=np.int64)
    C[2:] = np.cumsum(totals[1:])

    per_code_runs = np.zeros(sigma + 1, dtype=np.int64)
    np.add.at(per_code_runs, codes, 1)
    bc_off = np.zeros(sigma + 2, dtype=np.int64)
    bc_off[2:] = np.cumsum(per_code_runs[1:])

    order = np.argsort(codes, kind="stable")
    bc_flat = B[1:][order]
    vc_flat = np.zeros(r + sigma, dtype=np.int64)
    lens_sorted = lens[order]
    for c in range(1, sigma + 1):
        bo = int(bc_off[c])
        cnt = int(bc_off[c + 1]) - bo
        vo = bo + c - 1
        vc_flat[vo] = 1
        vc_flat[vo + 1 : vo + cnt + 1] = 1 + np.cumsum(lens_sorted[bo : bo + cnt])
    return OccIndex(rlbwt.n, r, sigma, C, B, E, bc_off, bc_flat, vc_flat)
