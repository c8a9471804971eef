"""Range more-than queries over an implicit suffix array in O(r) space.

The suffix array is partitioned into r subarrays, one per BWT run: subarray i
covers the rows that are LF images of run X[i]'s positions, and Z[i] is its
first row.  Sorting by LF image makes Z strictly increasing with Z[1] = 1.
M[i] is the maximum suffix-array value inside subarray i.

A query asks for some value >= k inside rows [b, e].  Two cases:

  case A: [b, e] sits strictly inside one subarray.  Then the previous
          query in a conversion walk answered for the one-shorter pattern,
          and that answer minus one is valid here.
  case B: everything else.  The first touched subarray contributes through
          its close pair (last position with value >= k), the last touched
          subarray through its open pair (first such position), and fully
          covered middle subarrays through a range-maximum over M.

The open/close pairs live in a state that starts empty at threshold n + 1
and admits one value per decrement, mirroring the conversion walk that
uncovers suffix-array values n, n-1, ... one per step.
"""

from typing import NamedTuple, Optional

import numpy as np

from .rlbwt import OccIndex, Rlbwt
from .succinct import RmqTable, pred_count
from ._kernel import resolve_kernel


class PsaLayout:
    """Static partition layout: subarray starts Z, source runs X, maxima M."""

    __slots__ = ("n", "r", "Z", "X", "M", "rmq")

    def __init__(self, n, r, Z, X, M):
        self.n = n
        self.r = r
        self.Z = Z            # padded; Z[r+1] = n + 1 closes the last subarray
        self.X = X            # padded; X[i] = run index the subarray came from
        self.M = M            # padded; M[i] = max suffix-array value in subarray i
        self.rmq = RmqTable(M[1 : r + 1])

    def subarray_of(self, row: int) -> int:
        """Index of the subarray containing the given suffix-array row."""
        return pred_count(self.Z, row, 1, self.r + 1)

    def sub_start(self, i: int) -> int:
        return int(self.Z[i])

    def sub_end(self, i: int) -> int:
        return int(self.Z[i + 1]) - 1

    def element_count(self) -> int:
        """Z, X and M entries; the range-maximum table is reported separately."""
        return (self.r + 1) + self.r + self.r

    def rmq_element_count(self) -> int:
        return self.rmq.element_count()


class OpenCloseState:
    """Mutable open/close pairs per subarray at the current threshold k.

    At threshold k the state knows exactly the suffix-array values >= k.
    open_pos[i] is the first row of subarray i holding such a value (n + 1
    when none), close_pos[i] the last (0 when none); open_val/close_val hold
    the values at those rows (-1 when none).
    """

    __slots__ = ("k", "r", "n", "open_val", "open_pos", "close_val", "close_pos")

    def __init__(self, r: int, n: int, k: int):
        self.r = r
        self.n = n
        self.k = k
        self.open_val = np.full(r + 1, -1, dtype=np.int64)
        self.open_pos = np.full(r + 1, n + 1, dtype=np.int64)
        self.close_val = np.full(r + 1, -1, dtype=np.int64)
        self.close_pos = np.zeros(r + 1, dtype=np.int64)

    def element_count(self) -> int:
        return 4 * self.r


class IntervalClass(NamedTuple):
    case_a: bool
    hb: int
    he: int


def build_psa_layout(idx: OccIndex, rlbwt: Rlbwt, kernel: Optional[str] = None) -> PsaLayout:
    """Build Z, X and M from the occurrence index alone.

    Z and X come from the LF images of the run starts: within one code the
    images keep run order, and blocks of successive codes occupy disjoint
    increasing row ranges, so concatenating per-code blocks yields Z already
    sorted.  M is filled by walking LF across all n rows from row y; step t
    of that walk sits at the row whose suffix-array value is n - t + 1.
    """
    n, r, sigma = idx.n, idx.r, idx.sigma
    Z = np.zeros(r + 2, dtype=np.int64)
    X = np.zeros(r + 1, dtype=np.int64)
    run_of_start = np.zeros(r, dtype=np.int64)
    pos = 0
    for c in range(1, sigma + 1):
        bo = int(idx.bc_off[c])
        cnt = int(idx.bc_off[c + 1]) - bo
        vo = bo + c - 1
        Z[pos + 1 : pos + cnt + 1] = int(idx.C[c]) + idx.vc_flat[vo : vo + cnt]
        run_of_start[pos : pos + cnt] = np.searchsorted(idx.B[1:], idx.bc_flat[bo : bo + cnt]) + 1
        pos += cnt
    X[1:] = run_of_start
    Z[r + 1] = n + 1
    if Z[1] != 1 or np.any(np.diff(Z[1:]) <= 0):
        raise AssertionError("subarray starts are not strictly increasing from 1")

    M = np.zeros(r + 1, dtype=np.int64)
    chosen = resolve_kernel(kernel)
    if chosen == "compiled":
        from . import _speedups

        _speedups.psa_max_walk(n, rlbwt.y, idx.C, idx.B, idx.E, idx.bc_off,
                               idx.bc_flat, idx.vc_flat, Z, M)
    else:
        row = rlbwt.y
        for t in range(1, n + 1):
            row = idx.lf(row)
            value = n - t + 1
            sub = pred_count(Z, row, 1, r + 1)
            if value > M[sub]:
                M[sub] = value
    return PsaLayout(n, r, Z, X, M)


def initial_open_close(r: int, n: int) -> OpenCloseState:
    """All-empty state at threshold n + 1: no suffix-array value qualifies yet."""
    return OpenCloseState(r, n, n + 1)


def decrement_threshold(state: OpenCloseState, layout: PsaLayout,
                        sa_row: int, new_value: int) -> None:
    """Lower the threshold by one, admitting new_value at its suffix-array row.

    Only the subarray containing sa_row can change: the admitted row extends
    its open pair if it lies before the current first qualifying row and its
    close pair if it lies after the current last one.  The empty-pair
    encodings (position n + 1 / 0) make both updates plain comparisons.
    """
    if new_value != state.k - 1:
        raise ValueError(
            f"threshold must fall by one: state at {state.k}, got value {new_value}"
        )
    if not 1 <= sa_row <= state.n:
        raise ValueError("admitted row out of range")
    i = layout.subarray_of(sa_row)
    if sa_row < state.open_pos[i]:
        state.open_pos[i] = sa_row
        state.open_val[i] = new_value
    if sa_row > state.close_pos[i]:
        state.close_pos[i] = sa_row
        state.close_val[i] = new_value
    state.k = new_value


def classify_interval(layout: PsaLayout, b: int, e: int) -> IntervalClass:
    """Case A iff [b, e] lies strictly inside one subarray (both ends strict)."""
    if not 1 <= b <= e <= layout.n:
        raise IndexError("interval out of range")
    hb = layout.subarray_of(b)
    he = layout.subarray_of(e)
    case_a = hb == he and b > layout.sub_start(hb) and e < layout.sub_end(hb)
    return IntervalClass(case_a, hb, he)


def rmtq_case_a(previous_answer: int) -> int:
    """Strict containment reuses the previous conversion answer minus one."""
    if previous_answer is None or previous_answer < 1:
        raise ValueError("case A requires a usable previous answer")
    return previous_answer - 1


def rmtq_case_b(state: OpenCloseState, layout: PsaLayout, b: int, e: int):
    """Some suffix-array value >= state.k in rows [b, e], or None.

    Checks the close pair of the first touched subarray, then the open pair
    of the last, then the range maximum over fully covered middle subarrays.
    When b and e share a subarray the two pair checks alone decide.
    """
    hb = layout.subarray_of(b)
    he = layout.subarray_of(e)
    cp = int(state.close_pos[hb])
    if b <= cp <= e:
        return int(state.close_val[hb])
    op = int(state.open_pos[he])
    if b <= op <= e:
        return int(state.open_val[he])
    if hb + 1 <= he - 1:
        mx = layout.rmq.rmq(hb + 1, he - 1)
        if mx >= state.k:
            return mx
    return None
