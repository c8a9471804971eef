"""Static query primitives: predecessor counts over sorted sets and range maxima.

Both structures are built once and never mutated.  Queries use 1-based
positions, matching the rest of the package.
"""

from bisect import bisect_right

import numpy as np


def pred_count(arr, x, lo=0, hi=None):
    """Number of elements <= x in the sorted slice arr[lo:hi].

    This is the predecessor-count primitive shared by every sorted-array
    search in the package (run starts, rank checkpoints, subarray starts).
    """
    if hi is None:
        hi = len(arr)
    return bisect_right(arr, x, lo, hi) - lo


class PredecessorSet:
    """Sorted static integer set answering pred(x) = |{y in S : y <= x}|."""

    __slots__ = ("elements", "m")

    def __init__(self, elements):
        arr = np.asarray(list(elements), dtype=np.int64)
        if arr.size > 1 and not np.all(arr[1:] > arr[:-1]):
            raise ValueError("elements must be strictly increasing")
        self.elements = arr
        self.m = int(arr.size)

    def pred(self, x: int) -> int:
        return pred_count(self.elements, x)

    def element_count(self) -> int:
        return self.m

    def __len__(self) -> int:
        return self.m


class RmqTable:
    """Sparse-table range maximum query over a fixed integer array.

    rmq(i, j) returns max(values[i..j]) with 1-based inclusive bounds in
    constant time.  The table stores one doubling level per power of two, so
    it takes length * ceil(log2(length)) words; callers that budget space by
    element count should report it separately from the O(r) structures.
    """

    __slots__ = ("length", "table", "flog")

    def __init__(self, values):
        vals = np.asarray(list(values), dtype=np.int64)
        if vals.size == 0:
            raise ValueError("RmqTable needs at least one value")
        m = int(vals.size)
        self.length = m
        flog = np.zeros(m + 1, dtype=np.int64)
        for d in range(2, m + 1):
            flog[d] = flog[d >> 1] + 1
        self.flog = flog
        levels = int(flog[m]) + 1
        # table[k][i] = max over the 1-based window [i, i + 2^k - 1]
        table = np.zeros((levels, m + 1), dtype=np.int64)
        table[0, 1:] = vals
        for k in range(1, levels):
            half = 1 << (k - 1)
            limit = m - (1 << k) + 1
            table[k, 1 : limit + 1] = np.maximum(
                table[k - 1, 1 : limit + 1], table[k - 1, 1 + half : limit + half + 1]
            )
        self.table = table

    def rmq(self, i: int, j: int) -> int:
        if i > j:
            raise ValueError("empty range in rmq: i > j")
        if i < 1 or j > self.length:
            raise ValueError("rmq bounds out of range")
        k = int(self.flog[j - i + 1])
        return int(max(self.table[k, i], self.table[k, j - (1 << k) + 1]))

    def element_count(self) -> int:
        return int(self.table.size + self.flog.size)
