"""The conversion driver: run-length BWT in, LZ77 parse of the reversed text out.

The driver reads the text right to left through repeated LF steps, growing a
pattern by backward search and asking the range-more-than machinery whether
the pattern occurs strictly further right.  A failed query closes a phrase:
a copy pair when the pattern had grown past one code, otherwise a literal.
The threshold state is lowered once per cursor advance, so a query at text
position x always runs at threshold x + 1.

Phrases are produced rightmost first; with a sentinel-terminated text the
first emitted phrase is always the sentinel literal.
"""

from dataclasses import dataclass, field

import numpy as np

from . import rmtq as _rmtq
from ._kernel import resolve_kernel
from .rlbwt import Rlbwt, build_occ_index, shrink_alphabet


class CorruptParse(ValueError):
    """Raised when an LZ77 parse cannot describe a text."""


@dataclass(frozen=True)
class Literal:
    code: int


@dataclass(frozen=True)
class Copy:
    pos: int
    length: int


@dataclass
class Lz77Parse:
    """Phrases in emission order (rightmost text phrase first); n = total length."""

    phrases: list = field(default_factory=list)
    n: int = 0

    @property
    def z(self) -> int:
        return len(self.phrases)


def convert(rlbwt: Rlbwt, kernel=None) -> Lz77Parse:
    """LZ77 parse of the reversed text underlying the given run-length BWT.

    Validates and shrinks the alphabet, builds the occurrence index and the
    partition layout, runs the driver with the selected kernel, and maps
    literal codes back through the shrink map.
    """
    rlbwt.validate()
    shrunk, W = shrink_alphabet(rlbwt)
    idx = build_occ_index(shrunk)
    chosen = resolve_kernel(kernel)
    layout = _rmtq.build_psa_layout(idx, shrunk, kernel=chosen)
    if chosen == "compiled":
        phrases = _drive_compiled(idx, layout, shrunk.y)
    else:
        phrases = _drive_python(idx, layout, shrunk.y)
    return map_phrases(Lz77Parse(phrases=phrases, n=rlbwt.n), W)


def _drive_python(idx, layout, y0) -> list:
    """The driver composed from the per-module operations."""
    n = idx.n
    state = _rmtq.initial_open_close(idx.r, n)
    out = []
    b, e, p, length, x = 1, n, -1, 1, n
    y = y0
    while x >= 1:
        c = idx.access(y)
        interval = idx.backward_search(b, e, c)
        if interval is None:
            answer = None
        else:
            b2, e2 = interval
            cls = _rmtq.classify_interval(layout, b2, e2)
            if cls.case_a:
                answer = _rmtq.rmtq_case_a(p)
            else:
                answer = _rmtq.rmtq_case_b(state, layout, b2, e2)
        if answer is None:
            if length > 1:
                out.append(Copy(p, length - 1))
                # the failed code is reprocessed against the full interval
            else:
                out.append(Literal(c))
                y_next = idx.lf(y)
                _rmtq.decrement_threshold(state, layout, y_next, x)
                x -= 1
                y = y_next
            b, e, p, length = 1, n, -1, 1
        else:
            y_next = idx.lf(y)
            _rmtq.decrement_threshold(state, layout, y_next, x)
            b, e, p, length, x, y = b2, e2, answer, length + 1, x - 1, y_next
    if length > 1:
        out.append(Copy(p, length - 1))
    return out


def _drive_compiled(idx, layout, y0) -> list:
    from . import _speedups

    n = idx.n
    state = _rmtq.initial_open_close(idx.r, n)
    out_tag = np.zeros(n + 1, dtype=np.int64)
    out_a = np.zeros(n + 1, dtype=np.int64)
    out_b = np.zeros(n + 1, dtype=np.int64)
    z = _speedups.convert_loop(
        n, idx.r, y0,
        idx.C, idx.B, idx.E, idx.bc_off, idx.bc_flat, idx.vc_flat,
        layout.Z, layout.rmq.table, layout.rmq.flog,
        state.open_val, state.open_pos, state.close_val, state.close_pos,
        out_tag, out_a, out_b,
    )
    phrases = []
    for i in range(z):
        if out_tag[i] == 0:
            phrases.append(Literal(int(out_a[i])))
        else:
            phrases.append(Copy(int(out_a[i]), int(out_b[i])))
    return phrases


def map_phrases(parse: Lz77Parse, W: np.ndarray) -> Lz77Parse:
    """Send literal codes through the shrink map W; copy phrases pass through."""
    sigma = len(W) - 1
    mapped = []
    for ph in parse.phrases:
        if isinstance(ph, Literal):
            if not 1 <= ph.code <= sigma:
                raise ValueError(f"literal code {ph.code} outside the shrink map")
            mapped.append(Literal(int(W[ph.code])))
        else:
            mapped.append(ph)
    return Lz77Parse(phrases=mapped, n=parse.n)


def lz_decode(parse: Lz77Parse):
    """Reconstruct the text a parse describes.

    Phrases are applied in emission order, filling the text from its right
    end.  A copy's source starts strictly right of the phrase start, so on a
    right-to-left fill every needed code is already present; sources that
    overlap the phrase resolve within it.
    """
    from .textkit import Text  # local import, textkit depends on this module

    n = 0
    for ph in parse.phrases:
        n += 1 if isinstance(ph, Literal) else ph.length
    if n != parse.n:
        raise CorruptParse(f"phrase lengths sum to {n}, parse claims {parse.n}")
    out = np.zeros(n + 1, dtype=np.int64)
    end = n
    for ph in parse.phrases:
        if isinstance(ph, Literal):
            out[end] = ph.code
            end -= 1
            continue
        length = ph.length
        start = end - length + 1
        if length < 1 or start < 1:
            raise CorruptParse("copy phrase does not fit the remaining prefix")
        if ph.pos <= start or ph.pos + length - 1 > n:
            raise CorruptParse(
                f"copy source [{ph.pos}, {ph.pos + length - 1}] is not a right "
                f"occurrence for the phrase at {start}"
            )
        for offset in range(length - 1, -1, -1):
            out[start + offset] = out[ph.pos + offset]
        end = start - 1
    return Text(codes=out, n=n, sigma=int(np.unique(out[1:]).size) if n else 0)
