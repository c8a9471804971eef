"""rlbwt2lz: run-length BWT to LZ77 of the reversed text, in O(r) working space."""

from ._kernel import HAVE_SPEEDUPS, available_kernels, default_kernel
from .converter import (
    Copy,
    CorruptParse,
    Literal,
    Lz77Parse,
    convert,
    lz_decode,
    map_phrases,
)
from .rlbwt import (
    InvalidRlbwt,
    OccIndex,
    Rlbwt,
    build_occ_index,
    shrink_alphabet,
)
from .rmtq import (
    OpenCloseState,
    PsaLayout,
    build_psa_layout,
    classify_interval,
    decrement_threshold,
    initial_open_close,
    rmtq_case_a,
    rmtq_case_b,
)
from .succinct import PredecessorSet, RmqTable
from .textkit import (
    SuffixArray,
    Text,
    build_rlbwt,
    build_suffix_array,
    bwt_from_sa,
    oracle_lz77,
    oracle_rmtq,
    rle_encode,
    text_from_bytes,
    text_from_codes,
)

__version__ = "0.1.0"

__all__ = [
    "HAVE_SPEEDUPS",
    "available_kernels",
    "default_kernel",
    "Copy",
    "CorruptParse",
    "Literal",
    "Lz77Parse",
    "convert",
    "lz_decode",
    "map_phrases",
    "InvalidRlbwt",
    "OccIndex",
    "Rlbwt",
    "build_occ_index",
    "shrink_alphabet",
    "OpenCloseState",
    "PsaLayout",
    "build_psa_layout",
    "classify_interval",
    "decrement_threshold",
    "initial_open_close",
    "rmtq_case_a",
    "rmtq_case_b",
    "PredecessorSet",
    "RmqTable",
    "SuffixArray",
    "Text",
    "build_rlbwt",
    "build_suffix_array",
    "bwt_from_sa",
    "oracle_lz77",
    "oracle_rmtq",
    "rle_encode",
    "text_from_bytes",
    "text_from_codes",
    "__version__",
]
