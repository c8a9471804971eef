"""Command line interface and on-disk formats.

Binary formats (little endian, 1-based positions):

  run-length BWT   magic "RLB1", version byte 1, then n, r, y as u64,
                   then r records of (code u32, length u64)
  LZ77 parse       magic "LZ71", version byte 1, then z as u64, then z
                   records: tag u8 0 + code u32 for a literal, or tag 1 +
                   position u64 + length u64 for a copy.  Phrases are stored
                   in emission order, rightmost text phrase first.

--format json writes the same fields as JSON.  Readers auto-detect either
encoding.  Exit codes: 0 success, 1 verification failure, 2 malformed input.
"""

import argparse
import json
import random
import struct
import sys
import time

import numpy as np

from ._kernel import available_kernels, resolve_kernel
from .converter import Copy, CorruptParse, Literal, Lz77Parse, convert, lz_decode
from .rlbwt import InvalidRlbwt, Rlbwt, build_occ_index, shrink_alphabet
from .rmtq import build_psa_layout, initial_open_close
from .textkit import build_rlbwt, oracle_lz77, text_from_bytes

RLBWT_MAGIC = b"RLB1"
LZ77_MAGIC = b"LZ71"
FORMAT_VERSION = 1


class FileFormatError(ValueError):
    """Raised when an on-disk artifact cannot be parsed."""


# -- serialization --------------------------------------------------------


def write_rlbwt(rlbwt: Rlbwt, fmt: str = "bin") -> bytes:
    if fmt == "json":
        doc = {
            "format": "rlbwt",
            "version": FORMAT_VERSION,
            "n": rlbwt.n,
            "r": rlbwt.r,
            "y": rlbwt.y,
            "runs": [[int(c), int(l)] for c, l in rlbwt.runs],
        }
        return (json.dumps(doc, indent=None, separators=(",", ":")) + "\n").encode()
    parts = [RLBWT_MAGIC, struct.pack("<B", FORMAT_VERSION),
             struct.pack("<QQQ", rlbwt.n, rlbwt.r, rlbwt.y)]
    for code, length in rlbwt.runs:
        parts.append(struct.pack("<IQ", code, length))
    return b"".join(parts)


def read_rlbwt(data: bytes) -> Rlbwt:
    if data[:4] == RLBWT_MAGIC:
        try:
            if data[4] != FORMAT_VERSION:
                raise FileFormatError(f"unsupported rlbwt version {data[4]}")
            n, r, y = struct.unpack_from("<QQQ", data, 5)
            runs = []
            off = 29
            for _ in range(r):
                code, length = struct.unpack_from("<IQ", data, off)
                runs.append((code, length))
                off += 12
            if off != len(data):
                raise FileFormatError("trailing bytes after run records")
        except (struct.error, IndexError) as exc:
            raise FileFormatError(f"truncated rlbwt file: {exc}") from exc
    else:
        try:
            doc = json.loads(data.decode())
            if doc.get("format") != "rlbwt":
                raise FileFormatError("not an rlbwt document")
            n, r, y = int(doc["n"]), int(doc["r"]), int(doc["y"])
            runs = [(int(c), int(l)) for c, l in doc["runs"]]
        except (ValueError, KeyError, TypeError, UnicodeDecodeError) as exc:
            if isinstance(exc, FileFormatError):
                raise
            raise FileFormatError(f"unreadable rlbwt input: {exc}") from exc
    rlbwt = Rlbwt(runs=runs, n=n, r=r, y=y,
                  sigma=len({c for c, _ in runs}))
    try:
        rlbwt.validate()
    except InvalidRlbwt as exc:
        raise FileFormatError(f"invalid rlbwt contents: {exc}") from exc
    return rlbwt


def write_lz77(parse: Lz77Parse, fmt: str = "bin") -> bytes:
    if fmt == "json":
        phrases = []
        for ph in parse.phrases:
            if isinstance(ph, Literal):
                phrases.append({"lit": int(ph.code)})
            else:
                phrases.append({"p": int(ph.pos), "len": int(ph.length)})
        doc = {"format": "lz77", "version": FORMAT_VERSION, "z": parse.z,
               "phrases": phrases}
        return (json.dumps(doc, indent=None, separators=(",", ":")) + "\n").encode()
    parts = [LZ77_MAGIC, struct.pack("<B", FORMAT_VERSION),
             struct.pack("<Q", parse.z)]
    for ph in parse.phrases:
        if isinstance(ph, Literal):
            parts.append(struct.pack("<BI", 0, ph.code))
        else:
            parts.append(struct.pack("<BQQ", 1, ph.pos, ph.length))
    return b"".join(parts)


def read_lz77(data: bytes) -> Lz77Parse:
    phrases = []
    if data[:4] == LZ77_MAGIC:
        try:
            if data[4] != FORMAT_VERSION:
                raise FileFormatError(f"unsupported lz77 version {data[4]}")
            (z,) = struct.unpack_from("<Q", data, 5)
            off = 13
            for _ in range(z):
                tag = data[off]
                off += 1
                if tag == 0:
                    (code,) = struct.unpack_from("<I", data, off)
                    off += 4
                    phrases.append(Literal(code))
                elif tag == 1:
                    pos, length = struct.unpack_from("<QQ", data, off)
                    off += 16
                    phrases.append(Copy(pos, length))
                else:
                    raise FileFormatError(f"unknown phrase tag {tag}")
            if off != len(data):
                raise FileFormatError("trailing bytes after phrase records")
        except (struct.error, IndexError) as exc:
            raise FileFormatError(f"truncated lz77 file: {exc}") from exc
    else:
        try:
            doc = json.loads(data.decode())
            if doc.get("format") != "lz77":
                raise FileFormatError("not an lz77 document")
            for entry in doc["phrases"]:
                if "lit" in entry:
                    phrases.append(Literal(int(entry["lit"])))
                else:
                    phrases.append(Copy(int(entry["p"]), int(entry["len"])))
            if int(doc["z"]) != len(phrases):
                raise FileFormatError("z does not match the phrase list")
        except (ValueError, KeyError, TypeError, UnicodeDecodeError) as exc:
            if isinstance(exc, FileFormatError):
                raise
            raise FileFormatError(f"unreadable lz77 input: {exc}") from exc
    n = sum(1 if isinstance(ph, Literal) else ph.length for ph in phrases)
    return Lz77Parse(phrases=phrases, n=n)


# -- corpus generators ----------------------------------------------------


def gen_fibonacci(n: int) -> bytes:
    if n <= 0:
        return b""
    prev, cur = b"a", b"ab"
    while len(cur) < n:
        prev, cur = cur, cur + prev
    return cur[:n]


def gen_repeat(n: int, unit: bytes = b"ab") -> bytes:
    if n <= 0:
        return b""
    reps = n // len(unit) + 1
    return (unit * reps)[:n]


def gen_random(n: int, sigma: int = 256, seed: int = 0) -> bytes:
    rng = random.Random(seed)
    return bytes(rng.randrange(sigma) for _ in range(n))


GENERATORS = {"fibonacci": gen_fibonacci, "repeat": gen_repeat, "random": gen_random}


# -- plumbing -------------------------------------------------------------


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write_output(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    with open(path, "wb") as fh:
        fh.write(data)


def _decoded_bytes(parse: Lz77Parse) -> bytes:
    text = lz_decode(parse)
    codes = text.codes[1 : text.n + 1]
    if codes.size and codes[-1] == 0:
        codes = codes[:-1]
    if codes.size and (codes.min() < 1 or codes.max() > 256):
        raise CorruptParse("decoded codes leave the byte range")
    return bytes((codes - 1).astype(np.uint8).tolist())


# -- subcommands ----------------------------------------------------------


def cmd_build(args) -> int:
    data = _read_input(args.input)
    rlbwt = build_rlbwt(text_from_bytes(data))
    _write_output(args.output, write_rlbwt(rlbwt, args.format))
    print(f"n={rlbwt.n} r={rlbwt.r} ratio={rlbwt.r / rlbwt.n:.4f}", file=sys.stderr)
    return 0


def cmd_convert(args) -> int:
    rlbwt = read_rlbwt(_read_input(args.input))
    kernel = resolve_kernel(args.kernel)
    t0 = time.perf_counter()
    parse = convert(rlbwt, kernel=kernel)
    elapsed = time.perf_counter() - t0
    if args.strip_sentinel:
        if not parse.phrases or not isinstance(parse.phrases[0], Literal):
            raise CorruptParse("parse does not start with a sentinel literal")
        parse = Lz77Parse(phrases=parse.phrases[1:], n=parse.n - 1)
    _write_output(args.output, write_lz77(parse, args.format))
    print(f"n={rlbwt.n} r={rlbwt.r} z={parse.z} kernel={kernel} "
          f"seconds={elapsed:.3f}", file=sys.stderr)
    return 0


def cmd_decode(args) -> int:
    parse = read_lz77(_read_input(args.input))
    _write_output(args.output, _decoded_bytes(parse))
    return 0


def cmd_verify(args) -> int:
    data = _read_input(args.input)
    text = text_from_bytes(data)
    rlbwt = build_rlbwt(text)
    got = convert(rlbwt, kernel=resolve_kernel(args.kernel))
    want = oracle_lz77(text)
    failures = 0

    decoded = lz_decode(got)
    ok = decoded.n == text.n and bool(np.array_equal(decoded.codes, text.codes))
    print(f"check=roundtrip status={'ok' if ok else 'fail'}")
    failures += 0 if ok else 1

    ok = got.z == want.z
    print(f"check=phrase_count status={'ok' if ok else 'fail'} "
          f"got={got.z} want={want.z}")
    failures += 0 if ok else 1

    divergent = -1
    for i in range(min(got.z, want.z)):
        a, b = got.phrases[i], want.phrases[i]
        la = 1 if isinstance(a, Literal) else a.length
        lb = 1 if isinstance(b, Literal) else b.length
        if la != lb or isinstance(a, Literal) != isinstance(b, Literal):
            divergent = i
            break
    if divergent < 0 and got.z != want.z:
        divergent = min(got.z, want.z)
    if divergent < 0:
        print("check=phrase_boundaries status=ok")
    else:
        print(f"check=phrase_boundaries status=fail first_divergent_phrase={divergent}")
        failures += 1

    bad = _invalid_copy(got, text)
    if bad < 0:
        print("check=copy_sources status=ok")
    else:
        print(f"check=copy_sources status=fail first_divergent_phrase={bad}")
        failures += 1

    return 1 if failures else 0


def _invalid_copy(parse: Lz77Parse, text) -> int:
    """Index of the first copy phrase whose source does not reproduce it, or -1."""
    end = text.n
    for i, ph in enumerate(parse.phrases):
        if isinstance(ph, Literal):
            if text.codes[end] != ph.code:
                return i
            end -= 1
            continue
        start = end - ph.length + 1
        src = ph.pos
        if src <= start or src + ph.length - 1 > text.n:
            return i
        if not np.array_equal(text.codes[start : start + ph.length],
                              text.codes[src : src + ph.length]):
            return i
        end = start - 1
    return -1


def cmd_stats(args) -> int:
    rlbwt = read_rlbwt(_read_input(args.input))
    lens = [l for _, l in rlbwt.runs]
    doc = {
        "n": rlbwt.n,
        "r": rlbwt.r,
        "y": rlbwt.y,
        "sigma": rlbwt.sigma,
        "ratio": round(rlbwt.r / rlbwt.n, 6),
        "max_run": max(lens),
        "mean_run": round(rlbwt.n / rlbwt.r, 3),
    }
    print(json.dumps(doc, separators=(",", ":")))
    return 0


def cmd_bench(args) -> int:
    gen = GENERATORS[args.generator]
    data = gen(args.length, seed=args.seed) if args.generator == "random" else gen(args.length)
    t0 = time.perf_counter()
    text = text_from_bytes(data)
    rlbwt = build_rlbwt(text)
    t_build = time.perf_counter() - t0
    print(f"generator={args.generator} n={rlbwt.n} r={rlbwt.r}")
    print(f"build_seconds={t_build:.3f}")

    kernels = available_kernels() if args.kernel == "both" else (resolve_kernel(args.kernel),)
    z = None
    for kernel in kernels:
        t0 = time.perf_counter()
        parse = convert(rlbwt, kernel=kernel)
        elapsed = time.perf_counter() - t0
        z = parse.z
        print(f"kernel={kernel} convert_seconds={elapsed:.3f} z={z}")

    shrunk, _ = shrink_alphabet(rlbwt)
    idx = build_occ_index(shrunk)
    layout = build_psa_layout(idx, shrunk)
    state = initial_open_close(idx.r, idx.n)
    occ_e = idx.element_count()
    psa_e = layout.element_count()
    state_e = state.element_count()
    total = occ_e + psa_e + state_e
    print(f"elements_occ={occ_e} elements_psa={psa_e} elements_state={state_e} "
          f"elements_total={total} budget_16r={16 * rlbwt.r} "
          f"rmq_elements={layout.rmq_element_count()}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="rlbwt2lz",
        description="Convert a run-length BWT into the LZ77 parse of the reversed text.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="plaintext bytes -> run-length BWT file")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--format", choices=("bin", "json"), default="bin")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("convert", help="run-length BWT file -> LZ77 parse file")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--format", choices=("bin", "json"), default="bin")
    p.add_argument("--strip-sentinel", action="store_true",
                   help="drop the leading sentinel literal from the parse")
    p.add_argument("--kernel", choices=("auto", "compiled", "python"), default="auto")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("decode", help="LZ77 parse file -> plaintext bytes")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", help="check the pipeline against the brute-force parse")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--kernel", choices=("auto", "compiled", "python"), default="auto")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="report run statistics of a run-length BWT file")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="time build and convert on generated corpora")
    p.add_argument("--generator", choices=sorted(GENERATORS), default="fibonacci")
    p.add_argument("--length", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kernel", choices=("auto", "compiled", "python", "both"),
                   default="auto")
    p.set_defaults(func=cmd_bench)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileFormatError, InvalidRlbwt, CorruptParse) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
