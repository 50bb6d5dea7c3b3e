"""Plain-text decomposition files.

::

    HCD 1
    n 6
    kind cycles
    count 4
    length 48
    pieces
    00 01 03 ...          one piece per line, fixed-width lowercase hex
    certificate           optional
    a 2
    b -
    dr 0
    sets 0 0 1 1          splitting set of each piece
    subsets -             or one id per piece
    rep 0 1 3 5 ...       one line per piece: representing positions
    end

``length`` counts edges, so a path line carries ``length + 1`` labels.
Lines end in LF; nothing depends on locale.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from .cube_graph import CubeSpec
from .deco_model import SplitDecomposition
from .errors import DecompositionError

MAGIC = "HCD 1"
_HEX = np.frombuffer(b"0123456789abcdef", dtype=np.uint8)


class FormatError(DecompositionError):
    """A decomposition file does not follow the format."""


@dataclass
class DecompositionFile:
    n: int
    kind: str
    pieces: np.ndarray
    certificate: SplitDecomposition | None = None

    @property
    def count(self) -> int:
        return self.pieces.shape[0]

    @property
    def length(self) -> int:
        cols = self.pieces.shape[1]
        return cols if self.kind == "cycles" else cols - 1


def hex_width(n: int) -> int:
    return max(1, (n + 3) // 4)


def format_rows(rows: np.ndarray, width: int) -> bytes:
    """Render a 2-D label array as fixed-width hex lines, vectorised."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    shifts = 4 * np.arange(width - 1, -1, -1, dtype=np.int64)
    digits = _HEX[(rows[:, :, None] >> shifts) & 15]
    sep = np.full(rows.shape + (1,), ord(" "), dtype=np.uint8)
    sep[:, -1, 0] = ord("\n")
    return np.concatenate([digits, sep], axis=2).tobytes()


def _ints(rows: np.ndarray) -> bytes:
    return "".join(" ".join(map(str, r)) + "\n" for r in np.asarray(rows).tolist()).encode()


def write_decomposition(
    target: str | Path | IO[bytes],
    n: int,
    kind: str,
    pieces: np.ndarray | Iterable[np.ndarray],
    certificate: SplitDecomposition | None = None,
    chunk: int = 4096,
    count: int | None = None,
) -> None:
    """Write pieces and an optional certificate.

    ``pieces`` may be an iterable of row blocks; with ``count`` given the
    blocks are written as they arrive instead of being collected first.
    """
    if kind not in ("cycles", "paths"):
        raise FormatError(f"unknown kind {kind!r}")
    if isinstance(target, (str, Path)):
        with open(target, "wb") as fh:
            write_decomposition(fh, n, kind, pieces, certificate, chunk, count)
        return
    if isinstance(pieces, np.ndarray):
        blocks: Iterable[np.ndarray] = [np.atleast_2d(pieces)]
        count = blocks[0].shape[0]
    elif count is None:
        blocks = [np.atleast_2d(b) for b in pieces]
        count = sum(b.shape[0] for b in blocks)
    else:
        blocks = (np.atleast_2d(b) for b in pieces)
    blocks = iter(blocks)
    first = next(blocks)
    cols = first.shape[1]
    length = cols if kind == "cycles" else cols - 1
    width = hex_width(n)
    head = f"{MAGIC}\nn {n}\nkind {kind}\ncount {count}\nlength {length}\npieces\n"
    target.write(head.encode())
    written = 0
    for block in (first, *blocks):
        written += block.shape[0]
        for start in range(0, block.shape[0], chunk):
            target.write(format_rows(block[start:start + chunk], width))
    if written != count:
        raise FormatError(f"header promised {count} pieces, wrote {written}")
    if certificate is not None:
        d = certificate
        lines = [
            "certificate",
            f"a {d.a}",
            f"b {'-' if d.b is None else d.b}",
            f"dr {int(d.dr)}",
            "sets " + " ".join(map(str, d.set_of.tolist())),
            "subsets " + ("-" if d.subset_of is None else " ".join(map(str, d.subset_of.tolist()))),
        ]
        target.write(("\n".join(lines) + "\n").encode())
        for start in range(0, d.count, chunk):
            target.write(b"".join(b"rep " + line for line in _ints(d.reps[start:start + chunk]).splitlines(True)))
    target.write(b"end\n")


def _parse_hex_block(lines: list[bytes], width: int) -> np.ndarray:
    if not lines:
        return np.zeros((0, 0), dtype=np.int64)
    tokens = len(lines[0].split())
    raw = b"".join(lines)
    stride = (width + 1) * tokens
    if len(raw) != stride * len(lines) or any(len(t) != width for t in lines[0].split()):
        raise FormatError("piece lines have inconsistent token counts or widths")
    buf = np.frombuffer(raw, dtype=np.uint8).reshape(len(lines), tokens, width + 1)
    chars = buf[:, :, :width]
    val = np.full(chars.shape, 255, dtype=np.int64)
    digit = (chars >= ord("0")) & (chars <= ord("9"))
    lower = (chars >= ord("a")) & (chars <= ord("f"))
    val[digit] = chars[digit] - ord("0")
    val[lower] = chars[lower] - ord("a") + 10
    if np.any(val == 255):
        raise FormatError("piece lines contain a non-hex character")
    seps = buf[:, :, width]
    if np.any(seps[:, :-1] != ord(" ")) or np.any(seps[:, -1] != ord("\n")):
        raise FormatError("piece tokens must be separated by single spaces")
    out = np.zeros(chars.shape[:2], dtype=np.int64)
    for i in range(width):
        out = (out << 4) | val[:, :, i]
    return out


def read_decomposition(source: str | Path | IO[bytes]) -> DecompositionFile:
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            return read_decomposition(fh)
    data = source.read()
    if isinstance(data, str):
        data = data.encode()
    lines = data.splitlines(keepends=True)
    if any(not ln.endswith(b"\n") or ln.endswith(b"\r\n") for ln in lines):
        raise FormatError("lines must end with a single LF")

    def field(idx: int, name: str) -> str:
        try:
            key, value = lines[idx].decode().rstrip("\n").split(" ", 1)
        except (IndexError, ValueError):
            raise FormatError(f"missing header field {name!r}") from None
        if key != name:
            raise FormatError(f"expected {name!r} on line {idx + 1}, found {key!r}")
        return value

    if not lines or lines[0].rstrip(b"\n").decode() != MAGIC:
        raise FormatError("missing HCD 1 header")
    try:
        n = int(field(1, "n"))
        kind = field(2, "kind")
        count = int(field(3, "count"))
        length = int(field(4, "length"))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if kind not in ("cycles", "paths"):
        raise FormatError(f"unknown kind {kind!r}")
    if len(lines) < 6 or lines[5] != b"pieces\n":
        raise FormatError("missing pieces section")
    body = lines[6:6 + count]
    if len(body) != count:
        raise FormatError(f"header promises {count} pieces, file has fewer")
    pieces = _parse_hex_block(body, hex_width(n))
    cols = length if kind == "cycles" else length + 1
    if count and pieces.shape[1] != cols:
        raise FormatError(f"pieces have {pieces.shape[1]} labels, header length implies {cols}")
    if np.any(pieces >> n):
        raise FormatError(f"label exceeds {n} bits")
    rest = lines[6 + count:]
    cert = None
    if rest and rest[0] == b"certificate\n":
        cert, rest = _read_certificate(rest[1:], n, pieces, count)
    if rest != [b"end\n"]:
        raise FormatError("expected 'end' after the last section")
    return DecompositionFile(n, kind, pieces, cert)


def _read_certificate(lines: list[bytes], n: int, pieces: np.ndarray, count: int):
    def take(i: int, key: str) -> str:
        if i >= len(lines):
            raise FormatError(f"certificate missing {key!r}")
        text = lines[i].decode().rstrip("\n")
        head, _, value = text.partition(" ")
        if head != key:
            raise FormatError(f"certificate expected {key!r}, found {head!r}")
        return value

    try:
        a = int(take(0, "a"))
        b_raw = take(1, "b")
        b = None if b_raw == "-" else int(b_raw)
        dr = bool(int(take(2, "dr")))
        set_of = np.array(take(3, "sets").split(), dtype=np.int64)
        sub_raw = take(4, "subsets")
        subset_of = None if sub_raw == "-" else np.array(sub_raw.split(), dtype=np.int64)
        reps = [take(5 + i, "rep").split() for i in range(count)]
        reps = np.array(reps, dtype=np.int64)
    except ValueError as exc:
        raise FormatError(f"certificate: {exc}") from None
    if set_of.shape != (count,) or (subset_of is not None and subset_of.shape != (count,)):
        raise FormatError("certificate id lists do not match the piece count")
    cert = SplitDecomposition(CubeSpec(n), pieces, reps, set_of, a, subset_of, b, dr)
    return cert, lines[5 + count:]


def dumps(n: int, kind: str, pieces: np.ndarray, certificate: SplitDecomposition | None = None) -> bytes:
    buf = io.BytesIO()
    write_decomposition(buf, n, kind, pieces, certificate)
    return buf.getvalue()


def loads(data: bytes) -> DecompositionFile:
    return read_decomposition(io.BytesIO(data))
