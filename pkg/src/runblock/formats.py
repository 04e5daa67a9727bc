"""File formats: Netpbm PBM rasters and the RLC1 plain run-length format.

PBM follows the usual conventions: P1 is ASCII with one digit per pixel,
P4 is packed MSB-first with each row padded to a byte boundary; bit 1 is
black, which this package calls foreground (1). `#` comments are allowed in
headers (and anywhere in P1).

RLC1 is a line-oriented text format chosen for diffability:

    RLC1\n
    <width> <height>\n
    <run> <run> ...\n        (one line per row, height lines)

Runs are decimal, space-separated, background-first and canonical; every
row must sum to the declared width. Readers here reject malformed input
instead of repairing it, naming the offending row.
"""

from __future__ import annotations

import numpy as np

from .core import MAX_DIM, CompressedDoc, is_canonical
from .errors import FormatError

RLC_MAGIC = "RLC1"


# ---------------------------------------------------------------- PBM


def _parse_pbm_header(data: bytes) -> tuple[bytes, int, int, int]:
    """Return (magic, width, height, offset of the raster payload)."""
    magic = data[:2]
    if magic not in (b"P1", b"P4"):
        raise FormatError(f"not a PBM file (magic {magic!r})")
    if len(data) < 3 or data[2] not in b" \t\r\n#":
        raise FormatError("missing whitespace after PBM magic")
    pos = 2
    fields = []
    while len(fields) < 2:
        if pos >= len(data):
            raise FormatError(f"truncated PBM header at byte {pos}")
        c = data[pos]
        if c in b" \t\r\n":
            pos += 1
        elif c in b"#":
            while pos < len(data) and data[pos] not in b"\r\n":
                pos += 1
        elif c in b"0123456789":
            start = pos
            while pos < len(data) and data[pos] in b"0123456789":
                pos += 1
            fields.append(int(data[start:pos]))
        else:
            raise FormatError(f"unexpected byte {bytes([c])!r} at byte {pos} in PBM header")
    width, height = fields
    if not 1 <= width <= MAX_DIM or not 1 <= height <= MAX_DIM:
        raise FormatError(f"bad PBM dimensions {width} x {height}")
    if magic == b"P4":
        # exactly one whitespace byte separates the header from the raster
        if pos >= len(data) or data[pos] not in b" \t\r\n":
            raise FormatError(f"missing separator after PBM header at byte {pos}")
        pos += 1
    return magic, width, height, pos


def pbm_header(data: bytes) -> tuple[int, int]:
    """Parse just the PBM header; returns (width, height)."""
    _, width, height, _ = _parse_pbm_header(data)
    return width, height


def read_pbm(data: bytes) -> np.ndarray:
    """Parse P1 or P4 bytes into a (height, width) uint8 array of 0/1."""
    magic, width, height, pos = _parse_pbm_header(data)
    if magic == b"P1":
        bits = np.empty(width * height, dtype=np.uint8)
        count = 0
        i = pos
        while i < len(data):
            c = data[i]
            if c in b"01":
                if count >= bits.size:
                    raise FormatError("trailing pixels after P1 raster")
                bits[count] = c - 0x30
                count += 1
            elif c in b"#":
                while i < len(data) and data[i] not in b"\r\n":
                    i += 1
            elif c not in b" \t\r\n":
                raise FormatError(f"unexpected byte {bytes([c])!r} at byte {i} in P1 raster")
            i += 1
        if count != bits.size:
            raise FormatError(f"P1 raster has {count} pixels, expected {bits.size}")
        return bits.reshape(height, width)
    # P4
    row_bytes = (width + 7) // 8
    payload = data[pos:]
    if len(payload) < row_bytes * height:
        raise FormatError(
            f"P4 payload is {len(payload)} bytes, expected {row_bytes * height}"
        )
    if len(payload) > row_bytes * height:
        raise FormatError("trailing bytes after P4 raster")
    packed = np.frombuffer(payload, dtype=np.uint8).reshape(height, row_bytes)
    return np.unpackbits(packed, axis=1)[:, :width]


def write_pbm(grid, plain: bool = False) -> bytes:
    """Serialize a 0/1 grid as P4 (default) or P1 (`plain=True`) bytes."""
    arr = np.asarray(grid, dtype=np.uint8)
    if arr.ndim != 2 or arr.size == 0:
        raise FormatError("pixel grid must be a non-empty 2-D array")
    height, width = arr.shape
    header = f"{'P1' if plain else 'P4'}\n{width} {height}\n".encode("ascii")
    if plain:
        lines = []
        for row in arr:
            digits = row.tolist()
            # keep lines comfortably under the 70-character convention
            for start in range(0, width, 32):
                lines.append(" ".join(str(d) for d in digits[start : start + 32]))
        return header + "\n".join(lines).encode("ascii") + b"\n"
    return header + np.packbits(arr, axis=1).tobytes()


# ---------------------------------------------------------------- RLC1


def rle_header(data: bytes) -> tuple[int, int]:
    """Parse just the RLC1 magic and dimension lines; returns (width, height).

    Lets callers validate block coordinates against the declared dimensions
    before the body is parsed.
    """
    head = data[:64].decode("ascii", errors="replace").split("\n")
    if not head or head[0] != RLC_MAGIC:
        raise FormatError(f"not an RLC1 file (first line {head[0]!r})")
    if len(head) < 2:
        raise FormatError("missing RLC1 dimension line")
    dims = head[1].split(" ")
    if len(dims) != 2 or not all(d.isdigit() for d in dims):
        raise FormatError(f"bad RLC1 dimension line {head[1]!r}")
    width, height = int(dims[0]), int(dims[1])
    if not 1 <= width <= MAX_DIM or not 1 <= height <= MAX_DIM:
        raise FormatError(f"bad RLC1 dimensions {width} x {height}")
    return width, height


def read_rle(data: bytes) -> CompressedDoc:
    """Parse RLC1 bytes into a CompressedDoc, validating every row."""
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as exc:
        raise FormatError(f"RLC1 file is not ASCII: {exc}") from None
    if not text.endswith("\n"):
        raise FormatError("RLC1 file must end with a newline")
    lines = text[:-1].split("\n")
    if not lines or lines[0] != RLC_MAGIC:
        raise FormatError(f"not an RLC1 file (first line {lines[0]!r})")
    if len(lines) < 2:
        raise FormatError("missing RLC1 dimension line")
    dims = lines[1].split(" ")
    if len(dims) != 2 or not all(d.isdigit() for d in dims):
        raise FormatError(f"bad RLC1 dimension line {lines[1]!r}")
    width, height = int(dims[0]), int(dims[1])
    if not 1 <= width <= MAX_DIM or not 1 <= height <= MAX_DIM:
        raise FormatError(f"bad RLC1 dimensions {width} x {height}")
    body = lines[2:]
    if len(body) != height:
        raise FormatError(f"got {len(body)} run rows, expected {height}")
    rows = []
    for number, line in enumerate(body, 1):
        tokens = line.split(" ")
        if any(not t.isdigit() for t in tokens):
            raise FormatError(f"row {number}: non-numeric run token in {line!r}")
        runs = tuple(int(t) for t in tokens)
        if sum(runs) != width:
            raise FormatError(
                f"row {number}: runs sum to {sum(runs)}, expected width {width}"
            )
        if not is_canonical(runs):
            raise FormatError(f"row {number}: runs are not canonical: {line!r}")
        rows.append(runs)
    return CompressedDoc(width=width, height=height, rows=tuple(rows))


def write_rle(doc: CompressedDoc) -> bytes:
    """Serialize a CompressedDoc as RLC1 bytes (canonical, newline per row,
    no trailing whitespace)."""
    lines = [RLC_MAGIC, f"{doc.width} {doc.height}"]
    lines.extend(" ".join(str(r) for r in row) for row in doc.rows)
    return ("\n".join(lines) + "\n").encode("ascii")
