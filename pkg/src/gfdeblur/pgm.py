"""PGM (portable graymap) reading and writing.

Supported: binary P5 with 8-bit or 16-bit (big-endian) samples, and
ASCII P2.  Intensities map to [0, 255] reals on read; writes clamp to
[0, maxval] and round half away from zero, so written files round-trip
bit-exactly.
"""

from __future__ import annotations

import numpy as np

from .errors import PgmParseError, UnsupportedFormat


def _read_header_tokens(data: bytes, count: int):
    """Pull `count` whitespace/comment-delimited tokens after the magic.

    Returns (tokens, offset of the byte after the final delimiter).
    """
    tokens = []
    pos = 2  # past the magic
    while len(tokens) < count:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if pos == start:
            raise PgmParseError(f"truncated header at byte {pos}")
        tok = data[start:pos]
        if not tok.isdigit():
            raise PgmParseError(
                f"expected integer header field at byte {start}, got {tok!r}"
            )
        tokens.append(int(tok))
    if pos >= len(data):
        raise PgmParseError(f"missing payload after header at byte {pos}")
    return tokens, pos + 1  # exactly one whitespace byte before payload


def read_image(path) -> np.ndarray:
    """Read a PGM file as a float64 image with intensities in [0, 255]."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise UnsupportedFormat(f"not a PGM file (magic {magic!r})")
    (width, height, maxval), payload_at = _read_header_tokens(data, 3)
    if width < 1 or height < 1:
        raise PgmParseError(f"bad dimensions {width}x{height}")
    if not 0 < maxval < 65536:
        raise PgmParseError(f"bad maxval {maxval}")

    if magic == b"P5":
        bytes_per = 1 if maxval < 256 else 2
        expected = width * height * bytes_per
        payload = data[payload_at : payload_at + expected]
        if len(payload) != expected:
            raise PgmParseError(
                f"P5 payload truncated at byte {payload_at + len(payload)}: "
                f"expected {expected} bytes, got {len(payload)}"
            )
        dtype = np.uint8 if bytes_per == 1 else np.dtype(">u2")
        vals = np.frombuffer(payload, dtype=dtype).astype(np.float64)
    else:
        fields = data[payload_at - 1 :].split()
        if len(fields) < width * height:
            raise PgmParseError(
                f"P2 payload has {len(fields)} samples, expected {width * height}"
            )
        try:
            vals = np.array([int(f) for f in fields[: width * height]], dtype=np.float64)
        except ValueError as exc:
            raise PgmParseError(f"non-integer P2 sample: {exc}") from exc

    img = vals.reshape(height, width)
    if maxval != 255:
        img = img * (255.0 / maxval)
    return img


def quantize(img: np.ndarray, maxval: int = 255) -> np.ndarray:
    """Clamp to [0, maxval] and round half away from zero."""
    clamped = np.clip(img, 0.0, float(maxval))
    return np.floor(clamped + 0.5)


def write_image(path, img: np.ndarray, maxval: int = 255, ascii_format: bool = False):
    """Write an image as P5 (default) or P2, quantized to [0, maxval]."""
    if not 0 < maxval < 65536:
        raise ValueError(f"bad maxval {maxval}")
    q = quantize(img, maxval)
    height, width = q.shape
    header = f"P{'2' if ascii_format else '5'}\n{width} {height}\n{maxval}\n"
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        if ascii_format:
            body = "\n".join(
                " ".join(str(int(v)) for v in row) for row in q
            )
            fh.write(body.encode("ascii") + b"\n")
        else:
            dtype = np.uint8 if maxval < 256 else np.dtype(">u2")
            fh.write(q.astype(dtype).tobytes())
