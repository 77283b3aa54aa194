"""Binary PGM (P5, 8-bit) image reading and writing."""

from __future__ import annotations

import numpy as np


def _read_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # skip whitespace and '#' comment lines between header tokens
    n = len(data)
    while pos < n:
        c = data[pos:pos + 1]
        if c == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif c.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos:pos + 1].isspace():
        pos += 1
    if start == pos:
        raise ValueError("truncated PGM header")
    return data[start:pos], pos


def read_pgm(path) -> np.ndarray:
    """Read an 8-bit binary PGM into a (height, width) uint8 array."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic, pos = _read_token(data, 0)
    if magic != b"P5":
        raise ValueError(f"not a binary PGM (magic {magic!r})")
    width, pos = _read_token(data, pos)
    height, pos = _read_token(data, pos)
    maxval, pos = _read_token(data, pos)
    w, h, mv = int(width), int(height), int(maxval)
    if w <= 0 or h <= 0:
        raise ValueError("invalid PGM dimensions")
    if not 0 < mv <= 255:
        raise ValueError("only 8-bit PGM (maxval <= 255) is supported")
    pos += 1  # single whitespace byte after maxval
    raster = data[pos:pos + w * h]
    if len(raster) != w * h:
        raise ValueError("truncated PGM raster")
    return np.frombuffer(raster, np.uint8).reshape(h, w).copy()


def write_pgm(path, image) -> None:
    """Write a uint8 (height, width) array as binary PGM."""
    img = np.asarray(image)
    if img.ndim != 2:
        raise ValueError("image must be two-dimensional")
    if img.dtype != np.uint8:
        if img.min() < 0 or img.max() > 255:
            raise ValueError("image values must fit in 8 bits")
        img = img.astype(np.uint8)
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (w, h))
        fh.write(img.tobytes())
