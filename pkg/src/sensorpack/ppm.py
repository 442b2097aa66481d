"""Binary PPM (P6, maxval 255) raster I/O."""

import numpy as np

from .errors import FormatError, TruncatedError


def _tokens(data: bytes):
    """Yield header tokens, skipping whitespace and # comments."""
    i = 0
    n = len(data)
    while i < n:
        c = data[i : i + 1]
        if c.isspace():
            i += 1
            continue
        if c == b"#":
            while i < n and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
            continue
        j = i
        while j < n and not data[j : j + 1].isspace():
            j += 1
        yield data[i:j], j
        i = j


def read_ppm(data: bytes) -> np.ndarray:
    """Parse P6 bytes into an (h, w, 3) uint8 raster."""
    tok = _tokens(data)
    try:
        magic, _ = next(tok)
    except StopIteration:
        raise FormatError("empty file") from None
    if magic != b"P6":
        raise FormatError(f"not a binary PPM (magic {magic!r})")
    fields = []
    end = 0
    try:
        for _ in range(3):
            t, end = next(tok)
            fields.append(int(t))
    except (StopIteration, ValueError):
        raise FormatError("malformed PPM header") from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise FormatError("non-positive dimensions")
    if maxval != 255:
        raise FormatError(f"unsupported maxval {maxval}")
    raster = data[end + 1 : end + 1 + width * height * 3]
    if len(raster) < width * height * 3:
        raise TruncatedError("raster shorter than header promises")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width, 3).copy()


def write_ppm(img: np.ndarray) -> bytes:
    img = np.asarray(img, dtype=np.uint8)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError("expected an (h, w, 3) raster")
    h, w = img.shape[:2]
    return b"P6\n%d %d\n255\n" % (w, h) + img.tobytes()
