"""Full-range BT.601 color conversion and 2x2 chroma subsampling.

All rounding is half-up (toward +inf) so that the scalar and vectorized
paths agree bit for bit.
"""

import numpy as np

SUBSAMPLING_MODES = ("444", "420")


def _round_clip(x: np.ndarray) -> np.ndarray:
    return np.clip(np.floor(x + 0.5), 0, 255).astype(np.uint8)


def rgb_to_ycbcr(r: int, g: int, b: int) -> tuple[int, int, int]:
    y = 0.299 * r + 0.587 * g + 0.114 * b
    cb = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b
    cr = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b
    out = np.floor(np.array([y, cb, cr]) + 0.5)
    y, cb, cr = np.clip(out, 0, 255).astype(int)
    return int(y), int(cb), int(cr)


def ycbcr_to_rgb(y: int, cb: int, cr: int) -> tuple[int, int, int]:
    r = y + 1.402 * (cr - 128.0)
    g = y - 0.344136 * (cb - 128.0) - 0.714136 * (cr - 128.0)
    b = y + 1.772 * (cb - 128.0)
    out = np.floor(np.array([r, g, b]) + 0.5)
    r, g, b = np.clip(out, 0, 255).astype(int)
    return int(r), int(g), int(b)


def rgb_image_to_planes(img: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split an (h, w, 3) uint8 image into full-resolution Y, Cb, Cr planes."""
    rgb = np.asarray(img, dtype=np.float64)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    y = 0.299 * r + 0.587 * g + 0.114 * b
    cb = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b
    cr = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b
    return _round_clip(y), _round_clip(cb), _round_clip(cr)


def planes_to_rgb_image(y: np.ndarray, cb: np.ndarray, cr: np.ndarray) -> np.ndarray:
    yf = np.asarray(y, dtype=np.float64)
    cbf = np.asarray(cb, dtype=np.float64) - 128.0
    crf = np.asarray(cr, dtype=np.float64) - 128.0
    r = yf + 1.402 * crf
    g = yf - 0.344136 * cbf - 0.714136 * crf
    b = yf + 1.772 * cbf
    return np.stack([_round_clip(r), _round_clip(g), _round_clip(b)], axis=-1)


def subsample_chroma(plane: np.ndarray, mode: str) -> np.ndarray:
    """4:2:0 averages each 2x2 group (half rounds up); 4:4:4 is identity."""
    if mode == "444":
        return np.array(plane, copy=True)
    if mode != "420":
        raise ValueError(f"unknown subsampling mode {mode!r}")
    p = np.asarray(plane, dtype=np.int64)
    h, w = p.shape
    if h % 2 or w % 2:
        p = np.pad(p, ((0, h % 2), (0, w % 2)), mode="edge")
    s = p[0::2, 0::2] + p[0::2, 1::2] + p[1::2, 0::2] + p[1::2, 1::2]
    return ((s + 2) // 4).astype(np.uint8)


def upsample_chroma(plane: np.ndarray, width: int, height: int, mode: str) -> np.ndarray:
    if mode == "444":
        return np.asarray(plane)[:height, :width]
    up = np.repeat(np.repeat(np.asarray(plane), 2, axis=0), 2, axis=1)
    return up[:height, :width]
