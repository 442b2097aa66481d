"""Quality-scaled quantization of DCT coefficients.

The two base matrices are the widely published luminance/chrominance
examples (luma DC entry 16, chroma DC entry 17). A quality level in
[1, 100] maps to a percentage scale of 5000/q below 50 and 200 - 2q
at or above, with scaled entries clamped to [1, 255].
"""

import numpy as np

LUMA_BASE = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.int64,
)

CHROMA_BASE = np.array(
    [
        [17, 18, 24, 47, 99, 99, 99, 99],
        [18, 21, 26, 66, 99, 99, 99, 99],
        [24, 26, 56, 99, 99, 99, 99, 99],
        [47, 66, 99, 99, 99, 99, 99, 99],
        [99, 99, 99, 99, 99, 99, 99, 99],
        [99, 99, 99, 99, 99, 99, 99, 99],
        [99, 99, 99, 99, 99, 99, 99, 99],
        [99, 99, 99, 99, 99, 99, 99, 99],
    ],
    dtype=np.int64,
)


def check_quality(quality: int) -> int:
    q = int(quality)
    if not 1 <= q <= 100:
        raise ValueError(f"quality {quality} outside [1, 100]")
    return q


def scale_quant_matrix(base: np.ndarray, quality: int) -> np.ndarray:
    """floor((base * scale + 50) / 100) with exact rational arithmetic."""
    q = check_quality(quality)
    base = np.asarray(base, dtype=np.int64)
    if q < 50:
        scaled = (base * 5000 + 50 * q) // (100 * q)
    else:
        scaled = (base * (200 - 2 * q) + 50) // 100
    return np.clip(scaled, 1, 255)


def quantize(coeffs: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    """Divide by the matrix and round half away from zero."""
    c = np.asarray(coeffs, dtype=np.float64)
    scaled = np.abs(c) / matrix
    return (np.sign(c) * np.floor(scaled + 0.5)).astype(np.int32)


def dequantize(values: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    return np.asarray(values, dtype=np.float64) * matrix
