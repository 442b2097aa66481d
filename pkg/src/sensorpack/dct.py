"""8x8 type-II DCT pair via the orthonormal cosine basis matrix.

Normalization puts the DC coefficient of a constant block c at 8c.
Both transforms broadcast over leading axes, so stacked blocks of shape
(n, 8, 8) go through in one matmul.
"""

import numpy as np

N = 8


def _basis() -> np.ndarray:
    x = np.arange(N)
    u = x.reshape(-1, 1)
    t = np.cos((2 * x + 1) * u * np.pi / (2 * N)) * np.sqrt(2 / N)
    t[0, :] = np.sqrt(1 / N)
    return t


_T = _basis()


def fdct(block: np.ndarray) -> np.ndarray:
    """Forward 2-D DCT of (..., 8, 8) pixel-domain blocks."""
    return _T @ np.asarray(block, dtype=np.float64) @ _T.T


def idct(block: np.ndarray) -> np.ndarray:
    """Inverse of :func:`fdct`."""
    return _T.T @ np.asarray(block, dtype=np.float64) @ _T
