"""Anti-diagonal zigzag scan order for 8x8 coefficient grids."""

import numpy as np


def _scan_positions() -> list[tuple[int, int]]:
    pos = []
    for d in range(15):
        cells = [(i, d - i) for i in range(d + 1) if i < 8 and d - i < 8]
        # Odd diagonals walk down-left from (0, d); even ones walk up-right.
        pos.extend(cells if d % 2 == 1 else reversed(cells))
    return pos


SCAN = _scan_positions()
_ROWS = np.array([r for r, _ in SCAN])
_COLS = np.array([c for _, c in SCAN])


def zigzag(grid: np.ndarray) -> np.ndarray:
    """Flatten (..., 8, 8) grids into (..., 64) vectors in scan order."""
    return np.asarray(grid)[..., _ROWS, _COLS]


def inverse_zigzag(vec: np.ndarray) -> np.ndarray:
    """Exact inverse of :func:`zigzag`."""
    vec = np.asarray(vec)
    out = np.empty(vec.shape[:-1] + (8, 8), dtype=vec.dtype)
    out[..., _ROWS, _COLS] = vec
    return out
