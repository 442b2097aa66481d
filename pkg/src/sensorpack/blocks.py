"""Plane padding and 8x8 block tiling."""

import numpy as np

BLOCK = 8
LEVEL_SHIFT = 128


def pad_to_multiple(plane: np.ndarray, multiple: int) -> np.ndarray:
    """Edge-replicate the last row/column up to the next multiple."""
    h, w = plane.shape
    ph = (-h) % multiple
    pw = (-w) % multiple
    if ph == 0 and pw == 0:
        return plane
    return np.pad(plane, ((0, ph), (0, pw)), mode="edge")


def split_blocks(plane: np.ndarray) -> np.ndarray:
    """(h, w) with h, w multiples of 8 -> (n, 8, 8), raster block order."""
    h, w = plane.shape
    return (
        plane.reshape(h // BLOCK, BLOCK, w // BLOCK, BLOCK)
        .transpose(0, 2, 1, 3)
        .reshape(-1, BLOCK, BLOCK)
    )


def join_blocks(blocks: np.ndarray, height: int, width: int) -> np.ndarray:
    return (
        blocks.reshape(height // BLOCK, width // BLOCK, BLOCK, BLOCK)
        .transpose(0, 2, 1, 3)
        .reshape(height, width)
    )


def tile_blocks(plane: np.ndarray) -> tuple[np.ndarray, int, int]:
    """Pad a pixel plane to 8-multiples and emit level-shifted float blocks."""
    padded = pad_to_multiple(np.asarray(plane), BLOCK)
    h, w = padded.shape
    blocks = split_blocks(padded.astype(np.float64) - LEVEL_SHIFT)
    return blocks, h, w


def untile_blocks(blocks: np.ndarray, padded_h: int, padded_w: int, height: int, width: int) -> np.ndarray:
    """Reassemble pixel blocks, undo the level shift, round and crop."""
    plane = join_blocks(blocks, padded_h, padded_w) + LEVEL_SHIFT
    plane = np.clip(np.floor(plane + 0.5), 0, 255).astype(np.uint8)
    return plane[:height, :width]
