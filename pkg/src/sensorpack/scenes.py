"""Seeded procedural test footage: smooth textures, dark blobs, motion.

Stands in for real field recordings so benchmarks and tests are fully
reproducible: identical seeds give bit-identical frames. The pixel
noise is baked into the base frame, so drifting scenes translate their
noise along with the structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .video import FrameSequence

MOTION_MODELS = ("static", "drift", "flicker")


@dataclass(frozen=True)
class SyntheticScene:
    width: int = 320
    height: int = 240
    frames: int = 16
    frame_rate: int = 8
    model: str = "static"
    dx: int = 0  # drift per frame, pixels
    dy: int = 0
    amplitude: float = 0.0  # flicker brightness swing
    noise: int = 6  # per-channel pixel noise amplitude
    seed: int = 0

    def __post_init__(self) -> None:
        if self.width < 16 or self.height < 16:
            raise ValueError("scene dimensions must be >= 16")
        if self.frames < 1:
            raise ValueError("need at least one frame")
        if self.model not in MOTION_MODELS:
            raise ValueError(f"unknown motion model {self.model!r}")


def _bilinear(coarse: np.ndarray, h: int, w: int) -> np.ndarray:
    ch, cw = coarse.shape
    ys = np.linspace(0.0, ch - 1.0, h)
    xs = np.linspace(0.0, cw - 1.0, w)
    y0 = np.floor(ys).astype(int)
    x0 = np.floor(xs).astype(int)
    y1 = np.minimum(y0 + 1, ch - 1)
    x1 = np.minimum(x0 + 1, cw - 1)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]
    top = coarse[np.ix_(y0, x0)] * (1 - fx) + coarse[np.ix_(y0, x1)] * fx
    bot = coarse[np.ix_(y1, x0)] * (1 - fx) + coarse[np.ix_(y1, x1)] * fx
    return top * (1 - fy) + bot * fy


def _base_frame(rng: np.random.Generator, width: int, height: int, noise: int) -> np.ndarray:
    h, w = height, width
    slow = _bilinear(rng.uniform(0.0, 1.0, (h // 24 + 2, w // 24 + 2)), h, w)
    fine = _bilinear(rng.uniform(0.0, 1.0, (h // 6 + 2, w // 6 + 2)), h, w)
    gx = np.linspace(0.0, 1.0, w)[None, :]
    gy = np.linspace(0.0, 1.0, h)[:, None]
    luma = 70.0 + 95.0 * slow + 28.0 * fine + 22.0 * gx + 14.0 * gy

    # Dark elliptical blobs over the texture.
    yy, xx = np.mgrid[0:h, 0:w]
    n_blobs = max(3, (w * h) // 20000)
    for _ in range(n_blobs):
        cy = rng.uniform(0, h)
        cx = rng.uniform(0, w)
        ay = rng.uniform(3.0, max(4.0, h / 30))
        ax = rng.uniform(3.0, max(4.0, w / 30))
        depth = rng.uniform(35.0, 85.0)
        d2 = ((yy - cy) / ay) ** 2 + ((xx - cx) / ax) ** 2
        luma -= depth * np.clip(1.0 - d2, 0.0, 1.0)

    gains = (1.0, 0.96, 0.88)
    offsets = (6.0, 0.0, -8.0)
    channels = []
    for gain, off in zip(gains, offsets):
        chan = luma * gain + off
        if noise > 0:
            chan = chan + rng.integers(-noise, noise + 1, size=(h, w))
        channels.append(np.clip(np.floor(chan + 0.5), 0, 255).astype(np.uint8))
    return np.stack(channels, axis=-1)


def _translate(frame: np.ndarray, dx: int, dy: int) -> np.ndarray:
    h, w = frame.shape[:2]
    ys = np.clip(np.arange(h) - dy, 0, h - 1)
    xs = np.clip(np.arange(w) - dx, 0, w - 1)
    return frame[np.ix_(ys, xs)]


def synthetic_photo(width: int, height: int, seed: int = 0, noise: int = 6) -> np.ndarray:
    """A single photographic-like (h, w, 3) test image."""
    rng = np.random.default_rng(seed)
    return _base_frame(rng, width, height, noise)


def generate_scene(scene: SyntheticScene) -> FrameSequence:
    rng = np.random.default_rng(scene.seed)
    base = _base_frame(rng, scene.width, scene.height, scene.noise)
    frames: list[np.ndarray] = []
    for k in range(scene.frames):
        if scene.model == "static":
            frames.append(base.copy())
        elif scene.model == "drift":
            frames.append(_translate(base, k * scene.dx, k * scene.dy))
        else:
            delta = scene.amplitude * np.sin(2.0 * np.pi * k / 8.0)
            shifted = np.clip(np.floor(base.astype(np.float64) + delta + 0.5), 0, 255)
            frames.append(shifted.astype(np.uint8))
    return FrameSequence(scene.width, scene.height, Fraction(scene.frame_rate), frames)
