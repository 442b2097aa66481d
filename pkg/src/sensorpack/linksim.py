"""Deterministic seeded simulator of constrained transfer links.

A transfer pays one setup latency, then moves the payload in chunks.
Each chunk attempt draws one uniform number from a PCG64 generator
seeded per transfer: a draw below the loss probability costs the chunk
timeout and forces a retry; otherwise the chunk's bytes cross at the
profile bandwidth. A chunk that exhausts its retries fails the whole
transfer with the time spent so far. Identical (size, profile, seed)
always produce identical reports.

Shipped profiles: ``wifi`` and ``gsm``, calibrated as anchors against
observed average sending times of compressed payloads on the two
network types, not as ground-truth channel models.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

GENERATOR_NAME = "pcg64"

REPORT_HEADER = "size,elapsed,chunks,retransmissions,outcome,seed\n"


@dataclass(frozen=True)
class LinkProfile:
    name: str
    bandwidth: float  # bytes/second
    latency: float  # seconds, one setup cost per transfer
    chunk: int  # octets per chunk
    loss: float  # per-chunk loss probability
    timeout: float  # seconds burned by one lost chunk
    retries: int  # max retries per chunk

    def __post_init__(self) -> None:
        if self.bandwidth <= 0:
            raise ValueError("bandwidth must be positive")
        if self.latency < 0:
            raise ValueError("latency must be >= 0")
        if self.chunk < 1:
            raise ValueError("chunk size must be >= 1")
        if not 0 <= self.loss < 1:
            raise ValueError("loss must lie in [0, 1)")
        if self.timeout <= self.chunk / self.bandwidth:
            raise ValueError("timeout must exceed one chunk's transmission time")
        if self.retries < 0:
            raise ValueError("retries must be >= 0")


@dataclass(frozen=True)
class TransferReport:
    size: int
    elapsed: float
    chunks_sent: int
    retransmissions: int
    outcome: str  # "delivered" | "failed"
    seed: int
    generator: str = GENERATOR_NAME

    def csv_row(self) -> str:
        return (
            f"{self.size},{self.elapsed:.6f},{self.chunks_sent},"
            f"{self.retransmissions},{self.outcome},{self.seed}\n"
        )


@dataclass(frozen=True)
class CalibrationObservation:
    size: int
    elapsed: float

    def __post_init__(self) -> None:
        if self.size <= 0 or self.elapsed <= 0:
            raise ValueError("observations must be positive")


WIFI = LinkProfile(
    name="wifi",
    bandwidth=1_185_883.0,
    latency=1.4,
    chunk=16_384,
    loss=0.001,
    timeout=5.0,
    retries=10,
)

GSM = LinkProfile(
    name="gsm",
    bandwidth=1_100.0,
    latency=5.0,
    chunk=1_024,
    loss=0.01,
    timeout=30.0,
    retries=10,
)

PROFILES = {"wifi": WIFI, "gsm": GSM}


def simulate_transfer(size: int, profile: LinkProfile, seed: int) -> TransferReport:
    """Simulate one payload transfer; pure in (size, profile, seed)."""
    if size < 1:
        raise ValueError("payload size must be >= 1")
    rng = np.random.default_rng(seed)
    n_chunks = -(-size // profile.chunk)
    delivered_bytes = 0
    timeouts = 0
    chunks_sent = 0
    retransmissions = 0
    for i in range(n_chunks):
        nbytes = profile.chunk if i < n_chunks - 1 else size - profile.chunk * (n_chunks - 1)
        lost = 0
        while True:
            chunks_sent += 1
            if profile.loss > 0.0 and rng.random() < profile.loss:
                retransmissions += 1
                timeouts += 1
                lost += 1
                if lost > profile.retries:
                    elapsed = profile.latency + delivered_bytes / profile.bandwidth + timeouts * profile.timeout
                    return TransferReport(size, elapsed, chunks_sent, retransmissions, "failed", seed)
                continue
            delivered_bytes += nbytes
            break
    elapsed = profile.latency + delivered_bytes / profile.bandwidth + timeouts * profile.timeout
    return TransferReport(size, elapsed, chunks_sent, retransmissions, "delivered", seed)


def expected_time(size: int, profile: LinkProfile) -> float:
    """Closed-form expectation with unbounded retries."""
    if size < 1:
        raise ValueError("payload size must be >= 1")
    n_chunks = -(-size // profile.chunk)
    per_chunk = profile.chunk / profile.bandwidth + profile.loss / (1 - profile.loss) * profile.timeout
    return profile.latency + n_chunks * per_chunk


def calibrate(observations: Iterable, name: str = "calibrated") -> LinkProfile:
    """Least-squares fit of elapsed = latency + size / bandwidth (loss 0)."""
    obs = [
        o if isinstance(o, CalibrationObservation) else CalibrationObservation(*o)
        for o in observations
    ]
    sizes = {o.size for o in obs}
    if len(sizes) < 2:
        raise ValueError("need at least two observations with distinct sizes")
    x = np.array([o.size for o in obs], dtype=np.float64)
    y = np.array([o.elapsed for o in obs], dtype=np.float64)
    slope, intercept = np.polyfit(x, y, 1)
    if slope <= 0:
        raise ValueError("degenerate fit: non-positive bandwidth")
    bandwidth = 1.0 / slope
    latency = max(0.0, float(intercept))
    chunk = 16_384
    timeout = max(5.0, 2.0 * chunk / bandwidth)
    return LinkProfile(name, bandwidth, latency, chunk, 0.0, timeout, 10)


def mean_absolute_error(profile: LinkProfile, observations: Sequence[CalibrationObservation]) -> float:
    errs = [abs(expected_time(o.size, profile) - o.elapsed) for o in observations]
    return math.fsum(errs) / len(errs)


def save_profile(profile: LinkProfile, path: str | Path) -> None:
    lines = [
        f"name={profile.name}",
        f"bandwidth={profile.bandwidth!r}",
        f"latency={profile.latency!r}",
        f"chunk={profile.chunk}",
        f"loss={profile.loss!r}",
        f"timeout={profile.timeout!r}",
        f"retries={profile.retries}",
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_profile(path: str | Path) -> LinkProfile:
    fields: dict[str, str] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"bad profile line {line!r}")
        key, _, value = line.partition("=")
        fields[key.strip()] = value.strip()
    try:
        return LinkProfile(
            name=fields.get("name", Path(path).stem),
            bandwidth=float(fields["bandwidth"]),
            latency=float(fields["latency"]),
            chunk=int(fields["chunk"]),
            loss=float(fields["loss"]),
            timeout=float(fields["timeout"]),
            retries=int(fields["retries"]),
        )
    except KeyError as exc:
        raise ValueError(f"profile file missing key {exc}") from None


def get_profile(spec: str) -> LinkProfile:
    """Resolve a named built-in profile or a key=value profile file."""
    if spec in PROFILES:
        return PROFILES[spec]
    path = Path(spec)
    if path.exists():
        return load_profile(path)
    raise ValueError(f"unknown profile {spec!r} (not built-in, not a file)")
