"""Threshold-triggered CSV aggregation of numerical sensor readings.

Rows accumulate in a :class:`RowBuffer` whose byte size always equals
the length of the serialized CSV (header included). A flush hands the
whole CSV to a sink only once the size reaches the policy threshold;
the buffer is reset only after the sink succeeds, so a failing sink
never loses rows. Windowed sum/average reduction is provided for
downsampling before transmission.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from .errors import SinkError
from .linksim import LinkProfile, TransferReport, simulate_transfer

CSV_HEADER = "timestamp,temperature,humidity,co2,weight,vibration\n"
DEFAULT_THRESHOLD = 4096

# Decimal places per numeric column (co2 is an integer count).
_DECIMALS = {"temperature": 1, "humidity": 1, "weight": 2, "vibration": 2}


def _round_half_away(x: float, decimals: int) -> float:
    scale = 10**decimals
    return math.copysign(math.floor(abs(x) * scale + 0.5), x) / scale


@dataclass
class SensorRow:
    """One reading; the timestamp is caller-supplied ISO-8601 UTC text."""

    timestamp: str
    temperature: float
    humidity: float
    co2: int
    weight: float
    vibration: float

    def validate(self) -> None:
        if not self.timestamp or any(c in self.timestamp for c in ",\n\r"):
            raise ValueError(f"bad timestamp {self.timestamp!r}")
        if not 0.0 <= self.humidity <= 100.0:
            raise ValueError(f"humidity {self.humidity} outside [0, 100]")
        if self.co2 < 0:
            raise ValueError("co2 must be >= 0")
        if self.weight < 0:
            raise ValueError("weight must be >= 0")

    def to_line(self) -> str:
        return (
            f"{self.timestamp},{self.temperature:.1f},{self.humidity:.1f},"
            f"{self.co2:d},{self.weight:.2f},{self.vibration:.2f}\n"
        )

    @classmethod
    def from_line(cls, line: str) -> "SensorRow":
        parts = line.rstrip("\n").split(",")
        if len(parts) != 6:
            raise ValueError(f"expected 6 CSV fields, got {len(parts)}")
        ts, temp, hum, co2, weight, vib = parts
        return cls(ts, float(temp), float(hum), int(co2), float(weight), float(vib))


def parse_csv(data: bytes) -> list[SensorRow]:
    text = data.decode("utf-8")
    lines = text.split("\n")
    if not lines or lines[0] + "\n" != CSV_HEADER:
        raise ValueError("missing or wrong CSV header")
    return [SensorRow.from_line(l) for l in lines[1:] if l]


@dataclass
class FlushPolicy:
    threshold: int = DEFAULT_THRESHOLD

    def __post_init__(self) -> None:
        if self.threshold < 1:
            raise ValueError("threshold must be >= 1")


@dataclass
class FlushReceipt:
    rows_flushed: int
    octets_sent: int
    destination: str
    report: object = None


class RowBuffer:
    """In-memory CSV store with exact byte accounting."""

    def __init__(self, name: str = "sensors") -> None:
        self.name = name
        self.rows: list[SensorRow] = []
        self._lines: list[str] = []
        self.byte_size = len(CSV_HEADER)

    def append(self, row: SensorRow) -> None:
        """Validate and add one row; rejected rows leave no trace."""
        row.validate()
        line = row.to_line()
        self.rows.append(row)
        self._lines.append(line)
        self.byte_size += len(line.encode("utf-8"))

    def serialize(self) -> bytes:
        return (CSV_HEADER + "".join(self._lines)).encode("utf-8")

    def reset(self) -> None:
        self.rows = []
        self._lines = []
        self.byte_size = len(CSV_HEADER)


Sink = Callable[[str, bytes], object]


def check_and_flush(buffer: RowBuffer, policy: FlushPolicy, sink: Sink) -> FlushReceipt | None:
    """Flush iff byte_size >= threshold; the buffer survives sink failures."""
    if buffer.byte_size < policy.threshold:
        return None
    data = buffer.serialize()
    report = sink(buffer.name, data)  # buffer untouched if this raises
    receipt = FlushReceipt(
        rows_flushed=len(buffer.rows),
        octets_sent=len(data),
        destination=getattr(sink, "destination", repr(sink)),
        report=report,
    )
    buffer.reset()
    return receipt


class DirectorySink:
    """Writes each flushed CSV as a numbered file under a directory."""

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self.path.mkdir(parents=True, exist_ok=True)
        self.destination = str(self.path)
        self._count = 0

    def __call__(self, name: str, data: bytes) -> Path:
        target = self.path / f"{name}_{self._count:04d}.csv"
        target.write_bytes(data)
        self._count += 1
        return target


class LinkSink:
    """Delivers flushed CSVs over a simulated channel, one seed per flush."""

    def __init__(self, profile: LinkProfile, seed: int = 0) -> None:
        self.profile = profile
        self.seed = seed
        self.destination = profile.name
        self.reports: list[TransferReport] = []

    def __call__(self, name: str, data: bytes) -> TransferReport:
        report = simulate_transfer(len(data), self.profile, self.seed + len(self.reports))
        if report.outcome != "delivered":
            raise SinkError(f"transfer over {self.profile.name} failed")
        self.reports.append(report)
        return report


def aggregate_window(rows: Iterable[SensorRow], stat: str, window: int) -> list[SensorRow]:
    """Reduce consecutive non-overlapping windows column-wise.

    The output timestamp is the last timestamp in each window; a partial
    final window is reduced over its actual length. Values are rounded
    to each column's formatting precision (half away from zero).
    """
    if stat not in ("sum", "average"):
        raise ValueError(f"unknown stat {stat!r}")
    if window < 1:
        raise ValueError("window must be >= 1")
    rows = list(rows)
    out: list[SensorRow] = []
    for start in range(0, len(rows), window):
        group = rows[start : start + window]
        n = len(group)
        acc = {col: sum(getattr(r, col) for r in group) for col in
               ("temperature", "humidity", "co2", "weight", "vibration")}
        if stat == "average":
            acc = {col: v / n for col, v in acc.items()}
        out.append(
            SensorRow(
                timestamp=group[-1].timestamp,
                temperature=_round_half_away(acc["temperature"], _DECIMALS["temperature"]),
                humidity=_round_half_away(acc["humidity"], _DECIMALS["humidity"]),
                co2=int(_round_half_away(acc["co2"], 0)),
                weight=_round_half_away(acc["weight"], _DECIMALS["weight"]),
                vibration=_round_half_away(acc["vibration"], _DECIMALS["vibration"]),
            )
        )
    return out
