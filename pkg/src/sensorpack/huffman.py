"""Canonical Huffman coding over arbitrary orderable symbols.

Tables are built from observed symbol frequencies, capped at 16-bit code
lengths, and assigned canonically so that (symbol, length) pairs fully
describe a table in a container header.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .bitio import BitReader, BitWriter
from .errors import BitstreamError

MAX_CODE_LENGTH = 16

Symbol = Hashable


def code_lengths(freqs: Mapping, max_length: int = MAX_CODE_LENGTH) -> dict:
    """Huffman code lengths for every symbol with nonzero frequency.

    Frequency ties break toward the smaller symbol; a single-symbol
    alphabet gets length 1; lengths beyond ``max_length`` are folded back
    by the usual count-redistribution step.
    """
    items = sorted((s, f) for s, f in freqs.items() if f > 0)
    if not items:
        raise ValueError("empty symbol alphabet")
    if len(items) == 1:
        return {items[0][0]: 1}

    # Heap entries are (freq, seq, payload); seq makes pops deterministic
    # and resolves frequency ties by ascending symbol value.
    heap = [(f, seq, (s,)) for seq, (s, f) in enumerate(items)]
    heapq.heapify(heap)
    seq = len(items)
    depths: dict = {s: 0 for s, _ in items}
    while len(heap) > 1:
        f1, _, g1 = heapq.heappop(heap)
        f2, _, g2 = heapq.heappop(heap)
        merged = g1 + g2
        for s in merged:
            depths[s] += 1
        heapq.heappush(heap, (f1 + f2, seq, merged))
        seq += 1

    if max(depths.values()) > max_length:
        depths = _limit_lengths(depths, dict(items), max_length)
    return depths


def _limit_lengths(depths: dict, freqs: dict, cap: int) -> dict:
    maxlen = max(depths.values())
    counts = [0] * (maxlen + 1)
    for d in depths.values():
        counts[d] += 1
    # Move pairs of over-long leaves up under a shallower sibling.
    for i in range(maxlen, cap, -1):
        while counts[i] > 0:
            j = i - 2
            while counts[j] == 0:
                j -= 1
            counts[i] -= 2
            counts[i - 1] += 1
            counts[j + 1] += 2
            counts[j] -= 1
    lengths: list[int] = []
    for length, n in enumerate(counts):
        lengths.extend([length] * n)
    lengths.sort()
    by_rank = sorted(depths, key=lambda s: (-freqs[s], s))
    return dict(zip(by_rank, lengths))


def canonical_codes(lengths: Mapping) -> dict:
    """Assign canonical (code, length) pairs: sorted by (length, symbol)."""
    codes: dict = {}
    code = 0
    prev = 0
    for length, sym in sorted((l, s) for s, l in lengths.items()):
        code <<= length - prev
        codes[sym] = (code, length)
        code += 1
        prev = length
    return codes


class HuffmanTable:
    """A prefix-free canonical code over one symbol alphabet."""

    def __init__(self, lengths: Mapping) -> None:
        if not lengths:
            raise ValueError("empty symbol alphabet")
        bad = [s for s, l in lengths.items() if not 1 <= l <= MAX_CODE_LENGTH]
        if bad:
            raise ValueError(f"code length out of range for {bad[:3]}")
        self.lengths = dict(lengths)
        self.codes = canonical_codes(self.lengths)
        if self.kraft_sum() > 1:
            raise ValueError("lengths violate the Kraft inequality")
        self.max_length = max(self.lengths.values())
        self._decode_table: list | None = None

    @classmethod
    def from_frequencies(cls, freqs: Mapping) -> "HuffmanTable":
        return cls(code_lengths(freqs))

    def kraft_sum(self) -> Fraction:
        return sum(Fraction(1, 2**l) for l in self.lengths.values())

    def write_symbol(self, writer: BitWriter, symbol: Symbol) -> None:
        try:
            code, length = self.codes[symbol]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} not in table") from None
        writer.write(code, length)

    def _build_decode_table(self) -> list:
        size = 1 << self.max_length
        table: list = [None] * size
        for sym, (code, length) in self.codes.items():
            start = code << (self.max_length - length)
            end = start + (1 << (self.max_length - length))
            table[start:end] = [(sym, length)] * (end - start)
        return table

    def read_symbol(self, reader: BitReader) -> Symbol:
        if self._decode_table is None:
            self._decode_table = self._build_decode_table()
        entry = self._decode_table[reader.peek(self.max_length)]
        if entry is None:
            raise BitstreamError("no matching prefix code")
        sym, length = entry
        reader.consume(length)
        return sym


def encode_symbols(symbols: Iterable[Symbol], table: HuffmanTable) -> BitWriter:
    writer = BitWriter()
    for sym in symbols:
        table.write_symbol(writer, sym)
    return writer


def decode_symbols(reader: BitReader, table: HuffmanTable, count: int) -> list:
    return [table.read_symbol(reader) for _ in range(count)]


def decode_exact(data: bytes, bit_length: int, table: HuffmanTable) -> list:
    """Decode symbols until exactly ``bit_length`` bits are consumed."""
    reader = BitReader(data, bit_length)
    out = []
    while reader.position < bit_length:
        out.append(table.read_symbol(reader))
    return out
