"""MSB-first bit buffers for entropy-coded payloads.

Writes and reads are most-significant-bit first; a finished buffer pads
the final partial byte with 1-bits.
"""

from .errors import BitstreamError


class BitWriter:
    """Accumulates (code, length) pairs into a byte buffer."""

    def __init__(self) -> None:
        self._buf = bytearray()
        self._acc = 0
        self._pending = 0
        self.bit_length = 0

    def write(self, code: int, length: int) -> None:
        if length < 0:
            raise ValueError("negative code length")
        self._acc = (self._acc << length) | (code & ((1 << length) - 1))
        self._pending += length
        self.bit_length += length
        while self._pending >= 8:
            self._pending -= 8
            self._buf.append((self._acc >> self._pending) & 0xFF)
        self._acc &= (1 << self._pending) - 1

    def getvalue(self) -> bytes:
        """Return the buffer with the last partial byte padded with 1-bits."""
        out = bytearray(self._buf)
        if self._pending:
            pad = 8 - self._pending
            out.append(((self._acc << pad) | ((1 << pad) - 1)) & 0xFF)
        return bytes(out)


class BitReader:
    """Reads MSB-first bits from a byte buffer.

    ``bit_length`` bounds how many bits may be consumed; peeking past the
    end sees virtual 1-padding, consuming past it raises BitstreamError.
    """

    def __init__(self, data: bytes, bit_length: int | None = None) -> None:
        self._data = data
        self._pos = 0
        self.bit_length = 8 * len(data) if bit_length is None else bit_length
        if self.bit_length > 8 * len(data):
            raise ValueError("bit_length exceeds buffer")

    @property
    def position(self) -> int:
        return self._pos

    def peek(self, n: int) -> int:
        start = self._pos >> 3
        end = (self._pos + n + 7) >> 3
        chunk = self._data[start:end]
        missing = (end - start) - len(chunk)
        if missing:
            chunk = chunk + b"\xff" * missing
        total = (end - start) * 8
        val = int.from_bytes(chunk, "big")
        return (val >> (total - (self._pos - (start << 3)) - n)) & ((1 << n) - 1)

    def consume(self, n: int) -> None:
        if self._pos + n > self.bit_length:
            raise BitstreamError("bit buffer exhausted")
        self._pos += n

    def read(self, n: int) -> int:
        val = self.peek(n)
        self.consume(n)
        return val
