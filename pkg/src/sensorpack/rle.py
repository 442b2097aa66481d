"""Run-length symbol model for zigzagged coefficient blocks.

Per block: one DC symbol (plain or differential against the previous
block of the same plane) followed by AC symbols. An AC symbol is a
(zero-run, value) pair with run in [0, 15]; ZRL stands for sixteen
consecutive zeros and EOB terminates a block whose tail is all zeros.
A block whose 63rd AC coefficient is nonzero carries no EOB.
"""

from dataclasses import dataclass, field

from .errors import BitstreamError

ZRL = (16, 0)
EOB = (17, 0)

AcSymbol = tuple[int, int]


@dataclass
class SymbolStream:
    """DC and per-block AC symbols for one plane of blocks."""

    dc_symbols: list[int] = field(default_factory=list)
    ac_symbols: list[list[AcSymbol]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.dc_symbols)


def encode_block_ac(ac: list[int]) -> list[AcSymbol]:
    if len(ac) != 63:
        raise ValueError("expected 63 AC coefficients")
    syms: list[AcSymbol] = []
    run = 0
    for v in ac:
        if v == 0:
            run += 1
            continue
        while run > 15:
            syms.append(ZRL)
            run -= 16
        syms.append((run, int(v)))
        run = 0
    if run:
        syms.append(EOB)
    return syms


def decode_block_ac(read_symbol) -> list[int]:
    """Pull AC symbols from ``read_symbol()`` until one block is complete."""
    out = [0] * 63
    k = 0
    while k < 63:
        sym = read_symbol()
        if sym == EOB:
            return out
        if sym == ZRL:
            k += 16
            if k > 63:
                raise BitstreamError("zero run overflows the block")
            continue
        run, value = sym
        if not 0 <= run <= 15 or value == 0:
            raise BitstreamError(f"malformed AC symbol {sym!r}")
        k += run
        if k >= 63:
            raise BitstreamError("coefficient run overflows the block")
        out[k] = value
        k += 1
    return out


def encode_plane(zz_rows, differential: bool = True) -> SymbolStream:
    """Symbol stream for a plane's zigzagged blocks ((n, 64) array or lists)."""
    stream = SymbolStream()
    prev_dc = 0
    rows = zz_rows.tolist() if hasattr(zz_rows, "tolist") else zz_rows
    for row in rows:
        dc = int(row[0])
        if differential:
            stream.dc_symbols.append(dc - prev_dc)
            prev_dc = dc
        else:
            stream.dc_symbols.append(dc)
        stream.ac_symbols.append(encode_block_ac(row[1:]))
    return stream


def decode_plane(stream: SymbolStream, differential: bool = True) -> list[list[int]]:
    """Rebuild 64-coefficient rows from a symbol stream."""
    rows = []
    prev_dc = 0
    for dc_sym, ac_syms in zip(stream.dc_symbols, stream.ac_symbols):
        it = iter(ac_syms)

        def read_symbol():
            try:
                return next(it)
            except StopIteration:
                raise BitstreamError("missing end-of-block") from None

        ac = decode_block_ac(read_symbol)
        dc = dc_sym + prev_dc if differential else dc_sym
        if differential:
            prev_dc = dc
        rows.append([dc] + ac)
    return rows
