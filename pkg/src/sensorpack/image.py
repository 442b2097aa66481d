"""Still-image codec and its self-describing HVI1 container.

Encode pipeline: RGB -> YCbCr -> chroma subsampling -> 8x8 tiling with
level shift -> DCT -> quality-scaled quantization -> zigzag -> run-length
symbols with differential DC -> per-image canonical Huffman tables.

Container layout (all integers big-endian):
  magic "HVI1" | width u16 | height u16 | quality u8 | mode u8
  | 4 Huffman tables (luma DC, luma AC, chroma DC, chroma AC)
  | luma quant matrix (64 octets, zigzag order) | chroma quant matrix
  | payload: MSB-first bit string, final byte 1-padded
Table serialization: count u16, then (symbol, code length) pairs; DC
symbols are int16, AC symbols are (run u8, value int16) with run 16
standing for ZRL and 17 for EOB. Payload symbol order is all Y blocks,
then Cb, then Cr; each block is one DC code followed by AC codes.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from . import blocks, color, dct, quant, rle, zigzag
from .bitio import BitReader, BitWriter
from .errors import BadMagicError, BitstreamError, FormatError, TruncatedError
from .huffman import HuffmanTable

MAGIC = b"HVI1"
DEFAULT_QUALITY = 75
DEFAULT_SUBSAMPLING = "420"
MAX_DIMENSION = 65535

_MODE_CODES = {"444": 0, "420": 1}
_MODE_NAMES = {v: k for k, v in _MODE_CODES.items()}


@dataclass
class DecodedPlanes:
    """Dequantized pixel planes plus the settings read from the header."""

    width: int
    height: int
    quality: int
    subsampling: str
    y: np.ndarray
    cb: np.ndarray
    cr: np.ndarray


def _chroma_dims(width: int, height: int, mode: str) -> tuple[int, int]:
    if mode == "444":
        return width, height
    return (width + 1) // 2, (height + 1) // 2


def _block_count(width: int, height: int) -> int:
    return ((width + 7) // 8) * ((height + 7) // 8)


def _plane_symbols(plane: np.ndarray, matrix: np.ndarray, differential: bool = True) -> rle.SymbolStream:
    coeff_blocks, ph, pw = blocks.tile_blocks(plane)
    qz = zigzag.zigzag(quant.quantize(dct.fdct(coeff_blocks), matrix))
    return rle.encode_plane(qz, differential=differential)


def _decode_plane(
    stream: rle.SymbolStream,
    matrix: np.ndarray,
    width: int,
    height: int,
    differential: bool = True,
) -> np.ndarray:
    rows = np.array(rle.decode_plane(stream, differential=differential), dtype=np.int32)
    coeffs = quant.dequantize(zigzag.inverse_zigzag(rows), matrix)
    ph = ((height + 7) // 8) * 8
    pw = ((width + 7) // 8) * 8
    return blocks.untile_blocks(dct.idct(coeffs), ph, pw, height, width)


def build_tables(
    luma: rle.SymbolStream, chroma_streams: list[rle.SymbolStream]
) -> tuple[HuffmanTable, HuffmanTable, HuffmanTable, HuffmanTable]:
    """Per-payload Huffman tables: (luma DC, luma AC, chroma DC, chroma AC)."""

    def freqs(values):
        out: dict = {}
        for v in values:
            out[v] = out.get(v, 0) + 1
        return out

    def ac_iter(streams):
        for s in streams:
            for block_syms in s.ac_symbols:
                yield from block_syms

    luma_dc = HuffmanTable.from_frequencies(freqs(luma.dc_symbols))
    luma_ac = HuffmanTable.from_frequencies(freqs(ac_iter([luma])))
    chroma_dc_syms = [v for s in chroma_streams for v in s.dc_symbols]
    chroma_dc = HuffmanTable.from_frequencies(freqs(chroma_dc_syms))
    chroma_ac = HuffmanTable.from_frequencies(freqs(ac_iter(chroma_streams)))
    return luma_dc, luma_ac, chroma_dc, chroma_ac


def write_table(out: bytearray, table: HuffmanTable, kind: str) -> None:
    entries = sorted(table.lengths.items(), key=lambda kv: (kv[1], kv[0]))
    out += struct.pack(">H", len(entries))
    for sym, length in entries:
        if kind == "dc":
            out += struct.pack(">hB", sym, length)
        else:
            run, value = sym
            out += struct.pack(">BhB", run, value, length)


def read_table(data: bytes, pos: int, kind: str) -> tuple[HuffmanTable, int]:
    try:
        (count,) = struct.unpack_from(">H", data, pos)
        pos += 2
        lengths: dict = {}
        for _ in range(count):
            if kind == "dc":
                sym, length = struct.unpack_from(">hB", data, pos)
                pos += 3
            else:
                run, value, length = struct.unpack_from(">BhB", data, pos)
                sym = (run, value)
                pos += 4
            lengths[sym] = length
    except struct.error:
        raise TruncatedError("table runs past end of container") from None
    if not lengths:
        raise FormatError("empty Huffman table")
    try:
        return HuffmanTable(lengths), pos
    except ValueError as exc:
        raise FormatError(f"bad Huffman table: {exc}") from None


def _write_symbols(writer: BitWriter, stream: rle.SymbolStream, dc_table: HuffmanTable, ac_table: HuffmanTable) -> None:
    for dc_sym, ac_syms in zip(stream.dc_symbols, stream.ac_symbols):
        dc_table.write_symbol(writer, dc_sym)
        for sym in ac_syms:
            ac_table.write_symbol(writer, sym)


def _read_symbols(reader: BitReader, n_blocks: int, dc_table: HuffmanTable, ac_table: HuffmanTable) -> rle.SymbolStream:
    stream = rle.SymbolStream()
    for _ in range(n_blocks):
        stream.dc_symbols.append(dc_table.read_symbol(reader))
        block_syms: list[rle.AcSymbol] = []
        k = 0
        while k < 63:
            sym = ac_table.read_symbol(reader)
            block_syms.append(sym)
            if sym == rle.EOB:
                break
            if sym == rle.ZRL:
                k += 16
            else:
                k += sym[0] + 1
        stream.ac_symbols.append(block_syms)
    return stream


def encode_image(img: np.ndarray, quality: int = DEFAULT_QUALITY, subsampling: str = DEFAULT_SUBSAMPLING) -> bytes:
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError("expected an (h, w, 3) RGB raster")
    height, width = img.shape[:2]
    if width < 1 or height < 1:
        raise ValueError("image has a zero dimension")
    if width > MAX_DIMENSION or height > MAX_DIMENSION:
        raise ValueError(f"dimensions exceed {MAX_DIMENSION}")
    if subsampling not in _MODE_CODES:
        raise ValueError(f"unknown subsampling mode {subsampling!r}")
    q = quant.check_quality(quality)

    y, cb, cr = color.rgb_image_to_planes(img.astype(np.uint8))
    cb = color.subsample_chroma(cb, subsampling)
    cr = color.subsample_chroma(cr, subsampling)

    luma_m = quant.scale_quant_matrix(quant.LUMA_BASE, q)
    chroma_m = quant.scale_quant_matrix(quant.CHROMA_BASE, q)

    y_stream = _plane_symbols(y, luma_m)
    cb_stream = _plane_symbols(cb, chroma_m)
    cr_stream = _plane_symbols(cr, chroma_m)
    luma_dc, luma_ac, chroma_dc, chroma_ac = build_tables(y_stream, [cb_stream, cr_stream])

    out = bytearray()
    out += MAGIC
    out += struct.pack(">HHBB", width, height, q, _MODE_CODES[subsampling])
    write_table(out, luma_dc, "dc")
    write_table(out, luma_ac, "ac")
    write_table(out, chroma_dc, "dc")
    write_table(out, chroma_ac, "ac")
    out += bytes(int(v) for v in zigzag.zigzag(luma_m))
    out += bytes(int(v) for v in zigzag.zigzag(chroma_m))

    writer = BitWriter()
    _write_symbols(writer, y_stream, luma_dc, luma_ac)
    _write_symbols(writer, cb_stream, chroma_dc, chroma_ac)
    _write_symbols(writer, cr_stream, chroma_dc, chroma_ac)
    out += writer.getvalue()
    return bytes(out)


def decode_image_planes(data: bytes) -> DecodedPlanes:
    if data[:4] != MAGIC:
        raise BadMagicError(f"not an HVI1 container (magic {data[:4]!r})")
    try:
        width, height, q, mode_code = struct.unpack_from(">HHBB", data, 4)
    except struct.error:
        raise TruncatedError("header shorter than fixed fields") from None
    if width < 1 or height < 1:
        raise FormatError("header declares a zero dimension")
    if mode_code not in _MODE_NAMES:
        raise FormatError(f"unknown subsampling code {mode_code}")
    mode = _MODE_NAMES[mode_code]
    try:
        quant.check_quality(q)
    except ValueError as exc:
        raise FormatError(str(exc)) from None

    pos = 12
    luma_dc, pos = read_table(data, pos, "dc")
    luma_ac, pos = read_table(data, pos, "ac")
    chroma_dc, pos = read_table(data, pos, "dc")
    chroma_ac, pos = read_table(data, pos, "ac")
    if len(data) < pos + 128:
        raise TruncatedError("quantization matrices missing")
    luma_m = zigzag.inverse_zigzag(np.frombuffer(data[pos : pos + 64], dtype=np.uint8).astype(np.int64))
    chroma_m = zigzag.inverse_zigzag(np.frombuffer(data[pos + 64 : pos + 128], dtype=np.uint8).astype(np.int64))
    if (luma_m < 1).any() or (chroma_m < 1).any():
        raise FormatError("quantization matrix entry below 1")
    pos += 128

    reader = BitReader(data[pos:])
    cw, ch = _chroma_dims(width, height, mode)
    n_luma = _block_count(width, height)
    n_chroma = _block_count(cw, ch)
    try:
        y_stream = _read_symbols(reader, n_luma, luma_dc, luma_ac)
        cb_stream = _read_symbols(reader, n_chroma, chroma_dc, chroma_ac)
        cr_stream = _read_symbols(reader, n_chroma, chroma_dc, chroma_ac)
    except BitstreamError:
        raise
    y = _decode_plane(y_stream, luma_m, width, height)
    cb = _decode_plane(cb_stream, chroma_m, cw, ch)
    cr = _decode_plane(cr_stream, chroma_m, cw, ch)
    return DecodedPlanes(width, height, q, mode, y, cb, cr)


def decode_image(data: bytes) -> np.ndarray:
    dp = decode_image_planes(data)
    cb = color.upsample_chroma(dp.cb, dp.width, dp.height, dp.subsampling)
    cr = color.upsample_chroma(dp.cr, dp.width, dp.height, dp.subsampling)
    return color.planes_to_rgb_image(dp.y, cb, cr)
