"""Predictive video codec built on the still-image pipeline.

Every GOP starts with an intra frame carried verbatim as an HVI1 image
container. Inter frames run full-search integer motion estimation on
16x16 luma macroblocks against the previous *reconstructed* frame, then
code the prediction residual through the same DCT/quantize/zigzag/RLE/
Huffman stages (no level shift, plain DC). The encoder maintains the
decoder's reconstruction loop, so drift cannot accumulate.

Container layout (big-endian): magic "HVV1" | width u16 | height u16
| fps numerator u16 | fps denominator u16 | frame count u32 | quality u8
| gop u16 | search range u8, then per frame: kind u8 (0 intra, 1 inter)
| payload length u32 | motion vectors (inter only; one signed-octet
(dx, dy) pair per macroblock in raster order) | payload. An inter
payload is the four Huffman tables followed by the entropy bit string.

A motion vector (dx, dy) is the displacement of content from reference
to current frame: prediction(y, x) = reference(y - dy, x - dx), sampled
with border clamping. Chroma reuses luma vectors halved toward zero.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import blocks, color, dct, image, quant, rle, zigzag
from .bitio import BitReader, BitWriter
from .errors import BadMagicError, FormatError, TruncatedError
from .huffman import HuffmanTable

MAGIC = b"HVV1"
MACROBLOCK = 16
DEFAULT_GOP = 16
DEFAULT_SEARCH_RANGE = 7
INTRA, INTER = 0, 1


@dataclass
class FrameSequence:
    width: int
    height: int
    frame_rate: Fraction
    frames: list[np.ndarray]

    def __post_init__(self) -> None:
        self.frame_rate = Fraction(self.frame_rate)
        if self.frame_rate <= 0:
            raise ValueError("frame rate must be positive")


def raw_size(seq: FrameSequence) -> int:
    """Uncompressed byte count: width * height * 3 per frame."""
    return seq.width * seq.height * 3 * len(seq.frames)


def _halved(v: int) -> int:
    return v // 2 if v >= 0 else -((-v) // 2)


def _padded_dims(width: int, height: int) -> tuple[int, int]:
    return ((width + 15) // 16) * 16, ((height + 15) // 16) * 16


def _source_planes(frame: np.ndarray, pw: int, ph: int):
    y, cb, cr = color.rgb_image_to_planes(frame)
    cb = color.subsample_chroma(cb, "420")
    cr = color.subsample_chroma(cr, "420")
    y = _pad_to(y, ph, pw)
    cb = _pad_to(cb, ph // 2, pw // 2)
    cr = _pad_to(cr, ph // 2, pw // 2)
    return y, cb, cr


def _pad_to(plane: np.ndarray, h: int, w: int) -> np.ndarray:
    return np.pad(plane, ((0, h - plane.shape[0]), (0, w - plane.shape[1])), mode="edge")


def _shifted(ref: np.ndarray, dx: int, dy: int) -> np.ndarray:
    h, w = ref.shape
    ys = np.clip(np.arange(h) - dy, 0, h - 1)
    xs = np.clip(np.arange(w) - dx, 0, w - 1)
    return ref[np.ix_(ys, xs)]


def _motion_search(cur: np.ndarray, ref: np.ndarray, search_range: int) -> np.ndarray:
    """Best (dx, dy) per macroblock, ties by (|dx|+|dy|, dy, dx)."""
    h, w = cur.shape
    nby, nbx = h // MACROBLOCK, w // MACROBLOCK
    cur_i = cur.astype(np.int32)
    ref_i = ref.astype(np.int32)
    candidates = sorted(
        ((dx, dy) for dx in range(-search_range, search_range + 1)
         for dy in range(-search_range, search_range + 1)),
        key=lambda v: (abs(v[0]) + abs(v[1]), v[1], v[0]),
    )
    best_cost = None
    best = np.zeros((nby, nbx, 2), dtype=np.int32)
    for dx, dy in candidates:
        diff = np.abs(cur_i - _shifted(ref_i, dx, dy))
        cost = diff.reshape(nby, MACROBLOCK, nbx, MACROBLOCK).sum(axis=(1, 3))
        if best_cost is None:
            best_cost = cost
            best[..., 0] = dx
            best[..., 1] = dy
        else:
            better = cost < best_cost
            best_cost = np.where(better, cost, best_cost)
            best[better, 0] = dx
            best[better, 1] = dy
    return best


def _predict(ref: np.ndarray, mvs: np.ndarray, block: int, halve: bool) -> np.ndarray:
    h, w = ref.shape
    pred = np.empty_like(ref)
    rows = np.arange(block)
    for by in range(mvs.shape[0]):
        for bx in range(mvs.shape[1]):
            dx, dy = int(mvs[by, bx, 0]), int(mvs[by, bx, 1])
            if halve:
                dx, dy = _halved(dx), _halved(dy)
            ys = np.clip(rows + by * block - dy, 0, h - 1)
            xs = np.clip(rows + bx * block - dx, 0, w - 1)
            pred[by * block : (by + 1) * block, bx * block : (bx + 1) * block] = ref[np.ix_(ys, xs)]
    return pred


def _residual_symbols(cur: np.ndarray, pred: np.ndarray, matrix: np.ndarray) -> tuple[rle.SymbolStream, np.ndarray]:
    """Quantized-residual symbols plus the reconstructed plane."""
    residual = cur.astype(np.float64) - pred.astype(np.float64)
    coeffs = dct.fdct(blocks.split_blocks(residual))
    qz = quant.quantize(coeffs, matrix)
    stream = rle.encode_plane(zigzag.zigzag(qz), differential=False)
    recon = _reconstruct(pred, qz, matrix)
    return stream, recon


def _reconstruct(pred: np.ndarray, qz: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    residual = dct.idct(quant.dequantize(qz, matrix))
    h, w = pred.shape
    plane = blocks.join_blocks(residual, h, w) + pred.astype(np.float64)
    return np.clip(np.floor(plane + 0.5), 0, 255).astype(np.uint8)


def _planes_to_frame(y, cb, cr, width: int, height: int) -> np.ndarray:
    cbu = color.upsample_chroma(cb, width, height, "420")
    cru = color.upsample_chroma(cr, width, height, "420")
    return color.planes_to_rgb_image(y[:height, :width], cbu, cru)


def _intra_recon_planes(data: bytes, pw: int, ph: int):
    dp = image.decode_image_planes(data)
    y = _pad_to(dp.y, ph, pw)
    cb = _pad_to(dp.cb, ph // 2, pw // 2)
    cr = _pad_to(dp.cr, ph // 2, pw // 2)
    return y, cb, cr


def _encode_inter_payload(streams, tables) -> bytes:
    luma_dc, luma_ac, chroma_dc, chroma_ac = tables
    out = bytearray()
    image.write_table(out, luma_dc, "dc")
    image.write_table(out, luma_ac, "ac")
    image.write_table(out, chroma_dc, "dc")
    image.write_table(out, chroma_ac, "ac")
    writer = BitWriter()
    y_stream, cb_stream, cr_stream = streams
    image._write_symbols(writer, y_stream, luma_dc, luma_ac)
    image._write_symbols(writer, cb_stream, chroma_dc, chroma_ac)
    image._write_symbols(writer, cr_stream, chroma_dc, chroma_ac)
    out += writer.getvalue()
    return bytes(out)


def _decode_inter_payload(payload: bytes, n_luma: int, n_chroma: int):
    pos = 0
    luma_dc, pos = image.read_table(payload, pos, "dc")
    luma_ac, pos = image.read_table(payload, pos, "ac")
    chroma_dc, pos = image.read_table(payload, pos, "dc")
    chroma_ac, pos = image.read_table(payload, pos, "ac")
    reader = BitReader(payload[pos:])
    y = image._read_symbols(reader, n_luma, luma_dc, luma_ac)
    cb = image._read_symbols(reader, n_chroma, chroma_dc, chroma_ac)
    cr = image._read_symbols(reader, n_chroma, chroma_dc, chroma_ac)
    return y, cb, cr


def _stream_to_qz(stream: rle.SymbolStream) -> np.ndarray:
    rows = np.array(rle.decode_plane(stream, differential=False), dtype=np.int32)
    return zigzag.inverse_zigzag(rows)


def encode_video_with_recon(
    seq: FrameSequence,
    quality: int = image.DEFAULT_QUALITY,
    gop: int = DEFAULT_GOP,
    search_range: int = DEFAULT_SEARCH_RANGE,
) -> tuple[bytes, list[np.ndarray]]:
    """Encode and also return the encoder's own reconstructed RGB frames."""
    if not seq.frames:
        raise ValueError("empty frame sequence")
    if gop < 1:
        raise ValueError("gop must be >= 1")
    if not 0 <= search_range <= 127:
        raise ValueError("search range must fit a signed octet")
    q = quant.check_quality(quality)
    w, h = seq.width, seq.height
    for f in seq.frames:
        if f.shape[:2] != (h, w):
            raise ValueError("frame dimensions differ from sequence header")
    pw, ph = _padded_dims(w, h)
    luma_m = quant.scale_quant_matrix(quant.LUMA_BASE, q)
    chroma_m = quant.scale_quant_matrix(quant.CHROMA_BASE, q)

    fr = Fraction(seq.frame_rate)
    if fr.numerator > 0xFFFF or fr.denominator > 0xFFFF:
        raise ValueError("frame rate does not fit u16/u16")
    out = bytearray()
    out += MAGIC
    out += struct.pack(
        ">HHHHIBHB", w, h, fr.numerator, fr.denominator, len(seq.frames), q, gop, search_range
    )

    recon_frames: list[np.ndarray] = []
    ref = None
    for i, frame in enumerate(seq.frames):
        frame = np.asarray(frame, dtype=np.uint8)
        if i % gop == 0:
            payload = image.encode_image(frame, q, "420")
            ref = _intra_recon_planes(payload, pw, ph)
            out += struct.pack(">BI", INTRA, len(payload))
            out += payload
        else:
            cur_y, cur_cb, cur_cr = _source_planes(frame, pw, ph)
            mvs = _motion_search(cur_y, ref[0], search_range)
            pred_y = _predict(ref[0], mvs, MACROBLOCK, halve=False)
            pred_cb = _predict(ref[1], mvs, MACROBLOCK // 2, halve=True)
            pred_cr = _predict(ref[2], mvs, MACROBLOCK // 2, halve=True)
            y_stream, rec_y = _residual_symbols(cur_y, pred_y, luma_m)
            cb_stream, rec_cb = _residual_symbols(cur_cb, pred_cb, chroma_m)
            cr_stream, rec_cr = _residual_symbols(cur_cr, pred_cr, chroma_m)
            tables = image.build_tables(y_stream, [cb_stream, cr_stream])
            payload = _encode_inter_payload((y_stream, cb_stream, cr_stream), tables)
            out += struct.pack(">BI", INTER, len(payload))
            out += mvs.astype(np.int8).tobytes()
            out += payload
            ref = (rec_y, rec_cb, rec_cr)
        recon_frames.append(_planes_to_frame(*ref, w, h))
    return bytes(out), recon_frames


def encode_video(
    seq: FrameSequence,
    quality: int = image.DEFAULT_QUALITY,
    gop: int = DEFAULT_GOP,
    search_range: int = DEFAULT_SEARCH_RANGE,
) -> bytes:
    return encode_video_with_recon(seq, quality, gop, search_range)[0]


def decode_video(data: bytes) -> FrameSequence:
    if data[:4] != MAGIC:
        raise BadMagicError(f"not an HVV1 container (magic {data[:4]!r})")
    try:
        w, h, fr_num, fr_den, n_frames, q, gop, search_range = struct.unpack_from(">HHHHIBHB", data, 4)
    except struct.error:
        raise TruncatedError("header shorter than fixed fields") from None
    if w < 1 or h < 1 or fr_den < 1 or fr_num < 1:
        raise FormatError("bad header field")
    if gop < 1:
        raise FormatError("gop must be >= 1")
    pw, ph = _padded_dims(w, h)
    nby, nbx = ph // MACROBLOCK, pw // MACROBLOCK
    n_mb = nby * nbx
    n_luma = (ph // 8) * (pw // 8)
    n_chroma = (ph // 16) * (pw // 16)  # chroma planes are half-size

    luma_m = quant.scale_quant_matrix(quant.LUMA_BASE, q)
    chroma_m = quant.scale_quant_matrix(quant.CHROMA_BASE, q)

    pos = 18
    frames: list[np.ndarray] = []
    ref = None
    for i in range(n_frames):
        try:
            kind, payload_len = struct.unpack_from(">BI", data, pos)
        except struct.error:
            raise TruncatedError(f"frame record {i} missing") from None
        pos += 5
        if kind == INTRA:
            payload = data[pos : pos + payload_len]
            if len(payload) < payload_len:
                raise TruncatedError(f"intra frame {i} payload truncated")
            pos += payload_len
            if i % gop != 0:
                raise FormatError(f"frame {i} is intra outside a GOP boundary")
            ref = _intra_recon_planes(payload, pw, ph)
        elif kind == INTER:
            if ref is None:
                raise FormatError("inter frame before any intra frame")
            if i % gop == 0:
                raise FormatError(f"frame {i} is inter at a GOP boundary")
            mv_bytes = data[pos : pos + 2 * n_mb]
            if len(mv_bytes) < 2 * n_mb:
                raise TruncatedError(f"inter frame {i} motion vectors truncated")
            pos += 2 * n_mb
            mvs = np.frombuffer(mv_bytes, dtype=np.int8).reshape(nby, nbx, 2).astype(np.int32)
            if np.abs(mvs).max(initial=0) > search_range:
                raise FormatError("motion vector exceeds declared search range")
            payload = data[pos : pos + payload_len]
            if len(payload) < payload_len:
                raise TruncatedError(f"inter frame {i} payload truncated")
            pos += payload_len
            y_stream, cb_stream, cr_stream = _decode_inter_payload(payload, n_luma, n_chroma)
            pred_y = _predict(ref[0], mvs, MACROBLOCK, halve=False)
            pred_cb = _predict(ref[1], mvs, MACROBLOCK // 2, halve=True)
            pred_cr = _predict(ref[2], mvs, MACROBLOCK // 2, halve=True)
            ref = (
                _reconstruct(pred_y, _stream_to_qz(y_stream), luma_m),
                _reconstruct(pred_cb, _stream_to_qz(cb_stream), chroma_m),
                _reconstruct(pred_cr, _stream_to_qz(cr_stream), chroma_m),
            )
        else:
            raise FormatError(f"unknown frame kind {kind}")
        frames.append(_planes_to_frame(*ref, w, h))
    return FrameSequence(w, h, Fraction(fr_num, fr_den), frames)
