"""Payload embedding in bit 3 (the fourth bit plane) of the high-frequency bands.

Coefficients are visited LH raster, then HL raster, then HH raster, one bit
per coefficient.  Bits are written into the magnitude, so the sign survives.
The embedded stream is a 32-bit big-endian body bit count followed by the body.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import BadLengthPrefix, PayloadTooLarge
from .iwt import SubBands

PLANE_BIT = 3
PREFIX_BITS = 32


class EmbedMode(enum.Enum):
    PLAIN = "plain"
    # Low three magnitude bits forced to 100b: tolerates +/-3 perturbation.
    CENTERED = "centered"


@dataclass(frozen=True, eq=False)
class Payload:
    body: np.ndarray  # uint8 array of 0/1

    def __post_init__(self):
        bits = np.asarray(self.body, dtype=np.uint8).ravel()
        if bits.size and bits.max() > 1:
            raise ValueError("payload bits must be 0 or 1")
        object.__setattr__(self, "body", bits)

    @classmethod
    def from_bytes(cls, data: bytes) -> "Payload":
        return cls(np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8)))

    def to_bytes(self) -> bytes:
        return np.packbits(self.body).tobytes()

    def framed(self) -> np.ndarray:
        prefix = np.unpackbits(np.frombuffer(self.body.size.to_bytes(4, "big"), dtype=np.uint8))
        return np.concatenate([prefix, self.body])

    def __len__(self) -> int:
        return int(self.body.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Payload):
            return NotImplemented
        return np.array_equal(self.body, other.body)


def capacity(sb: SubBands) -> int:
    return sum(b.size for b in sb.high_bands())


def flat_high(sb: SubBands) -> np.ndarray:
    return np.concatenate([b.ravel() for b in sb.high_bands()])


def unflatten_high(sb: SubBands, flat: np.ndarray) -> SubBands:
    out = []
    pos = 0
    for band in sb.high_bands():
        out.append(flat[pos:pos + band.size].reshape(band.shape))
        pos += band.size
    return sb.replace_high(*out)


def write_bits(coeffs: np.ndarray, bits: np.ndarray, mode: EmbedMode) -> np.ndarray:
    """Write ``bits`` into bit 3 of ``|coeffs|`` (same length), keeping signs."""
    c = np.asarray(coeffs, dtype=np.int64)
    b = np.asarray(bits, dtype=np.int64)
    mag = np.abs(c)
    sign = np.where(c < 0, -1, 1)
    if mode is EmbedMode.PLAIN:
        mag = (mag & ~(1 << PLANE_BIT)) | (b << PLANE_BIT)
    else:
        mag = (mag & ~0xF) | (b << PLANE_BIT) | 0b100
    return sign * mag


def nearest_with_bits(coeffs: np.ndarray, bits: np.ndarray) -> np.ndarray:
    """Closest values to ``coeffs`` whose magnitude has bit 3 equal to ``bits``.

    Keeps the sign of each coefficient.  Used to repair coefficients after
    the pixel domain had to be clamped; extraction cannot tell the difference.
    """
    c = np.asarray(coeffs, dtype=np.int64)
    b = np.asarray(bits, dtype=np.int64)
    mag = np.abs(c)
    best = None
    best_dist = None
    for shift in (-1, 0, 1):
        q = mag // 16 + shift
        lo = 16 * q + (b << PLANE_BIT)
        cand = np.clip(mag, lo, lo + 7)
        dist = np.where(q < 0, np.iinfo(np.int64).max, np.abs(cand - mag))
        if best is None:
            best, best_dist = cand, dist
        else:
            take = dist < best_dist
            best = np.where(take, cand, best)
            best_dist = np.where(take, dist, best_dist)
    return np.where(c < 0, -1, 1) * best


def read_bits(coeffs: np.ndarray) -> np.ndarray:
    return ((np.abs(np.asarray(coeffs, dtype=np.int64)) >> PLANE_BIT) & 1).astype(np.uint8)


def embed(sb: SubBands, payload: Payload, mode: EmbedMode = EmbedMode.PLAIN) -> SubBands:
    bits = payload.framed()
    cap = capacity(sb)
    if bits.size > cap:
        raise PayloadTooLarge(f"payload needs {bits.size} bits, capacity is {cap}")
    flat = flat_high(sb)
    flat[: bits.size] = write_bits(flat[: bits.size], bits, mode)
    return unflatten_high(sb, flat)


def project(sb: SubBands, payload: Payload) -> SubBands:
    """Move each payload coefficient the least distance needed to carry its bit."""
    bits = payload.framed()
    flat = flat_high(sb)
    flat[: bits.size] = nearest_with_bits(flat[: bits.size], bits)
    return unflatten_high(sb, flat)


def intact(sb: SubBands, payload: Payload) -> bool:
    """True when the framed payload reads back unchanged from ``sb``."""
    framed = payload.framed()
    if framed.size > capacity(sb):
        return False
    return np.array_equal(read_bits(flat_high(sb)[: framed.size]), framed)


def extract(sb: SubBands, mode: EmbedMode = EmbedMode.PLAIN) -> Payload:
    # both modes store the bit in the same place
    bits = read_bits(flat_high(sb))
    if bits.size < PREFIX_BITS:
        raise BadLengthPrefix("sub-bands too small to hold a length prefix")
    length = int.from_bytes(np.packbits(bits[:PREFIX_BITS]).tobytes(), "big")
    if length > bits.size - PREFIX_BITS:
        raise BadLengthPrefix(
            f"length prefix {length} exceeds remaining capacity {bits.size - PREFIX_BITS}"
        )
    return Payload(bits[PREFIX_BITS:PREFIX_BITS + length])
