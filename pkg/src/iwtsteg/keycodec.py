"""Byte container, compression and stream cipher for match keys.

Container layout (all multi-byte fields big-endian)::

    offset  size  field
    0       2     magic b"SK"
    2       1     version (1)
    3       2     nc, cover block count
    5       2     blocks_x of the secret grid
    7       2     blocks_y of the secret grid
    9       1     index_width = max(1, ceil(log2(nc)))
    10      1     comp_mode (0 stored, 1 prefix-coded)
    11      4     body_len in bytes
    15      ...   body

A stored body holds the key indices packed MSB-first at ``index_width`` bits
each, zero-padded to a byte boundary.  A prefix-coded body is that same
byte string run through :mod:`iwtsteg.prefixcode`.

The cipher XORs the data with a SplitMix64 keystream seeded by the 64-bit
FNV-1a hash of the passphrase.  It is obfuscation, not cryptography.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from . import prefixcode
from .blockmatch import MatchKey
from .errors import (
    BadCompression,
    BadHeader,
    BadMagic,
    BadVersion,
    IndexOutOfRange,
    KeyOverflow,
    TrailingData,
    TruncatedBody,
)

MAGIC = b"SK"
VERSION = 1
MODE_STORED = 0
MODE_CODED = 1
HEADER = struct.Struct(">2sBHHHBBI")

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


def index_width(nc: int) -> int:
    return max(1, (nc - 1).bit_length())


def serialize(key: MatchKey) -> bytes:
    if key.nc > 0xFFFF or key.secret_blocks_x > 0xFFFF or key.secret_blocks_y > 0xFFFF:
        raise KeyOverflow("key dimensions exceed the 16-bit header fields")
    width = index_width(key.nc)
    body = _pack_indices(key.entries, width)
    return _header(key, width, MODE_STORED, len(body)) + body


def deserialize(data: bytes) -> MatchKey:
    key, end = _parse(data)
    if end != len(data):
        raise TrailingData(f"{len(data) - end} bytes after the container body")
    return key


def split_containers(data: bytes) -> list[MatchKey]:
    """Parse a concatenation of containers, as written by ``--dump-key``."""
    keys = []
    pos = 0
    while pos < len(data):
        key, used = _parse(data[pos:])
        keys.append(key)
        pos += used
    return keys


def _header(key: MatchKey, width: int, mode: int, body_len: int) -> bytes:
    return HEADER.pack(MAGIC, VERSION, key.nc, key.secret_blocks_x, key.secret_blocks_y,
                       width, mode, body_len)


def _parse(data: bytes) -> tuple[MatchKey, int]:
    if len(data) < HEADER.size:
        raise TruncatedBody("data shorter than the container header")
    magic, version, nc, bx, by, width, mode, body_len = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic!r}")
    if version != VERSION:
        raise BadVersion(f"unsupported container version {version}")
    if nc < 1 or width != index_width(nc):
        raise BadHeader(f"inconsistent header: nc={nc}, index_width={width}")
    end = HEADER.size + body_len
    if len(data) < end:
        raise TruncatedBody(f"body needs {body_len} bytes, {len(data) - HEADER.size} present")
    body = bytes(data[HEADER.size:end])
    if mode == MODE_CODED:
        body = prefixcode.decode(body)
    elif mode != MODE_STORED:
        raise BadCompression(f"unknown comp_mode {mode}")
    ns = bx * by
    needed = (ns * width + 7) // 8
    if len(body) != needed:
        raise TruncatedBody(f"body holds {len(body)} bytes, grid needs {needed}")
    entries = _unpack_indices(body, width, ns)
    if entries and max(entries) >= nc:
        raise IndexOutOfRange(f"key entry {max(entries)} >= nc={nc}")
    return MatchKey(tuple(entries), nc, bx, by), end


def _pack_indices(entries, width: int) -> bytes:
    if not entries:
        return b""
    values = np.asarray(entries, dtype=np.uint64)
    shifts = np.arange(width - 1, -1, -1, dtype=np.uint64)
    bits = ((values[:, None] >> shifts) & np.uint64(1)).astype(np.uint8).ravel()
    return np.packbits(bits).tobytes()


def _unpack_indices(body: bytes, width: int, count: int) -> list[int]:
    if count == 0:
        return []
    bits = np.unpackbits(np.frombuffer(body, dtype=np.uint8))[: count * width]
    weights = np.left_shift(1, np.arange(width - 1, -1, -1, dtype=np.int64))
    return (bits.reshape(count, width).astype(np.int64) @ weights).tolist()


def compress(data: bytes) -> tuple[int, bytes]:
    if not data:
        return MODE_STORED, b""
    coded = prefixcode.encode(data)
    if len(coded) < len(data):
        return MODE_CODED, coded
    return MODE_STORED, bytes(data)


def decompress(mode: int, data: bytes) -> bytes:
    if mode == MODE_STORED:
        return bytes(data)
    if mode == MODE_CODED:
        return prefixcode.decode(data)
    raise BadCompression(f"unknown comp_mode {mode}")


def compress_container(container: bytes) -> bytes:
    """Re-encode a stored container, prefix-coding the body when that is smaller."""
    key, _ = _parse(container)
    body = container[HEADER.size:]
    mode, packed = compress(body)
    return _header(key, index_width(key.nc), mode, len(packed)) + packed


@dataclass(frozen=True)
class CipherSpec:
    passphrase: bytes

    def __post_init__(self):
        if isinstance(self.passphrase, str):
            object.__setattr__(self, "passphrase", self.passphrase.encode("utf-8"))


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & _MASK64
    return h


def splitmix64(state: int):
    """Yield successive SplitMix64 outputs starting from ``state``."""
    while True:
        state = (state + GOLDEN_GAMMA) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


def keystream(passphrase: bytes, length: int) -> bytes:
    words = splitmix64(fnv1a64(passphrase))
    out = bytearray()
    while len(out) < length:
        out += next(words).to_bytes(8, "little")
    return bytes(out[:length])


def encrypt(data: bytes, spec: CipherSpec) -> bytes:
    if not data:
        return b""
    stream = np.frombuffer(keystream(spec.passphrase, len(data)), dtype=np.uint8)
    return (np.frombuffer(bytes(data), dtype=np.uint8) ^ stream).tobytes()


decrypt = encrypt


def encode_key(key: MatchKey, spec: CipherSpec) -> bytes:
    """serialize -> compress -> encrypt: the bytes that get embedded."""
    return encrypt(compress_container(serialize(key)), spec)


def decode_key(data: bytes, spec: CipherSpec) -> MatchKey:
    return deserialize(decrypt(data, spec))
