"""Order-0 canonical prefix (Huffman) coding over byte symbols.

Coded layout::

    128 bytes   code lengths, 4 bits per symbol, symbol 2i in the high nibble
    4 bytes     symbol count, big-endian
    ...         code words, MSB-first, zero-padded to a byte boundary

Code words are assigned canonically in (length, symbol) order.  Lengths are
limited to 15; if plain Huffman exceeds that, frequencies are halved (keeping
every used symbol at weight >= 1) and the tree is rebuilt.
"""

from __future__ import annotations

import heapq
import struct
from collections import Counter

import numpy as np

from .errors import BadCompression

MAX_CODE_LENGTH = 15
TABLE_BYTES = 128
_COUNT = struct.Struct(">I")


def code_lengths(freqs: list[int]) -> list[int]:
    """Huffman code lengths for 256 symbol frequencies, capped at 15 bits."""
    freqs = list(freqs)
    while True:
        lengths = _huffman_lengths(freqs)
        if max(lengths) <= MAX_CODE_LENGTH:
            return lengths
        freqs = [max(1, f >> 1) if f else 0 for f in freqs]


def _huffman_lengths(freqs: list[int]) -> list[int]:
    lengths = [0] * len(freqs)
    heap = [(f, sym, [sym]) for sym, f in enumerate(freqs) if f > 0]
    if not heap:
        return lengths
    if len(heap) == 1:
        lengths[heap[0][1]] = 1
        return lengths
    heapq.heapify(heap)
    order = len(freqs)
    while len(heap) > 1:
        f1, _, syms1 = heapq.heappop(heap)
        f2, _, syms2 = heapq.heappop(heap)
        for s in syms1 + syms2:
            lengths[s] += 1
        heapq.heappush(heap, (f1 + f2, order, syms1 + syms2))
        order += 1
    return lengths


def canonical_codes(lengths: list[int]) -> dict[int, tuple[int, int]]:
    """Map symbol -> (code, length) for the canonical code of ``lengths``."""
    codes = {}
    code = 0
    prev_len = 0
    for length, sym in sorted((l, s) for s, l in enumerate(lengths) if l):
        code <<= length - prev_len
        codes[sym] = (code, length)
        code += 1
        prev_len = length
    return codes


def encode(data: bytes) -> bytes:
    freqs = [0] * 256
    for sym, n in Counter(data).items():
        freqs[sym] = n
    lengths = code_lengths(freqs)
    codes = canonical_codes(lengths)

    table = bytes((lengths[2 * i] << 4) | lengths[2 * i + 1] for i in range(TABLE_BYTES))
    acc = 0
    nbits = 0
    out = bytearray()
    for sym in data:
        code, length = codes[sym]
        acc = (acc << length) | code
        nbits += length
        while nbits >= 8:
            nbits -= 8
            out.append((acc >> nbits) & 0xFF)
        acc &= (1 << nbits) - 1
    if nbits:
        out.append((acc << (8 - nbits)) & 0xFF)
    return table + _COUNT.pack(len(data)) + bytes(out)


def decode(blob: bytes) -> bytes:
    if len(blob) < TABLE_BYTES + _COUNT.size:
        raise BadCompression("coded block shorter than its table")
    lengths = []
    for byte in blob[:TABLE_BYTES]:
        lengths += [byte >> 4, byte & 0x0F]
    if sum(2.0 ** -l for l in lengths if l) > 1.0:
        raise BadCompression("code lengths violate the Kraft inequality")
    (count,) = _COUNT.unpack_from(blob, TABLE_BYTES)
    lookup = {(length, code): sym for sym, (code, length) in canonical_codes(lengths).items()}
    if count and not lookup:
        raise BadCompression("symbols announced but code table is empty")

    bits = np.unpackbits(np.frombuffer(blob, dtype=np.uint8, offset=TABLE_BYTES + _COUNT.size))
    out = bytearray()
    code = 0
    length = 0
    pos = 0
    nbits = len(bits)
    while len(out) < count:
        if pos >= nbits:
            raise BadCompression("coded stream ended early")
        code = (code << 1) | int(bits[pos])
        pos += 1
        length += 1
        sym = lookup.get((length, code))
        if sym is not None:
            out.append(sym)
            code = 0
            length = 0
        elif length > MAX_CODE_LENGTH:
            raise BadCompression("invalid code word")
    return bytes(out)
