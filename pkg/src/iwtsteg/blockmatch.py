"""2x2 block matching between a secret LL sub-band and a cover LL sub-band.

The match key stores, for every secret block (row-major), the index of the
cover block with the smallest root-mean-square error.  The comparison uses
the integer sum of squared differences, which has the same argmin.  Ties go to
the smallest cover index.  Cover blocks may be reused.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import iwt
from .errors import EmptyCover, KeyCoverMismatch, OddDimension, ValidationError
from .imagecore import PLANE_DTYPE, as_plane, clamp_to_pixel

BLOCK = 2


@dataclass(frozen=True, eq=False)
class BlockGrid:
    source: np.ndarray
    blocks_x: int
    blocks_y: int

    @property
    def count(self) -> int:
        return self.blocks_x * self.blocks_y

    def blocks(self) -> np.ndarray:
        """Return an ``(count, 4)`` array, one flattened 2x2 block per row."""
        tiles = self.source.reshape(self.blocks_y, BLOCK, self.blocks_x, BLOCK)
        return tiles.transpose(0, 2, 1, 3).reshape(self.count, BLOCK * BLOCK)

    def block(self, k: int) -> np.ndarray:
        row, col = divmod(k, self.blocks_x)
        return self.source[BLOCK * row:BLOCK * row + BLOCK, BLOCK * col:BLOCK * col + BLOCK]


@dataclass(frozen=True)
class MatchKey:
    entries: tuple[int, ...]
    nc: int
    secret_blocks_x: int
    secret_blocks_y: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if self.nc < 1:
            raise ValidationError("cover block count must be >= 1")
        if len(self.entries) != self.secret_blocks_x * self.secret_blocks_y:
            raise ValidationError(
                f"{len(self.entries)} entries for a "
                f"{self.secret_blocks_x}x{self.secret_blocks_y} secret grid"
            )
        if self.entries and not 0 <= min(self.entries) <= max(self.entries) < self.nc:
            raise ValidationError(f"key entry outside [0, {self.nc})")

    @property
    def ns(self) -> int:
        return len(self.entries)


def partition(p) -> BlockGrid:
    p = as_plane(p)
    h, w = p.shape
    if h % BLOCK or w % BLOCK:
        raise OddDimension(f"cannot tile a {h}x{w} plane into 2x2 blocks")
    p.flags.writeable = False
    return BlockGrid(p, w // BLOCK, h // BLOCK)


def build_key(cover_ll, secret_ll) -> MatchKey:
    cover = partition(cover_ll)
    secret = partition(secret_ll)
    if cover.count == 0:
        raise EmptyCover("cover LL has no 2x2 blocks")
    cb = cover.blocks()
    sb = secret.blocks()
    # ||s - c||^2 = ||s||^2 - 2 s.c + ||c||^2, exact in int64 for 8-bit-scale data;
    # ||s||^2 is constant per row and does not affect the argmin.
    dist = (cb * cb).sum(axis=1)[None, :] - 2 * (sb @ cb.T)
    entries = np.argmin(dist, axis=1)  # first minimum = smallest index
    return MatchKey(tuple(entries.tolist()), cover.count, secret.blocks_x, secret.blocks_y)


def reconstruct_ll(cover_ll, key: MatchKey) -> np.ndarray:
    """Assemble the approximate secret LL by copying the keyed cover blocks."""
    cover = partition(cover_ll)
    if cover.count != key.nc:
        raise KeyCoverMismatch(f"key expects {key.nc} cover blocks, cover has {cover.count}")
    picked = cover.blocks()[np.asarray(key.entries, dtype=np.intp)]
    tiles = picked.reshape(key.secret_blocks_y, key.secret_blocks_x, BLOCK, BLOCK)
    out = tiles.transpose(0, 2, 1, 3).reshape(BLOCK * key.secret_blocks_y, BLOCK * key.secret_blocks_x)
    return out.astype(PLANE_DTYPE)


def rebuild_secret(approx_ll) -> np.ndarray:
    """Inverse IWT with zeroed high bands, clamped to pixel range."""
    ll = as_plane(approx_ll)
    zeros = np.zeros_like(ll)
    return clamp_to_pixel(iwt.inverse(iwt.SubBands(ll, zeros, zeros, zeros)))
