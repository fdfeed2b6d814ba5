"""Single-level 2-D integer wavelet transform (reversible LeGall 5/3 lifting).

1-D step on an even-length signal ``x``::

    s0[i] = x[2i]           d0[i] = x[2i+1]
    d[i]  = d0[i] - floor((s0[i] + s0[i+1]) / 2)
    s[i]  = s0[i] + floor((d[i-1] + d[i] + 2) / 4)

with whole-sample symmetric extension at both ends, i.e. ``s0[n] = s0[n-1]``
and ``d[-1] = d[0]``.  Rows are transformed first, then columns.  ``lh`` is
low-pass along rows and high-pass along columns, ``hl`` the opposite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, OddDimension
from .imagecore import PLANE_DTYPE, as_plane


@dataclass(frozen=True, eq=False)
class SubBands:
    ll: np.ndarray
    lh: np.ndarray
    hl: np.ndarray
    hh: np.ndarray

    def __post_init__(self):
        bands = [as_plane(b) for b in (self.ll, self.lh, self.hl, self.hh)]
        if len({b.shape for b in bands}) != 1:
            raise DimensionMismatch(f"sub-band shapes differ: {[b.shape for b in bands]}")
        for name, band in zip(("ll", "lh", "hl", "hh"), bands):
            band.flags.writeable = False
            object.__setattr__(self, name, band)

    @property
    def shape(self) -> tuple[int, int]:
        return self.ll.shape

    def high_bands(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.lh, self.hl, self.hh

    def replace_high(self, lh, hl, hh) -> "SubBands":
        return SubBands(self.ll, lh, hl, hh)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubBands):
            return NotImplemented
        return all(
            np.array_equal(a, b)
            for a, b in zip((self.ll, self.lh, self.hl, self.hh),
                            (other.ll, other.lh, other.hl, other.hh))
        )


def lift(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Forward 1-D lifting along the last axis; returns (low, high)."""
    s0 = x[..., 0::2]
    d0 = x[..., 1::2]
    s_next = np.concatenate([s0[..., 1:], s0[..., -1:]], axis=-1)
    d = d0 - ((s0 + s_next) >> 1)
    d_prev = np.concatenate([d[..., :1], d[..., :-1]], axis=-1)
    s = s0 + ((d_prev + d + 2) >> 2)
    return s, d


def unlift(s: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Inverse of :func:`lift` along the last axis."""
    d_prev = np.concatenate([d[..., :1], d[..., :-1]], axis=-1)
    s0 = s - ((d_prev + d + 2) >> 2)
    s_next = np.concatenate([s0[..., 1:], s0[..., -1:]], axis=-1)
    d0 = d + ((s0 + s_next) >> 1)
    out = np.empty(s.shape[:-1] + (2 * s.shape[-1],), dtype=PLANE_DTYPE)
    out[..., 0::2] = s0
    out[..., 1::2] = d0
    return out


def forward(p) -> SubBands:
    p = as_plane(p)
    h, w = p.shape
    if h % 2 or w % 2 or h < 2 or w < 2:
        raise OddDimension(f"plane must have even dimensions >= 2, got {h}x{w}")
    low, high = lift(p)
    ll, lh = (b.T for b in lift(low.T))
    hl, hh = (b.T for b in lift(high.T))
    return SubBands(ll, lh, hl, hh)


def inverse(sb: SubBands) -> np.ndarray:
    if not isinstance(sb, SubBands):
        sb = SubBands(*sb)
    low = unlift(sb.ll.T, sb.lh.T).T
    high = unlift(sb.hl.T, sb.hh.T).T
    return unlift(low, high)
