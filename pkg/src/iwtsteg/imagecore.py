"""Integer image planes and RGB channel handling.

An image plane is a 2-D ``numpy.int64`` array in row-major order with the
origin at the top-left.  The same type carries 8-bit pixels and signed
wavelet coefficients.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, PixelRangeError, ValidationError

PLANE_DTYPE = np.int64


def as_plane(data) -> np.ndarray:
    """Return ``data`` as a fresh 2-D int64 plane."""
    arr = np.array(data, dtype=PLANE_DTYPE, copy=True)
    if arr.ndim != 2 or arr.size == 0:
        raise ValidationError(f"expected a non-empty 2-D plane, got shape {arr.shape}")
    return arr


def check_pixel_range(p: np.ndarray) -> None:
    if p.size and (p.min() < 0 or p.max() > 255):
        raise PixelRangeError(f"samples outside [0, 255]: min={p.min()}, max={p.max()}")


def clamp_to_pixel(p: np.ndarray) -> np.ndarray:
    return np.clip(np.asarray(p, dtype=PLANE_DTYPE), 0, 255)


class Channel(enum.Enum):
    RED = "r"
    GREEN = "g"
    BLUE = "b"


@dataclass(frozen=True)
class ChannelPair:
    first: Channel
    second: Channel

    def __post_init__(self):
        if self.first == self.second:
            raise ValidationError("channel pair must name two distinct channels")

    @classmethod
    def parse(cls, text: str) -> "ChannelPair":
        """Parse a two-letter selector such as ``"gb"`` or ``"rg"``."""
        text = text.strip().lower()
        if len(text) != 2:
            raise ValidationError(f"channel pair must be two letters, got {text!r}")
        try:
            return cls(Channel(text[0]), Channel(text[1]))
        except ValueError as exc:
            raise ValidationError(f"unknown channel in {text!r}") from exc

    def __str__(self) -> str:
        return self.first.value + self.second.value


GREEN_BLUE = ChannelPair(Channel.GREEN, Channel.BLUE)


@dataclass(frozen=True, eq=False)
class RgbImage:
    r: np.ndarray
    g: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        planes = [as_plane(p) for p in (self.r, self.g, self.b)]
        if not planes[0].shape == planes[1].shape == planes[2].shape:
            raise DimensionMismatch(
                f"channel shapes differ: {[p.shape for p in planes]}"
            )
        for p in planes:
            check_pixel_range(p)
            p.flags.writeable = False
        object.__setattr__(self, "r", planes[0])
        object.__setattr__(self, "g", planes[1])
        object.__setattr__(self, "b", planes[2])

    @property
    def shape(self) -> tuple[int, int]:
        return self.r.shape

    @property
    def height(self) -> int:
        return self.r.shape[0]

    @property
    def width(self) -> int:
        return self.r.shape[1]

    def channel(self, which: Channel) -> np.ndarray:
        return {Channel.RED: self.r, Channel.GREEN: self.g, Channel.BLUE: self.b}[which].copy()

    def with_channels(self, replacements: dict[Channel, np.ndarray]) -> "RgbImage":
        planes = {c: replacements.get(c, self.channel(c)) for c in Channel}
        return RgbImage(planes[Channel.RED], planes[Channel.GREEN], planes[Channel.BLUE])

    @classmethod
    def from_array(cls, arr) -> "RgbImage":
        arr = np.asarray(arr)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValidationError(f"expected an HxWx3 array, got shape {arr.shape}")
        return cls(arr[:, :, 0], arr[:, :, 1], arr[:, :, 2])

    def to_array(self) -> np.ndarray:
        return np.stack([self.r, self.g, self.b], axis=-1).astype(np.uint8)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RgbImage):
            return NotImplemented
        return self.shape == other.shape and all(
            np.array_equal(a, b) for a, b in zip(split_channels(self), split_channels(other))
        )


def split_channels(img: RgbImage) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return img.r.copy(), img.g.copy(), img.b.copy()


def merge_channels(r, g, b) -> RgbImage:
    return RgbImage(r, g, b)
