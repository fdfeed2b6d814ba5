"""RGB <-> YCbCr conversion.

Forward conversion uses the rational coefficients 77/256, 150/256, ... and the
inverse uses the decimal coefficients 1.371, 0.698, 0.336, 1.732.  Both are
evaluated in exact integer arithmetic and rounded once, half away from zero.

Forward chroma is *not* clamped: Cb and Cr span [-2, 258] and are carried
as-is in signed planes.  Clamping them would break the +/-2 round-trip bound
for saturated colours (pure red would come back as (251, 3, 1)).  Y always lies
in [0, 255].  The inverse clamps R, G, B to [0, 255].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .imagecore import PLANE_DTYPE, RgbImage, as_plane

# (numerator coefficients over 256, offset) for Y, Cb, Cr
_FORWARD = {
    "y": ((77, 150, 29), 0),
    "cb": ((-44, -87, 131), 128),
    "cr": ((131, -110, -21), 128),
}
# inverse coefficients in thousandths
_CR_TO_R = 1371
_CR_TO_G = 698
_CB_TO_G = 336
_CB_TO_B = 1732


def round_div(num: np.ndarray, den: int) -> np.ndarray:
    """Integer ``num / den`` rounded half away from zero (``den > 0``)."""
    num = np.asarray(num, dtype=PLANE_DTYPE)
    return np.sign(num) * ((np.abs(num) + den // 2) // den)


@dataclass(frozen=True, eq=False)
class YcbcrImage:
    y: np.ndarray
    cb: np.ndarray
    cr: np.ndarray

    def __post_init__(self):
        planes = [as_plane(p) for p in (self.y, self.cb, self.cr)]
        if not planes[0].shape == planes[1].shape == planes[2].shape:
            raise DimensionMismatch(f"plane shapes differ: {[p.shape for p in planes]}")
        for name, p in zip(("y", "cb", "cr"), planes):
            p.flags.writeable = False
            object.__setattr__(self, name, p)

    @property
    def shape(self) -> tuple[int, int]:
        return self.y.shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, YcbcrImage):
            return NotImplemented
        return all(
            np.array_equal(a, b)
            for a, b in ((self.y, other.y), (self.cb, other.cb), (self.cr, other.cr))
        )


def rgb_to_ycbcr(img: RgbImage) -> YcbcrImage:
    r, g, b = img.r, img.g, img.b
    out = {}
    for name, ((cr_, cg, cb_), offset) in _FORWARD.items():
        out[name] = round_div(cr_ * r + cg * g + cb_ * b + offset * 256, 256)
    return YcbcrImage(**out)


def ycbcr_to_rgb_unclamped(img: YcbcrImage) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rounded R, G, B planes before clamping; may leave [0, 255]."""
    y = 1000 * img.y
    cb = img.cb - 128
    cr = img.cr - 128
    r = round_div(y + _CR_TO_R * cr, 1000)
    g = round_div(y - _CR_TO_G * cr - _CB_TO_G * cb, 1000)
    b = round_div(y + _CB_TO_B * cb, 1000)
    return r, g, b


def ycbcr_to_rgb(img: YcbcrImage) -> RgbImage:
    return RgbImage(*(np.clip(p, 0, 255) for p in ycbcr_to_rgb_unclamped(img)))


def pixel_to_ycbcr(r: int, g: int, b: int) -> tuple[int, int, int]:
    """Convert a single pixel; convenience wrapper over :func:`rgb_to_ycbcr`."""
    ycc = rgb_to_ycbcr(RgbImage([[r]], [[g]], [[b]]))
    return int(ycc.y[0, 0]), int(ycc.cb[0, 0]), int(ycc.cr[0, 0])


def pixel_to_rgb(y: int, cb: int, cr: int) -> tuple[int, int, int]:
    rgb = ycbcr_to_rgb(YcbcrImage([[y]], [[cb]], [[cr]]))
    return int(rgb.r[0, 0]), int(rgb.g[0, 0]), int(rgb.b[0, 0])
