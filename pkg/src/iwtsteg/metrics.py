"""MSE and PSNR."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .imagecore import RgbImage

PEAK = 255


@dataclass(frozen=True)
class QualityScore:
    mse: float
    psnr_db: float
    peak: int = PEAK

    def as_dict(self) -> dict:
        psnr = "inf" if math.isinf(self.psnr_db) else round(self.psnr_db, 4)
        return {"mse": self.mse, "psnr_db": psnr, "peak": self.peak}


def _sse(a, b) -> tuple[int, int]:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    diff = a - b
    return int((diff * diff).sum()), diff.size


def mse(a, b) -> float:
    total, n = _sse(a, b)
    return total / n


def psnr_from_mse(value: float, peak: int = PEAK) -> float:
    if value == 0:
        return math.inf
    return 10.0 * math.log10(peak * peak / value)


def psnr(a, b, peak: int = PEAK) -> float:
    return psnr_from_mse(mse(a, b), peak)


def rgb_mse(a: RgbImage, b: RgbImage) -> float:
    if a.shape != b.shape:
        raise DimensionMismatch(f"image shapes differ: {a.shape} vs {b.shape}")
    total = 0
    n = 0
    for pa, pb in ((a.r, b.r), (a.g, b.g), (a.b, b.b)):
        s, k = _sse(pa, pb)
        total += s
        n += k
    return total / n


def rgb_psnr(a: RgbImage, b: RgbImage, peak: int = PEAK) -> float:
    """PSNR from the MSE pooled over all three channels."""
    return psnr_from_mse(rgb_mse(a, b), peak)


def quality(a, b, peak: int = PEAK) -> QualityScore:
    if isinstance(a, RgbImage):
        value = rgb_mse(a, b)
    else:
        value = mse(a, b)
    return QualityScore(value, psnr_from_mse(value, peak), peak)
