from fractions import Fraction

import numpy as np
import pytest

from iwtsteg.colorspace import (
    YcbcrImage,
    pixel_to_rgb,
    pixel_to_ycbcr,
    rgb_to_ycbcr,
    ycbcr_to_rgb,
)
from iwtsteg.imagecore import RgbImage


def _round_half_away(x: Fraction) -> int:
    n = abs(x)
    r = int(n)
    if n - r >= Fraction(1, 2):
        r += 1
    return r if x >= 0 else -r


def oracle_forward(r, g, b):
    """Exact rational evaluation of the forward equations."""
    y = Fraction(77 * r + 150 * g + 29 * b, 256)
    cb = Fraction(-44 * r - 87 * g + 131 * b, 256) + 128
    cr = Fraction(131 * r - 110 * g - 21 * b, 256) + 128
    return tuple(_round_half_away(v) for v in (y, cb, cr))


def oracle_inverse(y, cb, cr):
    d = Fraction
    r = y + d("1.371") * (cr - 128)
    g = y - d("0.698") * (cr - 128) - d("0.336") * (cb - 128)
    b = y + d("1.732") * (cb - 128)
    return tuple(min(255, max(0, _round_half_away(v))) for v in (r, g, b))


def test_grey_pixels_are_neutral():
    v = np.arange(256)
    ycc = rgb_to_ycbcr(RgbImage(v[None, :], v[None, :], v[None, :]))
    assert np.array_equal(ycc.y[0], v)
    assert (ycc.cb == 128).all() and (ycc.cr == 128).all()


def test_forward_examples():
    assert pixel_to_ycbcr(200, 200, 200) == (200, 128, 128)
    assert pixel_to_ycbcr(0, 0, 0) == (0, 128, 128)
    # Y and Cb as computed by hand; Cr keeps its unclamped value 258.49 -> 258
    assert pixel_to_ycbcr(255, 0, 0) == (77, 84, 258)


def test_inverse_examples():
    assert pixel_to_rgb(128, 128, 128) == (128, 128, 128)
    assert pixel_to_rgb(77, 84, 255) == (251, 3, 1)


def test_forward_matches_rational_oracle(rng):
    px = rng.integers(0, 256, size=(2000, 3))
    img = RgbImage(px[:, 0:1], px[:, 1:2], px[:, 2:3])
    ycc = rgb_to_ycbcr(img)
    got = np.stack([ycc.y[:, 0], ycc.cb[:, 0], ycc.cr[:, 0]], axis=1)
    want = np.array([oracle_forward(*map(int, p)) for p in px])
    assert np.array_equal(got, want)


def test_inverse_matches_rational_oracle(rng):
    y = rng.integers(0, 256, size=2000)
    c = rng.integers(-2, 259, size=(2000, 2))
    rgb = ycbcr_to_rgb(YcbcrImage(y[:, None], c[:, :1], c[:, 1:]))
    got = np.stack([rgb.r[:, 0], rgb.g[:, 0], rgb.b[:, 0]], axis=1)
    want = np.array([oracle_inverse(int(a), int(b), int(d)) for a, b, d in zip(y, c[:, 0], c[:, 1])])
    assert np.array_equal(got, want)


def test_chroma_range_is_bounded():
    # extreme corners of the RGB cube bound the unclamped chroma
    corners = np.array([[r, g, b] for r in (0, 255) for g in (0, 255) for b in (0, 255)])
    ycc = rgb_to_ycbcr(RgbImage.from_array(corners[None]))
    assert ycc.y.min() >= 0 and ycc.y.max() <= 255
    assert ycc.cb.min() >= -2 and ycc.cb.max() <= 258
    assert ycc.cr.min() >= -2 and ycc.cr.max() <= 258


@pytest.mark.slow
def test_round_trip_exhaustive():
    v = np.arange(256)
    r, g, b = (a.reshape(4096, 4096) for a in np.meshgrid(v, v, v, indexing="ij"))
    back = ycbcr_to_rgb(rgb_to_ycbcr(RgbImage(r, g, b)))
    err = max(int(np.abs(x - y).max()) for x, y in ((back.r, r), (back.g, g), (back.b, b)))
    assert err <= 2
