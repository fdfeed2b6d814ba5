"""Lossless image file I/O (PNG, BMP, PPM/PGM)."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .errors import ValidationError
from .imagecore import RgbImage, as_plane, check_pixel_range

COLOR_SUFFIXES = {".png": "PNG", ".bmp": "BMP", ".ppm": "PPM"}
GREY_SUFFIXES = {".png": "PNG", ".bmp": "BMP", ".pgm": "PPM"}
IMAGE_SUFFIXES = {".png", ".bmp", ".ppm", ".pgm", ".tif", ".tiff"}


def load_rgb(path) -> RgbImage:
    with Image.open(path) as im:
        return RgbImage.from_array(np.asarray(im.convert("RGB")))


def load_grey(path) -> np.ndarray:
    """Load a grey-scale plane; colour files are converted with PIL's luma rule."""
    with Image.open(path) as im:
        return as_plane(np.asarray(im.convert("L")))


def check_writable(path, grey: bool = False) -> str:
    """Return the PIL format for ``path`` or raise if its suffix is not lossless."""
    if grey:
        return _format_for(Path(path), GREY_SUFFIXES, "grey")
    return _format_for(Path(path), COLOR_SUFFIXES, "colour")


def _format_for(path: Path, table: dict[str, str], kind: str) -> str:
    fmt = table.get(path.suffix.lower())
    if fmt is None:
        raise ValidationError(
            f"refusing to write {kind} image {path.name!r}: use one of "
            f"{', '.join(sorted(table))} (lossy formats destroy the payload)"
        )
    return fmt


def save_rgb(img: RgbImage, path) -> None:
    path = Path(path)
    fmt = _format_for(path, COLOR_SUFFIXES, "colour")
    Image.fromarray(img.to_array()).save(path, format=fmt)


def save_grey(plane, path) -> None:
    path = Path(path)
    fmt = _format_for(path, GREY_SUFFIXES, "grey")
    plane = as_plane(plane)
    check_pixel_range(plane)
    Image.fromarray(plane.astype(np.uint8)).save(path, format=fmt)


def load_any(path):
    """Grey files load as a plane, everything else as an :class:`RgbImage`."""
    with Image.open(path) as im:
        if im.mode in ("L", "1", "I", "I;16"):
            return as_plane(np.asarray(im.convert("L")))
        return RgbImage.from_array(np.asarray(im.convert("RGB")))


def list_images(directory) -> list[Path]:
    return sorted(p for p in Path(directory).iterdir()
                  if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES)
