"""Regenerate the bundled test images from scikit-image sample data.

All sources are CC0 or public domain:

    covers/chelsea.png   cat fur, stands in for the textured "baboon" cover
    covers/coffee.png    smooth saturated scene, stands in for "peppers"
    covers/astronaut.png extra cover (NASA, public domain)
    secrets/retina.png   round bright disc on black, stands in for "earth"
    secrets/camera.png   cameraman, stands in for "football"

Requires scikit-image, which the package itself does not depend on.
"""

from pathlib import Path

import numpy as np
from PIL import Image
from skimage import data

ROOT = Path(__file__).resolve().parent.parent / "corpus"


def square(arr: np.ndarray, size: int) -> Image.Image:
    h, w = arr.shape[:2]
    side = min(h, w)
    top = (h - side) // 2
    left = (w - side) // 2
    img = Image.fromarray(arr[top:top + side, left:left + side])
    return img.resize((size, size), Image.LANCZOS)


def main() -> None:
    (ROOT / "covers").mkdir(parents=True, exist_ok=True)
    (ROOT / "secrets").mkdir(parents=True, exist_ok=True)
    for name, arr in (("chelsea", data.chelsea()), ("coffee", data.coffee()),
                      ("astronaut", data.astronaut())):
        square(arr, 256).convert("RGB").save(ROOT / "covers" / f"{name}.png")
    for name, arr in (("retina", data.retina()), ("camera", data.camera())):
        square(arr, 128).convert("L").save(ROOT / "secrets" / f"{name}.png")


if __name__ == "__main__":
    main()
