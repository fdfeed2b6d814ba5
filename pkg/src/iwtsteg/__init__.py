"""Hide two grey-scale images in one colour image via integer wavelet block matching.

Two domains are supported: ``rgb`` (keys in two colour channels) and
``ycbcr`` (keys in the Cb and Cr chroma planes).
"""

from .errors import StegoError
from .imagecore import Channel, ChannelPair, RgbImage
from .pipeline import (
    EmbedRequest,
    ExtractResult,
    embed,
    embed_rgb,
    embed_ycbcr,
    extract,
    extract_rgb,
    extract_ycbcr,
)

__all__ = [
    "Channel",
    "ChannelPair",
    "EmbedRequest",
    "ExtractResult",
    "RgbImage",
    "StegoError",
    "embed",
    "embed_rgb",
    "embed_ycbcr",
    "extract",
    "extract_rgb",
    "extract_ycbcr",
]

__version__ = "0.1.0"
