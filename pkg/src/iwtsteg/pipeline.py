"""End-to-end embedding and extraction in the RGB and YCbCr domains.

Each carrier plane hides one secret: the secret's LL sub-band is matched
block-by-block against the carrier's LL, and only the resulting key is
embedded (encrypted) in the carrier's high-frequency bands.  Extraction
reads the key back and copies the keyed carrier blocks to approximate the
secret LL, then inverts the IWT with zero high bands.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import bitplane, blockmatch, iwt, keycodec
from .bitplane import EmbedMode, Payload
from .blockmatch import MatchKey
from .colorspace import YcbcrImage, rgb_to_ycbcr, ycbcr_to_rgb_unclamped
from .errors import CapacityExceeded, OddDimension, RoundTripUnstable, ValidationError
from .imagecore import GREEN_BLUE, ChannelPair, RgbImage, as_plane, check_pixel_range

log = logging.getLogger(__name__)

DOMAINS = ("rgb", "ycbcr")
MAX_VERIFY_ITERATIONS = 8
MAX_REPAIR_ITERATIONS = 16
MAX_HEADROOM_ROUNDS = 12
HEADROOM_STEP = 8
MAX_HEADROOM = 64


@dataclass(frozen=True, eq=False)
class EmbedRequest:
    cover: RgbImage
    secret1: np.ndarray
    secret2: np.ndarray
    passphrase: bytes
    domain: str = "rgb"
    channels: ChannelPair = GREEN_BLUE

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise ValidationError(f"domain must be one of {DOMAINS}, got {self.domain!r}")
        if isinstance(self.passphrase, str):
            object.__setattr__(self, "passphrase", self.passphrase.encode("utf-8"))
        for name in ("secret1", "secret2"):
            plane = as_plane(getattr(self, name))
            check_pixel_range(plane)
            object.__setattr__(self, name, plane)


@dataclass(frozen=True, eq=False)
class ExtractResult:
    secret1: np.ndarray
    secret2: np.ndarray
    key1: MatchKey
    key2: MatchKey


@dataclass
class EmbedStats:
    """Diagnostics from one embedding run."""

    headroom_rounds: int = 0
    lifted_pixels: int = 0
    verify_iterations: int = 0


@dataclass
class _Carrier:
    """Working state for one carrier plane during embedding."""

    plane: np.ndarray
    key: MatchKey
    payload: Payload
    bands: iwt.SubBands = field(init=False)

    def __post_init__(self):
        self.bands = iwt.forward(self.plane)


def _check_shapes(cover_shape: tuple[int, int], secret: np.ndarray, name: str) -> None:
    h, w = cover_shape
    if h % 4 or w % 4:
        raise OddDimension(f"cover must have dimensions divisible by 4, got {h}x{w}")
    sh, sw = secret.shape
    if sh % 4 or sw % 4:
        raise OddDimension(f"{name} must have dimensions divisible by 4, got {sh}x{sw}")
    ns = (sh // 4) * (sw // 4)
    nc = (h // 4) * (w // 4)
    if ns > nc:
        raise CapacityExceeded(
            f"{name} ({sh}x{sw}) has {ns} LL blocks, cover ({h}x{w}) only {nc}"
        )


def _prepare(plane: np.ndarray, secret: np.ndarray, spec: keycodec.CipherSpec) -> _Carrier:
    cover_bands = iwt.forward(plane)
    key = blockmatch.build_key(cover_bands.ll, iwt.forward(secret).ll)
    payload = Payload.from_bytes(keycodec.encode_key(key, spec))
    needed = bitplane.PREFIX_BITS + len(payload)
    cap = bitplane.capacity(cover_bands)
    if needed > cap:
        raise CapacityExceeded(f"key payload needs {needed} bits, carrier holds {cap}")
    return _Carrier(plane, key, payload)


def _embed_plane(bands: iwt.SubBands, payload: Payload, mode: EmbedMode) -> np.ndarray:
    return iwt.inverse(bitplane.embed(bands, payload, mode))


def _read_key(plane: np.ndarray, spec: keycodec.CipherSpec) -> tuple[MatchKey, iwt.SubBands]:
    bands = iwt.forward(plane)
    payload = bitplane.extract(bands)
    return keycodec.decode_key(payload.to_bytes(), spec), bands


def _recover(bands: iwt.SubBands, key: MatchKey) -> np.ndarray:
    return blockmatch.rebuild_secret(blockmatch.reconstruct_ll(bands.ll, key))


def _in_range(plane: np.ndarray) -> bool:
    return bool(plane.min() >= 0 and plane.max() <= 255)


def _dilate(mask: np.ndarray, radius: int) -> np.ndarray:
    padded = np.pad(mask, radius)
    windows = np.lib.stride_tricks.sliding_window_view(padded, (2 * radius + 1,) * 2)
    return windows.any(axis=(-1, -2))


def _fit_with_fixed_ll(bands: iwt.SubBands, payload: Payload) -> np.ndarray:
    """Plain embedding, then repair the high bands (LL fixed) while pixels leave [0, 255]."""
    plane = _embed_plane(bands, payload, EmbedMode.PLAIN)
    for _ in range(MAX_REPAIR_ITERATIONS):
        if _in_range(plane):
            break
        current = iwt.forward(np.clip(plane, 0, 255))
        repaired = bitplane.project(current, payload)
        plane = iwt.inverse(iwt.SubBands(bands.ll, *repaired.high_bands()))
    return plane


def _embed_rgb_channel(carrier: _Carrier, stats: EmbedStats) -> np.ndarray:
    """Embed into one colour channel and return an 8-bit plane carrying the payload.

    Usually the plain embedding already fits in [0, 255], and the LL sub-band is
    untouched.  Flat saturated regions cannot hold a bit-3 detail coefficient
    without leaving the pixel range, so the cover is pulled away from 0/255 in
    growing steps around the offending pixels; the LL changes only there.
    """
    cover = carrier.plane
    headroom = np.zeros_like(cover)
    bands = carrier.bands
    for round_ in range(MAX_HEADROOM_ROUNDS):
        plane = _fit_with_fixed_ll(bands, carrier.payload)
        outside = (plane < 0) | (plane > 255)
        if not outside.any():
            break
        grow = _dilate(outside, 2)
        headroom[grow] = np.minimum(headroom[grow] + HEADROOM_STEP, MAX_HEADROOM)
        bands = iwt.forward(np.clip(cover, headroom, 255 - headroom))
        log.debug("lifting %d saturated pixels", int(grow.sum()))
    stats.headroom_rounds = max(stats.headroom_rounds, round_)
    stats.lifted_pixels += int((np.clip(cover, headroom, 255 - headroom) != cover).sum())
    if _in_range(plane):
        return plane

    plane = np.clip(plane, 0, 255)
    if bitplane.intact(iwt.forward(plane), carrier.payload):
        return plane
    raise RoundTripUnstable("could not fit the payload inside the pixel range")


def embed_rgb(req: EmbedRequest) -> RgbImage:
    if req.domain != "rgb":
        raise ValidationError("embed_rgb needs an rgb-domain request")
    return _embed_rgb(req, EmbedStats())


def _embed_rgb(req: EmbedRequest, stats: EmbedStats) -> RgbImage:
    spec = keycodec.CipherSpec(req.passphrase)
    _check_shapes(req.cover.shape, req.secret1, "secret1")
    _check_shapes(req.cover.shape, req.secret2, "secret2")
    replacements = {}
    for channel, secret in ((req.channels.first, req.secret1), (req.channels.second, req.secret2)):
        carrier = _prepare(req.cover.channel(channel), secret, spec)
        replacements[channel] = _embed_rgb_channel(carrier, stats)
    return req.cover.with_channels(replacements)


def extract_rgb(stego: RgbImage, passphrase, channels: ChannelPair = GREEN_BLUE) -> ExtractResult:
    spec = keycodec.CipherSpec(passphrase)
    key1, bands1 = _read_key(stego.channel(channels.first), spec)
    key2, bands2 = _read_key(stego.channel(channels.second), spec)
    return ExtractResult(_recover(bands1, key1), _recover(bands2, key2), key1, key2)


def embed_ycbcr(req: EmbedRequest) -> RgbImage:
    if req.domain != "ycbcr":
        raise ValidationError("embed_ycbcr needs a ycbcr-domain request")
    return _embed_ycbcr(req, EmbedStats())


def _embed_ycbcr(req: EmbedRequest, stats: EmbedStats) -> RgbImage:
    spec = keycodec.CipherSpec(req.passphrase)
    _check_shapes(req.cover.shape, req.secret1, "secret1")
    _check_shapes(req.cover.shape, req.secret2, "secret2")
    ycc = rgb_to_ycbcr(req.cover)
    carriers = [_prepare(ycc.cb, req.secret1, spec), _prepare(ycc.cr, req.secret2, spec)]

    headroom = np.zeros(req.cover.shape, dtype=np.int64)
    base = ycc
    for round_ in range(MAX_HEADROOM_ROUNDS):
        stego, clipped = _embed_chroma(base, carriers, stats)
        if stego is not None:
            stats.headroom_rounds = round_
            stats.lifted_pixels = int(sum((np.clip(p, headroom, 255 - headroom) != p).sum()
                                          for p in (req.cover.r, req.cover.g, req.cover.b)))
            return stego
        if not clipped.any():
            break
        # Saturated colours swallow the chroma change; move the cover inward there.
        grow = _dilate(clipped, 2)
        headroom[grow] = np.minimum(headroom[grow] + HEADROOM_STEP, MAX_HEADROOM)
        lifted = [np.clip(p, headroom, 255 - headroom) for p in (req.cover.r, req.cover.g, req.cover.b)]
        base = rgb_to_ycbcr(RgbImage(*lifted))
        log.debug("lifting %d pixels near saturation", int(grow.sum()))
    raise RoundTripUnstable(
        f"payload still corrupted after {MAX_VERIFY_ITERATIONS} re-embeddings"
    )


def _embed_chroma(base: YcbcrImage, carriers: list[_Carrier], stats: EmbedStats):
    """Centered embedding into Cb/Cr of ``base`` plus the verification loop.

    Returns ``(stego, None)`` once both payloads survive the RGB round trip,
    otherwise ``(None, clipped)`` where ``clipped`` marks pixels that had to be
    clamped in the last attempt.
    """
    bands = [iwt.forward(base.cb), iwt.forward(base.cr)]
    clipped = np.zeros(base.shape, dtype=bool)
    for iteration in range(MAX_VERIFY_ITERATIONS + 1):
        planes = [_embed_plane(b, c.payload, EmbedMode.CENTERED) for b, c in zip(bands, carriers)]
        raw = ycbcr_to_rgb_unclamped(YcbcrImage(base.y, *planes))
        clipped = np.logical_or.reduce([(p < 0) | (p > 255) for p in raw])
        stego = RgbImage(*(np.clip(p, 0, 255) for p in raw))
        current = rgb_to_ycbcr(stego)
        bands = [iwt.forward(current.cb), iwt.forward(current.cr)]
        if all(bitplane.intact(b, c.payload) for b, c in zip(bands, carriers)):
            stats.verify_iterations = iteration
            return stego, None
    return None, clipped


def extract_ycbcr(stego: RgbImage, passphrase) -> ExtractResult:
    spec = keycodec.CipherSpec(passphrase)
    ycc = rgb_to_ycbcr(stego)
    key1, bands1 = _read_key(ycc.cb, spec)
    key2, bands2 = _read_key(ycc.cr, spec)
    return ExtractResult(_recover(bands1, key1), _recover(bands2, key2), key1, key2)


def embed(req: EmbedRequest) -> RgbImage:
    return embed_with_stats(req)[0]


def embed_with_stats(req: EmbedRequest) -> tuple[RgbImage, EmbedStats]:
    """Embed in the request's domain and report how much repair was needed.

    ``verify_iterations`` counts re-embeddings in the YCbCr verification loop;
    ``headroom_rounds``/``lifted_pixels`` are non-zero only when saturated
    cover pixels had to be moved to keep the payload inside the pixel range.
    """
    stats = EmbedStats()
    if req.domain == "rgb":
        return _embed_rgb(req, stats), stats
    return _embed_ycbcr(req, stats), stats


def extract(stego: RgbImage, passphrase, domain: str = "rgb",
            channels: ChannelPair = GREEN_BLUE) -> ExtractResult:
    if domain == "rgb":
        return extract_rgb(stego, passphrase, channels)
    if domain == "ycbcr":
        return extract_ycbcr(stego, passphrase)
    raise ValidationError(f"domain must be one of {DOMAINS}, got {domain!r}")


def embedded_keys(req: EmbedRequest) -> tuple[MatchKey, MatchKey]:
    """The keys an embedding of ``req`` will carry, computed without embedding."""
    if req.domain == "rgb":
        planes = (req.cover.channel(req.channels.first), req.cover.channel(req.channels.second))
    else:
        ycc = rgb_to_ycbcr(req.cover)
        planes = (ycc.cb, ycc.cr)
    return tuple(
        blockmatch.build_key(iwt.forward(p).ll, iwt.forward(s).ll)
        for p, s in zip(planes, (req.secret1, req.secret2))
    )


def secret_ceiling(secret: np.ndarray) -> np.ndarray:
    """Best possible reconstruction: the secret's own LL with zero high bands."""
    return blockmatch.rebuild_secret(iwt.forward(secret).ll)
