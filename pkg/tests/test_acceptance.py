"""Acceptance criteria 1-10.

Each test prints exactly one ``[PASS]``/``[FAIL]`` line with the measured
numbers, then asserts.  Under pytest the lines are also repeated in an
"acceptance criteria" section at the end of the run.  Thresholds are the contract values; nothing here is
loosened to make a number pass.  Run standalone with
``python tests/test_acceptance.py`` to get just the report lines.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import BABOON_LIKE, CORPUS, EARTH_LIKE, FOOTBALL_LIKE, GOLDEN, PEPPERS_LIKE  # noqa: E402
from iwtsteg import bitplane, blockmatch, files, iwt, keycodec, metrics, pipeline  # noqa: E402
from iwtsteg.bitplane import EmbedMode, Payload  # noqa: E402
from iwtsteg.colorspace import rgb_to_ycbcr, ycbcr_to_rgb  # noqa: E402
from iwtsteg.imagecore import RgbImage  # noqa: E402

PASSPHRASES = (b"alpha", b"correct horse battery")
SEED = 1234


REPORT_LINES: dict[int, str] = {}


def report(number: int, ok: bool, title: str, detail: str) -> None:
    """Print the verdict and keep it for the end-of-run summary (see conftest)."""
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} -- {detail}"
    REPORT_LINES[number] = line
    print(line)


@functools.lru_cache(maxsize=None)
def _cover(name):
    return files.load_rgb(CORPUS / "covers" / f"{name}.png")


@functools.lru_cache(maxsize=None)
def _secret(name):
    return files.load_grey(CORPUS / "secrets" / f"{name}.png")


def _cover_names():
    return [p.stem for p in files.list_images(CORPUS / "covers")]


@functools.lru_cache(maxsize=None)
def run_pipeline(cover, s1, s2, passphrase, domain):
    """Embed, write to PNG, read back, extract.  Cached across criteria."""
    req = pipeline.EmbedRequest(_cover(cover), _secret(s1), _secret(s2), passphrase, domain)
    t0 = time.perf_counter()
    stego, stats = pipeline.embed_with_stats(req)
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "stego.png"
        files.save_rgb(stego, path)
        loaded = files.load_rgb(path)
    result = pipeline.extract(loaded, passphrase, domain)
    elapsed = time.perf_counter() - t0
    return {
        "req": req, "stego": loaded, "stats": stats, "result": result, "seconds": elapsed,
        "same_after_io": loaded == stego,
        "expected_keys": pipeline.embedded_keys(req),
    }


def _combinations():
    names = sorted(p.stem for p in files.list_images(CORPUS / "secrets"))
    for cover in _cover_names():
        for s1, s2 in itertools.permutations(names, 2):
            for pw in PASSPHRASES:
                yield cover, s1, s2, pw


# ---------------------------------------------------------------- criteria


def check_1():
    rng = np.random.default_rng(SEED)
    mismatches = 0
    for _ in range(1000):
        h, w = 2 * rng.integers(2, 129, size=2)
        p = rng.integers(0, 256, size=(h, w))
        mismatches += int((iwt.inverse(iwt.forward(p)) != p).sum())
    return mismatches == 0, "IWT perfect reconstruction", \
        f"1000 random planes 4x4..256x256, {mismatches} mismatched samples"


def _key_roundtrip(domain):
    runs = [(c, run_pipeline(*c, domain)) for c in _combinations()]
    bad = [c for c, r in runs if (r["result"].key1, r["result"].key2) != r["expected_keys"]
           or not r["same_after_io"]]
    iters = [r["stats"].verify_iterations for _, r in runs]
    rounds = [r["stats"].headroom_rounds for _, r in runs]
    return runs, bad, iters, rounds


def check_2():
    runs, bad, _, rounds = _key_roundtrip("rgb")
    return not bad, "key round-trip, RGB domain", \
        f"{len(runs)} cover/secret/passphrase combinations through PNG, {len(bad)} key mismatches " \
        f"(headroom rounds max {max(rounds)})"


def check_3():
    runs, bad, iters, rounds = _key_roundtrip("ycbcr")
    ok = not bad and max(iters) <= pipeline.MAX_VERIFY_ITERATIONS
    return ok, "key round-trip, YCbCr domain", \
        f"{len(runs)} combinations, {len(bad)} key mismatches, verify iterations max {max(iters)} " \
        f"(limit {pipeline.MAX_VERIFY_ITERATIONS}), headroom rounds max {max(rounds)}"


def check_4():
    parts = []
    ok = True
    for cover in _cover_names():
        r = run_pipeline(cover, FOOTBALL_LIKE, EARTH_LIKE, PASSPHRASES[0], "rgb")
        req = r["req"]
        diff = 0
        for ch in (req.channels.first, req.channels.second):
            a = iwt.forward(req.cover.channel(ch)).ll
            b = iwt.forward(r["stego"].channel(ch)).ll
            diff += int((a != b).sum())
        ok &= diff == 0
        parts.append(f"{cover}: {diff} LL coefficients differ "
                     f"({r['stats'].lifted_pixels} saturated pixels lifted)")
    return ok, "LL invariance, RGB carriers", "; ".join(parts)


def check_5():
    parts = []
    ok = True
    for cover in (BABOON_LIKE, PEPPERS_LIKE):
        rgb = run_pipeline(cover, FOOTBALL_LIKE, EARTH_LIKE, PASSPHRASES[0], "rgb")
        ycc = run_pipeline(cover, FOOTBALL_LIKE, EARTH_LIKE, PASSPHRASES[0], "ycbcr")
        a = metrics.rgb_psnr(rgb["req"].cover, rgb["stego"])
        b = metrics.rgb_psnr(ycc["req"].cover, ycc["stego"])
        slow = max(rgb["seconds"], ycc["seconds"])
        ok &= a >= 40 and b >= 33 and a > b and slow < 10
        parts.append(f"{cover}: RGB {a:.2f} dB, YCbCr {b:.2f} dB, slowest run {slow:.2f} s")
    return ok, "stego PSNR (RGB >= 40, YCbCr >= 33, RGB > YCbCr)", "; ".join(parts)


def check_6():
    parts = []
    ok = True
    for cover in (BABOON_LIKE, PEPPERS_LIKE):
        rgb = run_pipeline(cover, FOOTBALL_LIKE, EARTH_LIKE, PASSPHRASES[0], "rgb")
        ycc = run_pipeline(cover, FOOTBALL_LIKE, EARTH_LIKE, PASSPHRASES[0], "ycbcr")
        for name, attr in ((FOOTBALL_LIKE, "secret1"), (EARTH_LIKE, "secret2")):
            original = _secret(name)
            a = metrics.psnr(original, getattr(rgb["result"], attr))
            b = metrics.psnr(original, getattr(ycc["result"], attr))
            ceiling = metrics.psnr(original, pipeline.secret_ceiling(original))
            ok &= b > a and a >= 22 and b >= 22
            parts.append(f"{cover}/{name}: RGB {a:.2f}, YCbCr {b:.2f}, ceiling {ceiling:.2f} dB")
    return ok, "extracted-secret PSNR (YCbCr > RGB, both >= 22)", "; ".join(parts)


def _match_oracle(cover_ll, secret_ll):
    cover = blockmatch.partition(cover_ll)
    secret = blockmatch.partition(secret_ll)
    out = []
    for i in range(secret.count):
        s = secret.block(i)
        errs = [int(((s - cover.block(k)) ** 2).sum()) for k in range(cover.count)]
        out.append(errs.index(min(errs)))
    return out


def check_7():
    rng = np.random.default_rng(SEED)
    key_bad = 0
    for _ in range(100):
        cover = rng.integers(-20, 300, size=(8, 8))
        secret = rng.integers(-20, 300, size=(4, 4))
        key_bad += list(blockmatch.build_key(cover, secret).entries) != _match_oracle(cover, secret)
    worst = 0.0
    for _ in range(100):
        shape = tuple(rng.integers(1, 40, size=2))
        a = rng.integers(0, 256, size=shape)
        b = rng.integers(0, 256, size=shape)
        naive = sum((int(x) - int(y)) ** 2 for x, y in zip(a.ravel(), b.ravel())) / a.size
        worst = max(worst, abs(metrics.mse(a, b) - naive) / naive)
        if naive:
            want = 10 * math.log10(255 ** 2 / naive)
            worst = max(worst, abs(metrics.psnr(a, b) - want) / want)
    ok = key_bad == 0 and worst <= 1e-9
    return ok, "oracle equivalence", \
        f"block matching: {key_bad}/100 instances differ; MSE/PSNR worst relative error {worst:.2e}"


def check_8():
    manifest = json.loads((GOLDEN / "manifest.json").read_text())
    passphrase = manifest["passphrase"].encode()
    parts = []
    ok = True
    for domain, entry in manifest["domains"].items():
        stego = files.load_rgb(GOLDEN / entry["stego"])
        expected = keycodec.split_containers((GOLDEN / entry["keys"]).read_bytes())
        result = pipeline.extract(stego, passphrase, domain)
        keys_ok = [result.key1, result.key2] == expected
        ok &= keys_ok
        parts.append(f"{domain}: keys {'match' if keys_ok else 'DIFFER'}")
    c = manifest["container"]
    key = blockmatch.MatchKey(tuple(c["entries"]), c["nc"], c["blocks_x"], c["blocks_y"])
    container_ok = (keycodec.serialize(key).hex() == c["stored_hex"]
                    and keycodec.encode_key(key, keycodec.CipherSpec(c["passphrase"])).hex()
                    == c["encrypted_hex"])
    ok &= container_ok
    parts.append(f"container vector {'byte-exact' if container_ok else 'DIFFERS'}")
    return ok, "golden interchange files", "; ".join(parts)


def check_9():
    v = np.arange(256)
    ycc = rgb_to_ycbcr(RgbImage(v[None], v[None], v[None]))
    grey_ok = (np.array_equal(ycc.y[0], v) and (ycc.cb == 128).all() and (ycc.cr == 128).all())
    rng = np.random.default_rng(SEED)
    img = RgbImage.from_array(rng.integers(0, 256, size=(1000, 1000, 3)))
    back = ycbcr_to_rgb(rgb_to_ycbcr(img))
    err = max(int(np.abs(a - b).max()) for a, b in ((img.r, back.r), (img.g, back.g), (img.b, back.b)))
    return grey_ok and err <= 2, "colorspace exactness", \
        f"grey axis {'exact' if grey_ok else 'WRONG'}; 10^6-pixel round trip max error {err} (limit 2)"


def check_10():
    rng = np.random.default_rng(SEED)
    cover = _cover(BABOON_LIKE)
    sb = iwt.forward(rgb_to_ycbcr(cover).cb)
    payload = Payload.from_bytes(rng.bytes(4000))
    marked = bitplane.embed(sb, payload, EmbedMode.CENTERED)
    failures = 0
    for _ in range(10):
        noisy = marked.replace_high(*(b + rng.integers(-3, 4, size=b.shape)
                                      for b in marked.high_bands()))
        failures += bitplane.extract(noisy, EmbedMode.CENTERED) != payload
    return failures == 0, "centered-mode robustness", \
        f"{len(payload)}-bit payload, every high-band coefficient perturbed in [-3, 3]: " \
        f"{failures}/10 trials corrupted"


CHECKS = [check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8, check_9, check_10]


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    ok, title, detail = CHECKS[number - 1]()
    report(number, ok, title, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, check in enumerate(CHECKS, start=1):
        ok, title, detail = check()
        report(i, ok, title, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
