"""Domain comparison harness: stego and extracted-secret PSNR per cover/secret pair."""

from __future__ import annotations

import csv
import itertools
import logging
import math
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from . import metrics, pipeline
from .errors import StegoError
from .imagecore import GREEN_BLUE, ChannelPair, RgbImage

log = logging.getLogger(__name__)

DEFAULT_PASSPHRASE = b"bench"


@dataclass
class BenchRow:
    cover_name: str
    secret1_name: str
    secret2_name: str
    domain: str
    channels: str
    stego_psnr_db: float = math.nan
    secret1_psnr_db: float = math.nan
    secret2_psnr_db: float = math.nan
    embed_ms: float = math.nan
    extract_ms: float = math.nan
    secret1_ceiling_db: float = math.nan
    secret2_ceiling_db: float = math.nan
    keys_match: bool = False
    verify_iterations: int = 0
    headroom_rounds: int = 0
    error: str = ""

    @property
    def sort_key(self):
        return (self.cover_name, self.secret1_name, self.secret2_name,
                pipeline.DOMAINS.index(self.domain))


COLUMNS = [f.name for f in fields(BenchRow)]


def run_pair(cover_name: str, cover: RgbImage, names: tuple[str, str],
             secrets: tuple[np.ndarray, np.ndarray], domain: str,
             passphrase: bytes = DEFAULT_PASSPHRASE,
             channels: ChannelPair = GREEN_BLUE) -> BenchRow:
    row = BenchRow(cover_name, names[0], names[1], domain,
                   str(channels) if domain == "rgb" else "cbcr")
    try:
        req = pipeline.EmbedRequest(cover, secrets[0], secrets[1], passphrase, domain, channels)
        t0 = time.perf_counter()
        stego, stats = pipeline.embed_with_stats(req)
        t1 = time.perf_counter()
        result = pipeline.extract(stego, passphrase, domain, channels)
        t2 = time.perf_counter()
    except StegoError as exc:
        row.error = f"{type(exc).__name__}: {exc}"
        return row
    row.stego_psnr_db = metrics.rgb_psnr(cover, stego)
    row.secret1_psnr_db = metrics.psnr(secrets[0], result.secret1)
    row.secret2_psnr_db = metrics.psnr(secrets[1], result.secret2)
    row.secret1_ceiling_db = metrics.psnr(secrets[0], pipeline.secret_ceiling(secrets[0]))
    row.secret2_ceiling_db = metrics.psnr(secrets[1], pipeline.secret_ceiling(secrets[1]))
    row.embed_ms = (t1 - t0) * 1000
    row.extract_ms = (t2 - t1) * 1000
    row.keys_match = (result.key1, result.key2) == pipeline.embedded_keys(req)
    row.verify_iterations = stats.verify_iterations
    row.headroom_rounds = stats.headroom_rounds
    return row


def run(covers: dict[str, RgbImage], secrets: dict[str, np.ndarray],
        passphrase: bytes = DEFAULT_PASSPHRASE,
        channels: ChannelPair = GREEN_BLUE) -> list[BenchRow]:
    """Both domains over every cover and every unordered pair of secrets."""
    rows = []
    for cover_name, (n1, n2) in itertools.product(sorted(covers), itertools.combinations(sorted(secrets), 2)):
        for domain in pipeline.DOMAINS:
            log.info("bench %s %s+%s %s", cover_name, n1, n2, domain)
            rows.append(run_pair(cover_name, covers[cover_name], (n1, n2),
                                 (secrets[n1], secrets[n2]), domain, passphrase, channels))
    return sorted(rows, key=lambda r: r.sort_key)


def summarize(rows: list[BenchRow]) -> dict:
    """Check the domain-comparison trend on every cover and secret."""
    by = {(r.cover_name, r.secret1_name, r.secret2_name, r.domain): r for r in rows if not r.error}
    stego_checks = []
    secret_checks = []
    for (cover, s1, s2, domain), rgb in sorted(by.items()):
        if domain != "rgb" or (cover, s1, s2, "ycbcr") not in by:
            continue
        ycc = by[(cover, s1, s2, "ycbcr")]
        stego_checks.append({
            "cover": cover, "secrets": [s1, s2],
            "rgb_db": round(rgb.stego_psnr_db, 3), "ycbcr_db": round(ycc.stego_psnr_db, 3),
            "rgb_higher": rgb.stego_psnr_db > ycc.stego_psnr_db,
        })
        for name, attr in ((s1, "secret1_psnr_db"), (s2, "secret2_psnr_db")):
            a, b = getattr(rgb, attr), getattr(ycc, attr)
            secret_checks.append({
                "cover": cover, "secret": name,
                "rgb_db": round(a, 3), "ycbcr_db": round(b, 3),
                "ycbcr_higher": b > a,
            })
    return {
        "rows": len(rows),
        "failed_rows": sum(1 for r in rows if r.error),
        "stego_psnr_rgb_gt_ycbcr": bool(stego_checks) and all(c["rgb_higher"] for c in stego_checks),
        "secret_psnr_ycbcr_gt_rgb": bool(secret_checks) and all(c["ycbcr_higher"] for c in secret_checks),
        "stego_checks": stego_checks,
        "secret_checks": secret_checks,
    }


def _fmt(value) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        if math.isinf(value):
            return "inf"
        return f"{value:.4f}"
    return str(value)


def write_csv(rows: list[BenchRow], summary: dict, path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow([_fmt(v) for v in asdict(row).values()])
        fh.write(f"# stego_psnr_rgb_gt_ycbcr={summary['stego_psnr_rgb_gt_ycbcr']}\n")
        fh.write(f"# secret_psnr_ycbcr_gt_rgb={summary['secret_psnr_ycbcr_gt_rgb']}\n")
        fh.write(f"# failed_rows={summary['failed_rows']}\n")


def read_csv(path) -> list[dict]:
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(line for line in fh if not line.startswith("#")))
