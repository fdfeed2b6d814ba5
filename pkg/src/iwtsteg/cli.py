"""Command-line interface: ``iwtsteg embed|extract|compare|bench``.

Exit codes: 0 success, 2 validation/usage error, 3 I/O error, 4 decode failure.
Passphrases are read from an environment variable named on the command line.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

from . import bench, files, keycodec, metrics, pipeline
from .errors import DecodeError, StegoError, ValidationError
from .imagecore import ChannelPair

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_DECODE = 4

log = logging.getLogger("iwtsteg")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _passphrase(var: str) -> bytes:
    value = os.environ.get(var)
    if value is None:
        raise CliError(f"environment variable {var!r} is not set", EXIT_VALIDATION)
    return value.encode("utf-8")


def _channels(args) -> ChannelPair:
    if args.domain != "rgb" and args.channels is not None:
        raise CliError("--channels only applies to the rgb domain", EXIT_VALIDATION)
    return ChannelPair.parse(args.channels or "gb")


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=True))


def _psnr_field(value: float):
    return "inf" if math.isinf(value) else round(value, 4)


def cmd_embed(args) -> int:
    passphrase = _passphrase(args.passphrase_env)
    channels = _channels(args)
    cover = files.load_rgb(args.cover)
    secret1 = files.load_grey(args.secret1)
    secret2 = files.load_grey(args.secret2)
    files.check_writable(args.out)

    req = pipeline.EmbedRequest(cover, secret1, secret2, passphrase, args.domain, channels)
    stego, stats = pipeline.embed_with_stats(req)
    files.save_rgb(stego, args.out)
    if args.dump_key:
        dumped = b"".join(
            keycodec.compress_container(keycodec.serialize(k)) for k in pipeline.embedded_keys(req)
        )
        Path(args.dump_key).write_bytes(dumped)

    score = metrics.quality(cover, stego)
    _emit({
        "out": str(args.out),
        "domain": args.domain,
        "channels": str(channels) if args.domain == "rgb" else "cbcr",
        "psnr": _psnr_field(score.psnr_db),
        "mse": score.mse,
        "verify_iterations": stats.verify_iterations,
        "headroom_rounds": stats.headroom_rounds,
    })
    return EXIT_OK


def cmd_extract(args) -> int:
    passphrase = _passphrase(args.passphrase_env)
    channels = _channels(args)
    for out in (args.out1, args.out2):
        files.check_writable(out, grey=True)
    stego = files.load_rgb(args.stego)
    result = pipeline.extract(stego, passphrase, args.domain, channels)
    files.save_grey(result.secret1, args.out1)
    files.save_grey(result.secret2, args.out2)
    _emit({
        "out1": str(args.out1),
        "out2": str(args.out2),
        "domain": args.domain,
        "key1_blocks": result.key1.ns,
        "key2_blocks": result.key2.ns,
    })
    return EXIT_OK


def cmd_compare(args) -> int:
    a = files.load_any(args.a)
    b = files.load_any(args.b)
    if type(a) is not type(b):
        raise CliError("cannot compare a grey image with a colour image", EXIT_VALIDATION)
    score = metrics.quality(a, b)
    _emit({"psnr": _psnr_field(score.psnr_db), "mse": score.mse, "peak": score.peak})
    return EXIT_OK


def cmd_bench(args) -> int:
    for d in (args.covers, args.secrets):
        if not Path(d).is_dir():
            raise CliError(f"not a directory: {d}", EXIT_IO)
    cover_paths = files.list_images(args.covers)
    secret_paths = files.list_images(args.secrets)
    if not cover_paths:
        raise CliError(f"no cover images in {args.covers}", EXIT_VALIDATION)
    if len(secret_paths) < 2:
        raise CliError(f"need at least two secret images in {args.secrets}", EXIT_VALIDATION)
    passphrase = _passphrase(args.passphrase_env) if args.passphrase_env else bench.DEFAULT_PASSPHRASE
    channels = ChannelPair.parse(args.channels or "gb")

    covers = {p.stem: files.load_rgb(p) for p in cover_paths}
    secrets = {p.stem: files.load_grey(p) for p in secret_paths}
    rows = bench.run(covers, secrets, passphrase, channels)
    summary = bench.summarize(rows)
    bench.write_csv(rows, summary, args.out)
    _emit({"out": str(args.out), **summary})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iwtsteg", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="hide two grey secrets in a colour cover")
    p.add_argument("--cover", required=True)
    p.add_argument("--secret1", required=True)
    p.add_argument("--secret2", required=True)
    p.add_argument("--out", required=True, help="stego image (.png, .bmp or .ppm)")
    p.add_argument("--domain", choices=pipeline.DOMAINS, default="rgb")
    p.add_argument("--passphrase-env", required=True, metavar="VAR")
    p.add_argument("--channels", choices=["gb", "rg", "rb"], default=None)
    p.add_argument("--dump-key", metavar="PATH",
                   help="write the K1 and K2 containers (unencrypted, concatenated)")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover the two secrets from a stego image")
    p.add_argument("--stego", required=True)
    p.add_argument("--out1", required=True)
    p.add_argument("--out2", required=True)
    p.add_argument("--domain", choices=pipeline.DOMAINS, default="rgb")
    p.add_argument("--passphrase-env", required=True, metavar="VAR")
    p.add_argument("--channels", choices=["gb", "rg", "rb"], default=None)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("compare", help="PSNR/MSE between two images")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="compare both domains over a directory of images")
    p.add_argument("--covers", required=True)
    p.add_argument("--secrets", required=True)
    p.add_argument("--out", required=True, help="CSV report path")
    p.add_argument("--passphrase-env", metavar="VAR", default=None)
    p.add_argument("--channels", choices=["gb", "rg", "rb"], default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"iwtsteg: {exc}", file=sys.stderr)
        return exc.code
    except DecodeError as exc:
        print(f"iwtsteg: decode failed ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_DECODE
    except ValidationError as exc:
        print(f"iwtsteg: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except StegoError as exc:
        print(f"iwtsteg: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"iwtsteg: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
