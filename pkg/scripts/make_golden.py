"""Regenerate the golden interchange files under tests/data/golden/.

One stego image per domain plus the unencrypted key containers it carries.
Another implementation of the same format must extract these keys exactly.
"""

import json
from pathlib import Path

import numpy as np

from iwtsteg import files, keycodec, pipeline
from iwtsteg.blockmatch import MatchKey

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "data" / "golden"
PASSPHRASE = "golden-passphrase"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    cover = files.load_rgb(ROOT / "corpus" / "covers" / "chelsea.png")
    secret1 = files.load_grey(ROOT / "corpus" / "secrets" / "camera.png")
    secret2 = files.load_grey(ROOT / "corpus" / "secrets" / "retina.png")
    manifest = {"passphrase": PASSPHRASE, "cover": "corpus/covers/chelsea.png",
                "secret1": "corpus/secrets/camera.png", "secret2": "corpus/secrets/retina.png",
                "domains": {}}
    for domain in pipeline.DOMAINS:
        req = pipeline.EmbedRequest(cover, secret1, secret2, PASSPHRASE, domain)
        stego = pipeline.embed(req)
        files.save_rgb(stego, OUT / f"stego_{domain}.png")
        keys = pipeline.embedded_keys(req)
        dump = b"".join(keycodec.compress_container(keycodec.serialize(k)) for k in keys)
        (OUT / f"keys_{domain}.bin").write_bytes(dump)
        manifest["domains"][domain] = {"stego": f"stego_{domain}.png", "keys": f"keys_{domain}.bin",
                                       "channels": "gb" if domain == "rgb" else "cbcr"}

    key = MatchKey(tuple(int(i) for i in np.arange(16) * 7 % 64), 64, 4, 4)
    manifest["container"] = {
        "entries": list(key.entries), "nc": key.nc, "blocks_x": 4, "blocks_y": 4,
        "passphrase": "test",
        "stored_hex": keycodec.serialize(key).hex(),
        "encrypted_hex": keycodec.encode_key(key, keycodec.CipherSpec(b"test")).hex(),
    }
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


if __name__ == "__main__":
    main()
