"""Pinned images behind the golden ``.i2ic`` files.

Run ``python tests/golden_corpus.py`` to rewrite the files after an
intentional format change (which must also bump the container version).
"""

from __future__ import annotations

from pathlib import Path

from i2ic.codec import encode_bytes
from i2ic.residual import SystemConfig
from i2ic.synth import synth_ar1, synth_gradient, synth_noise

GOLDEN_DIR = Path(__file__).parent / "golden"


def golden_images() -> dict:
    return {
        "ar1": synth_ar1(24, 20, 0.95, 11),
        "gradient": synth_gradient(17, 13, 5),
        "noise": synth_noise(12, 8, 9),
    }


def golden_path(name: str, cfg: SystemConfig) -> Path:
    return GOLDEN_DIR / f"{name}_{cfg.cli_name}.i2ic"


def main() -> None:
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, img in golden_images().items():
        for cfg in SystemConfig:
            golden_path(name, cfg).write_bytes(encode_bytes(img, cfg))


if __name__ == "__main__":
    main()
