"""Compare the six coding systems on a corpus of images."""

from __future__ import annotations

import csv
import json
import os
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .codec import decode_plane, encode_plane
from .container import CodedStream
from .errors import I2ICError
from .pgm import read_pgm
from .residual import SystemConfig

CSV_COLUMNS = ("image", "system", "bits", "pct_reduction_vs_skip", "enc_ms", "dec_ms")


class LosslessFailure(I2ICError):
    """A decoded image differs from its source."""


@dataclass
class BenchRow:
    image: str
    system: str
    bits: int
    pct_reduction_vs_skip: float
    enc_ms: float
    dec_ms: float


@dataclass
class BenchReport:
    rows: list = field(default_factory=list)

    def mean_bits(self) -> dict:
        return self._mean("bits")

    def mean_reduction(self) -> dict:
        return self._mean("pct_reduction_vs_skip")

    def _mean(self, attr: str) -> dict:
        groups = {}
        for r in self.rows:
            groups.setdefault(r.system, []).append(getattr(r, attr))
        order = sorted(groups, key=SystemConfig.from_name)
        return {k: float(np.mean(groups[k])) for k in order}

    def to_dict(self) -> dict:
        return {
            "rows": [asdict(r) for r in self.rows],
            "mean_bits": self.mean_bits(),
            "mean_pct_reduction_vs_skip": self.mean_reduction(),
        }

    def write_json(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n")

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
            writer.writeheader()
            for r in self.rows:
                writer.writerow(asdict(r))


def thread_count() -> int:
    n = int(os.environ.get("I2IC_THREADS", "0") or 0)
    return n if n > 0 else (os.cpu_count() or 1)


def limit_blocks(img: np.ndarray, max_blocks: int | None) -> np.ndarray:
    """Keep whole block rows from the top until at least ``max_blocks`` blocks are covered."""
    if not max_blocks:
        return img
    per_row = -(-img.shape[1] // 4)
    rows = -(-max_blocks // per_row)
    return img[: 4 * rows]


def _median_ms(fn, runs: int) -> tuple:
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        out = fn()
        times.append(1000 * (time.perf_counter() - t0))
    return out, statistics.median(times)


def _bench_image(name: str, img: np.ndarray, systems, runs: int) -> list:
    results = []
    for cfg in systems:
        stream, enc_ms = _median_ms(lambda: encode_plane(img, cfg), runs)
        data = stream.to_bytes()
        decoded, dec_ms = _median_ms(lambda: decode_plane(CodedStream.from_bytes(data)), runs)
        if decoded.shape != img.shape or not np.array_equal(decoded, img):
            raise LosslessFailure(f"{name}: {cfg.cli_name} did not round-trip")
        results.append((cfg, 8 * len(data), enc_ms, dec_ms))
    return results


def run_bench(images, systems=tuple(SystemConfig), runs: int = 5, max_blocks: int | None = None, threads: int | None = None) -> BenchReport:
    """Benchmark ``images``, an iterable of ``(name, plane)``.

    SKIP is always coded since it is the baseline.  Every stream is decoded
    and compared before anything is reported; a mismatch raises
    :class:`LosslessFailure`.  Sizes are whole container files in bits.
    """
    systems = [SystemConfig(s) for s in systems]
    if SystemConfig.SKIP not in systems:
        systems = [SystemConfig.SKIP] + systems
    images = [(name, limit_blocks(np.asarray(img), max_blocks)) for name, img in images]
    with ThreadPoolExecutor(max_workers=threads or thread_count()) as pool:
        per_image = list(pool.map(lambda item: _bench_image(*item, systems, runs), images))

    report = BenchReport()
    for (name, _), results in zip(images, per_image):
        skip_bits = next(b for cfg, b, _, _ in results if cfg is SystemConfig.SKIP)
        for cfg, bits, enc_ms, dec_ms in results:
            pct = 100.0 * (skip_bits - bits) / skip_bits
            report.rows.append(BenchRow(name, cfg.cli_name, bits, round(pct, 4), round(enc_ms, 3), round(dec_ms, 3)))
    report.rows.sort(key=lambda r: (r.image, SystemConfig.from_name(r.system)))
    return report


def load_corpus(directory) -> list:
    paths = sorted(Path(directory).glob("*.pgm"))
    return [(p.name, read_pgm(p)) for p in paths]
