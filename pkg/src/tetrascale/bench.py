"""Benchmark pipeline: corpus ingest, timing, scoring, aggregation.

For every reference image the harness produces a low-resolution input (box
averaging, decimation, or a precomputed file), upscales it back with each
configured algorithm at each ratio, times the resize alone, and scores the
result against the reference with MSE/PSNR/SSIM.

Timed sections always run exclusively. Scoring may be parallelized across
a thread pool capped by the TETRA_THREADS environment variable (default 1);
scores are computed from an untimed run whose output is verified to be
bit-identical to the timed runs.

Precomputed low-resolution inputs are looked up as
``corpus_dir/x{ratio}/<same filename>``.
"""

from __future__ import annotations

import concurrent.futures
import csv
import json
import math
import os
import statistics
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .image import GrayImage, load_image, save_pgm
from .interpolate import INTENSITY_DOMAINS, SCHEMES, resize
from .metrics import mse, psnr, ssim

DOWNSAMPLERS = ("box", "decimate", "precomputed")

RECORDS_HEADER = ["image_id", "algorithm", "ratio", "mse", "psnr", "ssim", "elapsed_s"]
AGGREGATES_HEADER = [
    "algorithm",
    "ratio",
    "mean_mse",
    "mean_psnr",
    "mean_ssim",
    "mean_elapsed_s",
    "image_count",
]


@dataclass
class BenchConfig:
    """Benchmark run parameters. Validated on construction."""

    corpus_dir: Path
    output_dir: Path
    ratios: tuple = (2, 4)
    algorithms: tuple = SCHEMES
    intensity_domain: str = "raw"
    downsampler: str = "box"
    repetitions: int = 3
    save_images: bool = False

    def __post_init__(self):
        self.corpus_dir = Path(self.corpus_dir)
        self.output_dir = Path(self.output_dir)
        self.ratios = tuple(self.ratios)
        self.algorithms = tuple(self.algorithms)
        if not self.ratios:
            raise ValueError("at least one ratio is required")
        for r in self.ratios:
            if int(r) != r or r < 2:
                raise ValueError(f"ratios must be integers >= 2, got {r!r}")
        self.ratios = tuple(int(r) for r in self.ratios)
        if not self.algorithms:
            raise ValueError("at least one algorithm is required")
        for tag in self.algorithms:
            if tag not in SCHEMES:
                raise ValueError(f"unknown algorithm tag {tag!r}")
        if self.intensity_domain not in INTENSITY_DOMAINS:
            raise ValueError(f"unknown intensity domain {self.intensity_domain!r}")
        if self.downsampler not in DOWNSAMPLERS:
            raise ValueError(f"unknown downsampler {self.downsampler!r}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


@dataclass
class BenchRecord:
    """One (image, algorithm, ratio) measurement."""

    image_id: str
    algorithm: str
    ratio: int
    mse: float
    psnr: float
    ssim: float
    elapsed_s: float


@dataclass
class AggregateRow:
    """Per-(algorithm, ratio) means over all benchmarked images."""

    algorithm: str
    ratio: int
    mean_mse: float
    mean_psnr: float
    mean_ssim: float
    mean_elapsed_s: float
    image_count: int


def downsample(image: GrayImage, factor: int, method: str = "box") -> GrayImage:
    """Shrink by an integer factor: block mean ("box") or top-left sample
    of each block ("decimate"). Dimensions must be divisible by the factor."""
    if factor < 2 or int(factor) != factor:
        raise ValueError(f"factor must be an integer >= 2, got {factor!r}")
    h, w = image.height, image.width
    if h % factor or w % factor:
        raise ValueError(f"dimensions {w}x{h} not divisible by factor {factor}")
    if method == "box":
        blocks = image.pixels.reshape(h // factor, factor, w // factor, factor)
        means = blocks.astype(np.float64).mean(axis=(1, 3))
        return GrayImage(np.floor(means + 0.5).astype(np.uint8))
    if method == "decimate":
        return GrayImage(image.pixels[::factor, ::factor])
    raise ValueError(f"unknown downsample method {method!r}")


def _timed_resize(image, ratio, scheme, repetitions, intensity_domain):
    """Warm-up run (kept for scoring), then timed repetitions.

    Returns (median seconds, warm-up output). Each timed output is checked,
    outside the timed window, to be bit-identical to the warm-up output.
    """
    reference = resize(image, ratio, scheme, intensity_domain)
    times = []
    for _ in range(repetitions):
        tic = time.perf_counter()
        out = resize(image, ratio, scheme, intensity_domain)
        toc = time.perf_counter()
        times.append(toc - tic)
        if not np.array_equal(out.pixels, reference.pixels):
            raise RuntimeError(
                f"nondeterministic output from {scheme} at ratio {ratio}"
            )
    return statistics.median(times), reference


def time_algorithm(
    image: GrayImage,
    ratio: float,
    scheme: str,
    repetitions: int = 3,
    intensity_domain: str = "raw",
) -> float:
    """Median wall-clock seconds of ``repetitions`` resize runs (one untimed
    warm-up first)."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    return _timed_resize(image, ratio, scheme, repetitions, intensity_domain)[0]


def discover_corpus(corpus_dir) -> list:
    """Sorted list of .pgm/.png files directly inside ``corpus_dir``."""
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {corpus_dir}")
    files = sorted(
        p for p in corpus_dir.iterdir()
        if p.is_file() and p.suffix.lower() in (".pgm", ".png")
    )
    if not files:
        raise ValueError(f"no .pgm/.png images in corpus directory {corpus_dir}")
    return files


def _lowres_input(config: BenchConfig, path: Path, reference: GrayImage, ratio: int):
    if config.downsampler == "precomputed":
        candidate = config.corpus_dir / f"x{ratio}" / path.name
        if not candidate.is_file():
            raise FileNotFoundError(
                f"precomputed low-res input missing: {candidate}"
            )
        return load_image(candidate)
    return downsample(reference, ratio, config.downsampler)


def _score(reference: GrayImage, output: GrayImage):
    return mse(reference, output), psnr(reference, output), ssim(reference, output)


def _scoring_threads() -> int:
    raw = os.environ.get("TETRA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"TETRA_THREADS must be an integer, got {raw!r}")


def run_benchmark(config: BenchConfig):
    """Run the full protocol. Returns (records, aggregates).

    Records are ordered by (image, ratio, algorithm) with images sorted by
    filename and ratios/algorithms in config order, so repeat runs produce
    identical rows apart from the timings.
    """
    files = discover_corpus(config.corpus_dir)
    threads = _scoring_threads()
    pool = (
        concurrent.futures.ThreadPoolExecutor(max_workers=threads)
        if threads > 1
        else None
    )
    records = []
    images_dir = config.output_dir / "images"
    if config.save_images:
        images_dir.mkdir(parents=True, exist_ok=True)
    try:
        for path in files:
            reference = load_image(path)
            image_id = path.stem
            pending = []  # (algorithm, ratio, elapsed, output)
            for ratio in config.ratios:
                low = _lowres_input(config, path, reference, ratio)
                for tag in config.algorithms:
                    elapsed, output = _timed_resize(
                        low, ratio, tag, config.repetitions, config.intensity_domain
                    )
                    if (output.width, output.height) != (
                        reference.width,
                        reference.height,
                    ):
                        raise ValueError(
                            f"{image_id}: upscaled size {output.width}x{output.height}"
                            f" != reference {reference.width}x{reference.height}"
                        )
                    pending.append((tag, ratio, elapsed, output))
            # All timing for this image is done; score (possibly in parallel).
            if pool is not None:
                scores = list(
                    pool.map(lambda item: _score(reference, item[3]), pending)
                )
            else:
                scores = [_score(reference, item[3]) for item in pending]
            for (tag, ratio, elapsed, output), (m, p, s) in zip(pending, scores):
                records.append(
                    BenchRecord(image_id, tag, ratio, m, p, s, elapsed)
                )
                if config.save_images:
                    save_pgm(output, images_dir / f"{image_id}_{tag}_x{ratio}.pgm")
    finally:
        if pool is not None:
            pool.shutdown()
    return records, aggregate(records, config.algorithms, config.ratios)


def aggregate(records, algorithms=None, ratios=None) -> list:
    """Per-(algorithm, ratio) means, in the given presentation order."""
    if algorithms is None:
        algorithms = list(dict.fromkeys(r.algorithm for r in records))
    if ratios is None:
        ratios = sorted({r.ratio for r in records})
    rows = []
    for tag in algorithms:
        for ratio in ratios:
            group = [r for r in records if r.algorithm == tag and r.ratio == ratio]
            if not group:
                continue
            n = len(group)
            rows.append(
                AggregateRow(
                    algorithm=tag,
                    ratio=ratio,
                    mean_mse=sum(r.mse for r in group) / n,
                    mean_psnr=sum(r.psnr for r in group) / n,
                    mean_ssim=sum(r.ssim for r in group) / n,
                    mean_elapsed_s=sum(r.elapsed_s for r in group) / n,
                    image_count=n,
                )
            )
    return rows


def write_records_csv(records, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORDS_HEADER)
        for r in records:
            writer.writerow(
                [r.image_id, r.algorithm, r.ratio, r.mse, r.psnr, r.ssim, r.elapsed_s]
            )


def write_aggregates_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(AGGREGATES_HEADER)
        for a in rows:
            writer.writerow(
                [
                    a.algorithm,
                    a.ratio,
                    a.mean_mse,
                    a.mean_psnr,
                    a.mean_ssim,
                    a.mean_elapsed_s,
                    a.image_count,
                ]
            )


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def write_summary_json(config: BenchConfig, rows, path) -> None:
    payload = {
        "config": {
            "corpus_dir": str(config.corpus_dir),
            "output_dir": str(config.output_dir),
            "ratios": list(config.ratios),
            "algorithms": list(config.algorithms),
            "intensity_domain": config.intensity_domain,
            "downsampler": config.downsampler,
            "repetitions": config.repetitions,
        },
        "aggregates": [
            {
                "algorithm": a.algorithm,
                "ratio": a.ratio,
                "mean_mse": _json_safe(a.mean_mse),
                "mean_psnr": _json_safe(a.mean_psnr),
                "mean_ssim": _json_safe(a.mean_ssim),
                "mean_elapsed_s": _json_safe(a.mean_elapsed_s),
                "image_count": a.image_count,
            }
            for a in rows
        ],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
