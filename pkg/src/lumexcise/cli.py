"""Command-line frontend: inpaint, metrics, sweep, and batch commands.

Exit codes: 0 success, 2 I/O or dimension errors, 3 inpainting cannot
proceed (all-unknown mask or no candidate window), 4 empty metrics region,
5 batch runs with per-image failures.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from .core import Mask, RgbImage, to_grayscale
from .engine import EngineConfig, MODES, inpaint
from .errors import AllUnknown, EmptyRegion, NoCandidate
from .maskgen import DetectorConfig, detect_highlights
from .metrics import RegionStats, region_stats
from .pngio import load_image, load_mask, save_image

CSV_HEADER = ["input", "mode", "beta", "std", "mean", "cov", "iterations", "elapsed_seconds"]
DEFAULT_SWEEP_BETAS = [i / 10 for i in range(1, 10)]
DEFAULT_BATCH_MODES = ["criminisi", "proposed"]
THREADS_ENV = "LUMEXCISE_THREADS"

EXIT_OK = 0
EXIT_IO = 2
EXIT_INPAINT = 3
EXIT_EMPTY_REGION = 4
EXIT_BATCH_FAILURES = 5


@dataclass(frozen=True)
class RunRecord:
    """One inpainting run: inputs, configuration, and result statistics."""

    input_path: str
    mask_path: str
    mode: str
    beta: float
    std: Optional[float]
    mean: Optional[float]
    cov: Optional[float]
    iterations: int
    elapsed_seconds: float

    def csv_row(self) -> list[str]:
        return [
            self.input_path,
            self.mode,
            _cell(self.beta),
            _cell(self.std),
            _cell(self.mean),
            _cell(self.cov),
            _cell(self.iterations),
            _cell(self.elapsed_seconds),
        ]


def _cell(value) -> str:
    return "" if value is None else str(value)


def _fail(message: str, code: int) -> int:
    print(f"lumexcise: error: {message}", file=sys.stderr)
    return code


def _engine_config(args, mode: Optional[str] = None, beta: Optional[float] = None) -> EngineConfig:
    """Engine configuration from an optional JSON config file plus flags;
    explicit flags win over file values."""
    merged: dict = {}
    config_path = getattr(args, "config", None)
    if config_path:
        with open(config_path, "r", encoding="utf-8") as fh:
            merged.update(json.load(fh))
    for key, value in (
        ("mode", mode if mode is not None else getattr(args, "mode", None)),
        ("beta", beta if beta is not None else getattr(args, "beta", None)),
        ("search_radius", getattr(args, "search_radius", None)),
    ):
        if value is not None:
            merged[key] = value
    return EngineConfig(**merged)


def _run_one(img: RgbImage, mask: Mask, cfg: EngineConfig, input_path: str, mask_path: str) -> tuple[RgbImage, RunRecord]:
    result, report = inpaint(img, mask, cfg)
    if mask.unknown_count > 0:
        stats = region_stats(to_grayscale(result), mask)
        std, mean, cov = stats.std, stats.mean, stats.cov
    else:
        std = mean = cov = None
    record = RunRecord(
        input_path=input_path,
        mask_path=mask_path,
        mode=cfg.mode,
        beta=cfg.beta,
        std=std,
        mean=mean,
        cov=cov,
        iterations=report.iterations,
        elapsed_seconds=report.elapsed,
    )
    return result, record


def _load_pair(image_path: str, mask_path: str) -> tuple[RgbImage, Mask]:
    img = load_image(image_path)
    mask = load_mask(mask_path)
    if (img.width, img.height) != (mask.width, mask.height):
        raise ValueError(
            f"image {image_path} is {img.width}x{img.height} but mask {mask_path}"
            f" is {mask.width}x{mask.height}"
        )
    return img, mask


def cmd_inpaint(args) -> int:
    try:
        if args.auto_mask:
            img = load_image(args.image)
            mask = detect_highlights(img, DetectorConfig())
        elif args.mask is None:
            return _fail("a mask path is required unless --auto-mask is given", EXIT_IO)
        else:
            img, mask = _load_pair(args.image, args.mask)
        cfg = _engine_config(args)
        result, record = _run_one(img, mask, cfg, args.image, args.mask or "<auto>")
        save_image(result, args.output)
    except (AllUnknown, NoCandidate) as exc:
        return _fail(str(exc), EXIT_INPAINT)
    except (OSError, ValueError) as exc:
        return _fail(str(exc), EXIT_IO)
    print(json.dumps(asdict(record)))
    return EXIT_OK


def cmd_metrics(args) -> int:
    try:
        img, mask = _load_pair(args.result, args.mask)
        stats = region_stats(to_grayscale(img), mask)
    except EmptyRegion as exc:
        return _fail(str(exc), EXIT_EMPTY_REGION)
    except (OSError, ValueError) as exc:
        return _fail(str(exc), EXIT_IO)
    print(json.dumps(asdict(stats)))
    if args.csv:
        _append_metrics_row(args.csv, args.result, stats)
    return EXIT_OK


def _append_metrics_row(path: str, input_path: str, stats: RegionStats) -> None:
    new_file = not os.path.exists(path)
    with open(path, "a", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        if new_file:
            writer.writerow(CSV_HEADER)
        writer.writerow(
            [input_path, "", "", _cell(stats.std), _cell(stats.mean), _cell(stats.cov), "", ""]
        )


def _parse_betas(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip() != ""]


def cmd_sweep(args) -> int:
    betas = _parse_betas(args.betas) if args.betas else DEFAULT_SWEEP_BETAS
    try:
        img, mask = _load_pair(args.image, args.mask)
    except (OSError, ValueError) as exc:
        return _fail(str(exc), EXIT_IO)

    out = open(args.csv, "w", newline="", encoding="utf-8") if args.csv else sys.stdout
    writer = csv.writer(out)
    writer.writerow(CSV_HEADER)
    first_failure = EXIT_OK
    try:
        for beta in betas:
            try:
                cfg = _engine_config(args, beta=beta)
                _, record = _run_one(img, mask, cfg, args.image, args.mask)
                writer.writerow(record.csv_row())
            except (AllUnknown, NoCandidate) as exc:
                print(f"lumexcise: beta={beta}: {exc}", file=sys.stderr)
                writer.writerow([args.image, args.mode or "proposed", _cell(beta), "", "", "", "", ""])
                if first_failure == EXIT_OK:
                    first_failure = EXIT_INPAINT
            except (OSError, ValueError) as exc:
                print(f"lumexcise: beta={beta}: {exc}", file=sys.stderr)
                writer.writerow([args.image, args.mode or "proposed", _cell(beta), "", "", "", "", ""])
                if first_failure == EXIT_OK:
                    first_failure = EXIT_IO
    finally:
        if out is not sys.stdout:
            out.close()
    return first_failure


def _discover_pairs(directory: Path, mask_dir: Optional[Path]) -> list[tuple[Path, Path]]:
    pairs = []
    for image_path in sorted(directory.glob("*.png")):
        if image_path.stem.endswith("_mask"):
            continue
        mask_home = mask_dir if mask_dir is not None else directory
        mask_path = mask_home / f"{image_path.stem}_mask.png"
        if mask_path.exists():
            pairs.append((image_path, mask_path))
    return pairs


def _batch_workers(n_jobs: int) -> int:
    cap = os.environ.get(THREADS_ENV)
    if cap is not None:
        limit = max(1, int(cap))
    else:
        limit = os.cpu_count() or 1
    return max(1, min(n_jobs, limit))


def _batch_job(image_path: Path, mask_path: Path, cfg: EngineConfig, out_dir: Path):
    img, mask = _load_pair(str(image_path), str(mask_path))
    result, record = _run_one(img, mask, cfg, str(image_path), str(mask_path))
    save_image(result, out_dir / f"{image_path.stem}_{cfg.mode}.png")
    return record


def cmd_batch(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        return _fail(f"not a directory: {directory}", EXIT_IO)
    mask_dir = Path(args.mask_dir) if args.mask_dir else None
    pairs = _discover_pairs(directory, mask_dir)
    if not pairs:
        return _fail(f"no <name>.png + <name>_mask.png pairs under {directory}", EXIT_IO)
    modes = [m.strip() for m in args.modes.split(",") if m.strip()]
    for mode in modes:
        if mode not in MODES:
            return _fail(f"unknown mode {mode!r}", EXIT_IO)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    jobs = [
        (image_path, mask_path, _engine_config(args, mode=mode))
        for image_path, mask_path in pairs
        for mode in modes
    ]
    records: list[Optional[RunRecord]] = [None] * len(jobs)
    failures: list[str] = []
    with ThreadPoolExecutor(max_workers=_batch_workers(len(jobs))) as pool:
        futures = [
            pool.submit(_batch_job, image_path, mask_path, cfg, out_dir)
            for image_path, mask_path, cfg in jobs
        ]
        for i, future in enumerate(futures):
            try:
                records[i] = future.result()
            except Exception as exc:
                image_path, _, cfg = jobs[i]
                failures.append(f"{image_path} [{cfg.mode}]: {exc}")

    done = [r for r in records if r is not None]
    with open(out_dir / "records.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for record in done:
            writer.writerow(record.csv_row())

    averages = []
    for mode in modes:
        rows = [r for r in done if r.mode == mode and r.cov is not None]
        if rows:
            averages.append(
                {
                    "mode": mode,
                    "images": len(rows),
                    "avg_std": sum(r.std for r in rows) / len(rows),
                    "avg_mean": sum(r.mean for r in rows) / len(rows),
                    "avg_cov": sum(r.cov for r in rows) / len(rows),
                }
            )
    with open(out_dir / "averages.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["mode", "images", "avg_std", "avg_mean", "avg_cov"])
        for row in averages:
            writer.writerow([row["mode"], row["images"], row["avg_std"], row["avg_mean"], row["avg_cov"]])
    with open(out_dir / "report.json", "w", encoding="utf-8") as fh:
        json.dump(
            {"records": [asdict(r) for r in done], "averages": averages}, fh, indent=2
        )

    for failure in failures:
        print(f"lumexcise: failed: {failure}", file=sys.stderr)
    return EXIT_BATCH_FAILURES if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lumexcise",
        description="Remove specular highlights from endoscopy-style images by exemplar-based inpainting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_engine_flags(p, with_mode=True, with_beta=True):
        if with_mode:
            p.add_argument("--mode", choices=MODES, default=None, help="fill strategy (default: proposed)")
        if with_beta:
            p.add_argument("--beta", type=float, default=None, help="structure-term weight in [0, 1] (default: 0.8)")
        p.add_argument("--search-radius", type=float, default=None, help="restrict candidate centers to this distance")
        p.add_argument("--config", default=None, help="JSON file with engine settings; flags override it")

    p_inpaint = sub.add_parser("inpaint", help="fill the masked highlight region of one image")
    p_inpaint.add_argument("image", help="input PNG")
    p_inpaint.add_argument("mask", nargs="?", default=None, help="mask PNG (>=128 marks the highlight)")
    p_inpaint.add_argument("-o", "--output", required=True, help="output PNG path")
    p_inpaint.add_argument("--auto-mask", action="store_true", help="detect the highlight mask heuristically")
    add_engine_flags(p_inpaint)
    p_inpaint.set_defaults(func=cmd_inpaint)

    p_metrics = sub.add_parser("metrics", help="region statistics of a result image over a mask")
    p_metrics.add_argument("result", help="result PNG")
    p_metrics.add_argument("mask", help="original mask PNG")
    p_metrics.add_argument("--csv", default=None, help="append a CSV row to this file")
    p_metrics.set_defaults(func=cmd_metrics)

    p_sweep = sub.add_parser("sweep", help="run a list of beta weights and emit a CSV")
    p_sweep.add_argument("image", help="input PNG")
    p_sweep.add_argument("mask", help="mask PNG")
    p_sweep.add_argument("--betas", default=None, help="comma-separated beta list (default: 0.1..0.9)")
    p_sweep.add_argument("--csv", default=None, help="write rows to this file instead of stdout")
    add_engine_flags(p_sweep, with_beta=False)
    p_sweep.set_defaults(func=cmd_sweep)

    p_batch = sub.add_parser("batch", help="process a directory of image + sibling-mask pairs")
    p_batch.add_argument("directory", help="directory of <name>.png + <name>_mask.png pairs")
    p_batch.add_argument("--out-dir", required=True, help="directory for results and reports")
    p_batch.add_argument("--mask-dir", default=None, help="look up masks in this directory instead")
    p_batch.add_argument("--modes", default=",".join(DEFAULT_BATCH_MODES), help="comma-separated mode list")
    add_engine_flags(p_batch, with_mode=False)
    p_batch.set_defaults(func=cmd_batch)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
