"""End-to-end pipeline: synthesis, imaging, evaluation and artefact emission."""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import io as sfio
from .config import RunConfig
from .forward import SpectrumVector, add_noise, synthesize
from .imaging import ImageGrid, dort_image, subspace_image, tr_image
from .metrics import EvalReport, mb_sharpness, peak_position, position_error
from .subspace import SvdResult, build_kff, noise_subspace, svd

log = logging.getLogger(__name__)


@dataclass
class RunImages:
    tr: ImageGrid | None = None
    left: ImageGrid | None = None
    right: ImageGrid | None = None
    dort: ImageGrid | None = None
    svd: SvdResult | None = None


def simulate(cfg: RunConfig) -> SpectrumVector:
    sv = synthesize(cfg.scene, cfg.grid, cfg.pulse, matched=cfg.imaging.synthesis == "matched")
    if cfg.noise.enabled:
        sv = add_noise(sv, cfg.noise.snr_db, cfg.noise.seed)
    return sv


def _report(method: str, img: ImageGrid, cfg: RunConfig, runtime: float) -> EvalReport:
    target = cfg.scene.targets[0]
    est = peak_position(img)
    return EvalReport(method, target.radius, est, position_error(est, target.center, target.radius),
                      mb_sharpness(img, cfg.imaging.q), runtime)


def image_spectrum(sv: SpectrumVector, cfg: RunConfig) -> tuple[RunImages, list[EvalReport]]:
    """Form the requested images from ``sv`` and score them against the first target."""
    im = cfg.imaging
    out = RunImages()
    reports = []
    if im.methods in ("tr", "both"):
        t0 = time.perf_counter()
        out.tr = tr_image(sv, cfg.scene, cfg.grid, cfg.pulse, cfg.raster, im.tr_normalize)
        reports.append(_report("tr", out.tr, cfg, time.perf_counter() - t0))
    if im.methods in ("dort", "both"):
        t0 = time.perf_counter()
        out.svd = svd(build_kff(sv))
        ns = noise_subspace(out.svd, im.p_paths, im.k_targets)
        matched = im.steering == "matched"
        kw = dict(matched_steering=matched, path_separation=im.path_separation)
        out.left = subspace_image(ns, "left", cfg.scene, cfg.grid, cfg.pulse, cfg.raster, **kw)
        out.right = subspace_image(ns, "right", cfg.scene, cfg.grid, cfg.pulse, cfg.raster, **kw)
        out.dort = dort_image(out.left, out.right)
        reports.append(_report("dort", out.dort, cfg, time.perf_counter() - t0))
    return out, reports


def write_outputs(out_dir, sv: SpectrumVector | None, images: RunImages, reports) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if sv is not None:
        sfio.atomic_write(out_dir / "spectrum.csv", sfio.spectrum_to_csv(sv))
    if images.svd is not None:
        sfio.atomic_write(out_dir / "svd.csv", sfio.svd_to_csv(images.svd))
    for name in ("tr", "left", "right", "dort"):
        img = getattr(images, name)
        if img is not None:
            sfio.write_image(img, out_dir / f"image_{name}")
    sfio.atomic_write(out_dir / "results.csv", sfio.results_to_csv(reports))
    # wall-clock times live outside the CSV outputs so those stay reproducible
    sfio.atomic_write(out_dir / "timing.json",
                      json.dumps({r.method: r.runtime_s for r in reports}, indent=2) + "\n")


def run_single(cfg: RunConfig, out_dir=None) -> list[EvalReport]:
    cfg.validate()
    if not cfg.scene.targets:
        raise ValueError("scene: at least one target is required")
    sv = simulate(cfg)
    images, reports = image_spectrum(sv, cfg)
    write_outputs(out_dir or cfg.output_dir, sv, images, reports)
    for r in reports:
        log.info("%s r=%g mm: error %.3f mm, h4 %.3e", r.method, r.radius_mm, r.error_mm, r.sharpness_h4)
    return reports


def _sweep_one(args):
    cfg, radius, out_dir = args
    try:
        return radius, run_single(cfg.with_radius(radius), out_dir), None
    except Exception as exc:  # recorded per radius; the sweep carries on
        return radius, [], f"{type(exc).__name__}: {exc}"


def run_sweep(cfg: RunConfig, out_dir=None, jobs: int = 1) -> list[EvalReport]:
    """One run per radius in ``cfg.radii``; writes sweep_results.csv (and sweep_errors.csv)."""
    if not cfg.radii:
        raise ValueError("sweep: radii list is empty")
    root = Path(out_dir or cfg.output_dir)
    root.mkdir(parents=True, exist_ok=True)
    tasks = [(cfg, r, root / f"r_{r:g}mm") for r in cfg.radii]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_sweep_one, tasks))
    else:
        results = [_sweep_one(t) for t in tasks]
    table = root / "sweep_results.csv"
    if table.exists():
        table.unlink()
    reports, errors = [], []
    for radius, reps, err in results:
        sfio.append_results(table, reps)
        reports.extend(reps)
        if err:
            log.error("radius %g mm failed: %s", radius, err)
            errors.append(f"{sfio.fmt(radius)},{err.replace(',', ';')}")
    err_path = root / "sweep_errors.csv"
    if errors:
        sfio.atomic_write(err_path, "r_mm,error\n" + "\n".join(errors) + "\n")
    elif err_path.exists():
        err_path.unlink()
    return reports


def emit_plots(rows, out_dir) -> list[Path]:
    """Write error_vs_radius.csv and h4_vs_radius.csv (one column per method, r ascending)."""
    rows = list(rows)
    if not rows:
        raise ValueError("plots: results table is empty")
    methods = list(dict.fromkeys(r["method"] for r in rows))
    radii = sorted({float(r["r_mm"]) for r in rows})
    lookup = {(r["method"], float(r["r_mm"])): r for r in rows}
    out_dir = Path(out_dir)
    paths = []
    for key, name in (("error_mm", "error_vs_radius.csv"), ("h4", "h4_vs_radius.csv")):
        lines = [",".join(["r_mm"] + methods)]
        for rad in radii:
            cells = [sfio.fmt(rad)]
            for m in methods:
                row = lookup.get((m, rad))
                cells.append("" if row is None else sfio.fmt(float(row[key])))
            lines.append(",".join(cells))
        path = out_dir / name
        sfio.atomic_write(path, "\n".join(lines) + "\n")
        paths.append(path)
    return paths
