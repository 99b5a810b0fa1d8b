"""CSV / PGM serialisation for spectra, SVD factors, images and result tables.

Floats are written with 17 significant digits so that re-reading is lossless
and identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile
from pathlib import Path
from typing import Iterable

import numpy as np

from .forward import SpectrumVector
from .imaging import ImageGrid
from .metrics import EvalReport
from .scene import Point2
from .subspace import SvdResult
from .waveform import FrequencyGrid

IMAGE_HEADER = "# origin_x,origin_y,pixel_mm,width,height"
RESULT_FIELDS = ["method", "r_mm", "error_mm", "h4", "est_x_mm", "est_y_mm"]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def atomic_write(path, data: bytes | str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"newline": ""})) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# spectrum ----------------------------------------------------------------

def spectrum_to_csv(sv: SpectrumVector) -> str:
    w = sv.grid.omegas()
    lines = ["n,omega_rad_s,re,im"]
    for n, (om, s) in enumerate(zip(w, sv.values), start=1):
        lines.append(f"{n},{fmt(om)},{fmt(s.real)},{fmt(s.imag)}")
    return "\n".join(lines) + "\n"


def spectrum_from_csv(text: str, grid: FrequencyGrid | None = None) -> SpectrumVector:
    """Parse a spectrum file; the grid is inferred from the omega column unless given."""
    rows = list(csv.reader(io.StringIO(text)))
    body = [r for r in rows[1:] if r]
    n = np.array([int(r[0]) for r in body])
    om = np.array([float(r[1]) for r in body])
    vals = np.array([complex(float(r[2]), float(r[3])) for r in body])
    if not np.array_equal(n, np.arange(1, len(body) + 1)):
        raise ValueError("spectrum rows must be numbered 1..N in order")
    if grid is None:
        L = math.isqrt(len(body))
        if len(body) < 2:
            raise ValueError("spectrum needs at least two samples")
        dw = om[1] - om[0]
        grid = FrequencyGrid(om[0] - dw, dw, len(body), L)
    if not np.allclose(om, grid.omegas(), rtol=1e-9, atol=0):
        raise ValueError("omega column does not match the frequency grid")
    return SpectrumVector(vals, grid)


# svd -----------------------------------------------------------------------

def svd_to_csv(r: SvdResult) -> str:
    lines = ["i,sigma,component,u_re,u_im,v_re,v_im"]
    for i in range(r.u.shape[1]):
        for k in range(r.u.shape[0]):
            u, v = r.u[k, i], r.v[k, i]
            lines.append(",".join([str(i + 1), fmt(r.s[i]), str(k + 1),
                                   fmt(u.real), fmt(u.imag), fmt(v.real), fmt(v.imag)]))
    return "\n".join(lines) + "\n"


# images ----------------------------------------------------------------------

def image_to_csv(img: ImageGrid) -> str:
    out = [IMAGE_HEADER,
           "# " + ",".join([fmt(img.origin[0]), fmt(img.origin[1]), fmt(img.pixel_size),
                            str(img.width), str(img.height)])]
    for row in np.asarray(img.intensities):
        out.append(",".join(fmt(v) for v in row))
    return "\n".join(out) + "\n"


def image_from_csv(text: str) -> ImageGrid:
    lines = text.splitlines()
    if lines[0].strip() != IMAGE_HEADER:
        raise ValueError("not an image CSV (missing header)")
    ox, oy, ps, w, h = lines[1].lstrip("# ").split(",")
    w, h = int(w), int(h)
    vals = np.array([[float(v) for v in ln.split(",")] for ln in lines[2:2 + h]])
    if vals.shape != (h, w):
        raise ValueError(f"image body has shape {vals.shape}, header says {(h, w)}")
    return ImageGrid(Point2(float(ox), float(oy)), float(ps), w, h, vals)


def image_to_pgm(img: ImageGrid) -> bytes:
    """16-bit binary PGM, top row = largest y."""
    vals = np.clip(np.asarray(img.intensities), 0.0, 1.0)
    q = np.rint(vals[::-1] * 65535.0).astype(">u2")
    header = f"P5\n{img.width} {img.height}\n65535\n".encode("ascii")
    return header + q.tobytes()


def write_image(img: ImageGrid, stem) -> list[Path]:
    stem = Path(stem)
    csv_path, pgm_path = stem.with_suffix(".csv"), stem.with_suffix(".pgm")
    atomic_write(csv_path, image_to_csv(img))
    atomic_write(pgm_path, image_to_pgm(img))
    return [csv_path, pgm_path]


# result tables -----------------------------------------------------------------

def report_row(rep: EvalReport) -> dict:
    return {"method": rep.method, "r_mm": fmt(rep.radius_mm), "error_mm": fmt(rep.error_mm),
            "h4": fmt(rep.sharpness_h4), "est_x_mm": fmt(rep.estimated_position[0]),
            "est_y_mm": fmt(rep.estimated_position[1])}


def results_to_csv(reports: Iterable[EvalReport]) -> str:
    buf = io.StringIO()
    wr = csv.DictWriter(buf, RESULT_FIELDS, lineterminator="\n")
    wr.writeheader()
    for rep in reports:
        wr.writerow(report_row(rep))
    return buf.getvalue()


def append_results(path, reports: Iterable[EvalReport]) -> None:
    path = Path(path)
    new = not path.exists() or path.stat().st_size == 0
    with open(path, "a", newline="") as fh:
        wr = csv.DictWriter(fh, RESULT_FIELDS, lineterminator="\n")
        if new:
            wr.writeheader()
        for rep in reports:
            wr.writerow(report_row(rep))


def read_results(path) -> list[dict]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        for k in ("r_mm", "error_mm", "h4", "est_x_mm", "est_y_mm"):
            if k in r and r[k] != "":
                r[k] = float(r[k])
    return rows
