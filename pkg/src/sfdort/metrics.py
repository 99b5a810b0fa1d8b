"""Localisation error and Muller-Buffington sharpness."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imaging import ImageGrid
from .scene import Point2


@dataclass(frozen=True)
class EvalReport:
    method: str
    radius_mm: float
    estimated_position: Point2
    error_mm: float
    sharpness_h4: float
    runtime_s: float = 0.0


def peak_position(img: ImageGrid) -> Point2:
    """Centre of the brightest pixel; ties go to the lowest row-major index."""
    vals = np.asarray(img.intensities)
    if vals.size == 0 or not np.any(vals != vals.flat[0]):
        raise ValueError("image is uniform; peak position undefined")
    row, col = divmod(int(np.argmax(vals)), img.width)
    return Point2(img.origin[0] + (col + 0.5) * img.pixel_size,
                  img.origin[1] + (row + 0.5) * img.pixel_size)


def position_error(x_est, x_true, radius: float = 0.0) -> float:
    """Distance from the estimate to the nearest point of a circle of ``radius`` about ``x_true``."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    return abs(math.hypot(x_est[0] - x_true[0], x_est[1] - x_true[1]) - radius)


def mb_sharpness(img, q: float = 4.0, roi: tuple[slice, slice] | None = None) -> float:
    """h_q: mean of q-th powers of max-normalised intensities (smaller is sharper)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    vals = np.asarray(img.intensities if isinstance(img, ImageGrid) else img, dtype=float)
    if roi is not None:
        vals = vals[roi]
    peak = vals.max() if vals.size else 0.0
    if not peak > 0:
        raise ValueError("sharpness undefined for an all-zero image")
    powered = (vals / peak) ** q
    return math.fsum(powered.ravel().tolist()) / vals.size
