"""Born-approximation echo synthesis for point scatterers above a mirror wall.

The one-way Green function is G = G0(r_A, x) + rho * G0(mirror(r_A), x).  Its
square expands into the three round-trip paths: A**2 (antenna-target-antenna),
2*A*B (one wall bounce, either order) and B**2 (wall-target-wall).

Array convention: Green-function helpers take points of shape (..., 2) and
angular frequencies of shape (F,) and return shape (..., F).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .scene import Point2, Scene, Target, mirror, validate_scene
from .specfun import hankel0
from .waveform import FrequencyGrid, Pulse, spectrum


class CoincidentPointsError(ValueError):
    """Green function requested between coincident points."""


class PathId(enum.Enum):
    DIRECT = 1
    ONE_BOUNCE = 2
    TWO_BOUNCE = 3


PATH_WEIGHTS = {PathId.DIRECT: 1, PathId.ONE_BOUNCE: 2, PathId.TWO_BOUNCE: 1}


@dataclass(frozen=True, eq=False)
class SpectrumVector:
    values: np.ndarray
    grid: FrequencyGrid

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.n_total,):
            raise ValueError(f"spectrum length {v.shape} does not match N={self.grid.n_total}")
        if not np.all(np.isfinite(v)):
            raise ValueError("spectrum contains non-finite samples")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)


def _distance(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.hypot(a[..., 0] - b[..., 0], a[..., 1] - b[..., 1])


def g0(omega, a, b, speed: float = 2.9979e11):
    """2-D scalar Green function (j/4) H0(omega |a - b| / c)."""
    d = _distance(a, b)
    if np.any(d == 0):
        raise CoincidentPointsError("Green function is singular for coincident points")
    w = np.asarray(omega, dtype=float)
    arg = np.multiply.outer(d, w) / speed
    return 0.25j * hankel0(arg)


def one_way_terms(omega, scene: Scene, x):
    """Return (A, B): direct and wall-image one-way Green functions at ``x``."""
    a = g0(omega, scene.antenna, x, scene.speed)
    if scene.reflection_coeff == 0:
        return a, np.zeros_like(a)
    b = scene.reflection_coeff * g0(omega, mirror(scene.antenna), x, scene.speed)
    return a, b


def _combine(path: PathId, a, b):
    if path is PathId.DIRECT:
        return a * a
    if path is PathId.ONE_BOUNCE:
        return a * b
    return b * b


def path_green_sq(omega, scene: Scene, path: PathId, x):
    """Two-way Green factor for a single path: A*A, A*B or B*B."""
    a, b = one_way_terms(omega, scene, x)
    return _combine(path, a, b)


def total_green_sq(omega, scene: Scene, x):
    """(A + B)**2, i.e. direct + 2 * one-bounce + two-bounce."""
    a, b = one_way_terms(omega, scene, x)
    s = a + b
    return s * s


def scatter_points(target: Target, antenna: Point2, grid: FrequencyGrid, speed: float):
    """Point-scatterer surrogate for ``target``: (points (K, 2), weights (K,)).

    A zero-radius target is one point. A finite cylinder becomes
    max(8, ceil(2 pi r / (lambda_min / 4))) equal-weight points spread over the
    half of its rim that faces the antenna. This is a geometric stand-in only:
    no creeping waves, no shadowing.
    """
    c = np.array(target.center, dtype=float)
    if target.radius == 0:
        return c[None, :], np.array([float(target.contrast)])
    lam_min = 2.0 * math.pi * speed / float(grid.omegas()[-1])
    n = max(8, math.ceil(2.0 * math.pi * target.radius / (lam_min / 4.0)))
    facing = math.atan2(antenna[1] - c[1], antenna[0] - c[0])
    theta = facing + math.pi * ((np.arange(n) + 0.5) / n - 0.5)
    pts = c + target.radius * np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    return pts, np.full(n, target.contrast / n)


def synthesize(scene: Scene, grid: FrequencyGrid, pulse: Pulse, matched: bool = True) -> SpectrumVector:
    """Received spectrum S_n for every target in ``scene``.

    ``matched=True`` gives the matched-filtered form w^2 G^2 |S_T|^2;
    ``matched=False`` gives the raw Born form w^2 G^2 S_T.
    """
    validate_scene(scene)
    w = grid.omegas()
    st = spectrum(pulse, w)
    drive = w**2 * (np.abs(st) ** 2 if matched else st)
    values = np.zeros(grid.n_total, dtype=complex)
    for target in scene.targets:
        pts, weights = scatter_points(target, scene.antenna, grid, scene.speed)
        g2 = total_green_sq(w, scene, pts)
        values += drive * (weights @ g2)
    return SpectrumVector(values, grid)


def add_noise(sv: SpectrumVector, snr_db: float, seed: int) -> SpectrumVector:
    """Add circular complex Gaussian noise at ``snr_db`` relative to mean signal power.

    ``snr_db = inf`` returns the input unchanged.
    """
    if math.isinf(snr_db) and snr_db > 0:
        return sv
    if math.isnan(snr_db):
        raise ValueError("snr_db must not be NaN")
    power = float(np.mean(np.abs(sv.values) ** 2))
    sigma = math.sqrt(power / 10.0 ** (snr_db / 10.0) / 2.0)
    rng = np.random.default_rng(seed)
    noise = sigma * (rng.standard_normal(len(sv)) + 1j * rng.standard_normal(len(sv)))
    return SpectrumVector(sv.values + noise, sv.grid)
