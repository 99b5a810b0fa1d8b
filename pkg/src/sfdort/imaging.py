"""Image formation: time-reversal backprojection and noise-subspace images.

Rasters are addressed row-major with row 0 at the lowest y. Pixel (row, col)
has its centre at origin + ((col + 0.5) * pixel, (row + 0.5) * pixel).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .forward import PathId, SpectrumVector, _combine, _distance, one_way_terms
from .scene import Point2, Scene, mirror
from .subspace import NoiseSubspace
from .waveform import FrequencyGrid, Pulse, coarse_indices, fine_indices, spectrum

ALL_PATHS = (PathId.DIRECT, PathId.ONE_BOUNCE, PathId.TWO_BOUNCE)
CHUNK = 4096


class DegenerateImageError(ValueError):
    pass


@dataclass(frozen=True)
class RasterSpec:
    origin: Point2 = Point2(-2.5, -2.5)
    pixel_size: float = 5.0
    width: int = 241
    height: int = 301

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("raster must have at least one pixel")
        if not self.pixel_size > 0:
            raise ValueError("pixel_size must be positive")

    @classmethod
    def spanning(cls, x_range, y_range, pixel_size):
        """Raster whose pixel centres run over the closed ranges in steps of ``pixel_size``."""
        w = int(round((x_range[1] - x_range[0]) / pixel_size)) + 1
        h = int(round((y_range[1] - y_range[0]) / pixel_size)) + 1
        half = 0.5 * pixel_size
        return cls(Point2(x_range[0] - half, y_range[0] - half), pixel_size, w, h)

    def centers(self) -> np.ndarray:
        """Pixel centres, shape (height, width, 2)."""
        xs = self.origin[0] + (np.arange(self.width) + 0.5) * self.pixel_size
        ys = self.origin[1] + (np.arange(self.height) + 0.5) * self.pixel_size
        gx, gy = np.meshgrid(xs, ys)
        return np.stack([gx, gy], axis=-1)


@dataclass(frozen=True, eq=False)
class ImageGrid:
    origin: Point2
    pixel_size: float
    width: int
    height: int
    intensities: np.ndarray
    excluded: np.ndarray | None = None
    flags: tuple[str, ...] = field(default=())

    @property
    def raster(self) -> RasterSpec:
        return RasterSpec(Point2(*self.origin), self.pixel_size, self.width, self.height)

    def same_raster(self, other: "ImageGrid") -> bool:
        return (tuple(self.origin) == tuple(other.origin) and self.pixel_size == other.pixel_size
                and self.width == other.width and self.height == other.height)


@dataclass(frozen=True, eq=False)
class SteeringVector:
    values: np.ndarray
    path: PathId
    kind: str


def _image(raster: RasterSpec, values: np.ndarray, excluded: np.ndarray, flags=()) -> ImageGrid:
    vals = np.where(excluded, 0.0, values).reshape(raster.height, raster.width)
    peak = vals.max() if vals.size else 0.0
    if peak > 0:
        vals = vals / peak
    else:
        flags = tuple(flags) + ("zero-image",)
    return ImageGrid(raster.origin, raster.pixel_size, raster.width, raster.height,
                     vals, excluded.reshape(raster.height, raster.width), tuple(flags))


def _base_mask(scene: Scene, pts: np.ndarray) -> np.ndarray:
    """Pixels on or below the wall, or on the antenna."""
    return (pts[:, 1] <= 0) | (_distance(pts, scene.antenna) == 0)


def path_separation_mask(scene: Scene, grid: FrequencyGrid, pts: np.ndarray, cells: float) -> np.ndarray:
    """True where direct and two-bounce delays differ by less than ``cells`` delay cells.

    One cell is 1 / (N * df), the delay resolution of the full band. Close to
    the wall the P path signatures collapse onto one another and the P-path
    steering model becomes degenerate.
    """
    if cells <= 0:
        return np.zeros(len(pts), dtype=bool)
    dd = _distance(pts, mirror(scene.antenna)) - _distance(pts, scene.antenna)
    df = grid.delta_omega / (2.0 * np.pi)
    return 2.0 * dd / scene.speed < cells / (grid.n_total * df)


def _sample_omegas(grid: FrequencyGrid, kind: str) -> np.ndarray:
    if kind == "coarse":
        idx = coarse_indices(grid)
    elif kind == "fine":
        idx = fine_indices(grid)
    else:
        raise ValueError(f"kind must be 'coarse' or 'fine', got {kind!r}")
    return grid.omega0 + grid.delta_omega * np.asarray(idx, dtype=float)


def steering_matrices(scene: Scene, grid: FrequencyGrid, pulse: Pulse, pts, kind: str,
                      paths: Sequence[PathId] = ALL_PATHS, matched: bool = False) -> list[np.ndarray]:
    """Per-path steering vectors w^2 G_p^2(w, r_A, x) S_T(w), one (M, L) array per path.

    ``matched=True`` uses |S_T|^2 in place of S_T, matching synthesized data exactly.
    """
    w = _sample_omegas(grid, kind)
    st = spectrum(pulse, w)
    drive = w**2 * (np.abs(st) ** 2 if matched else st)
    a, b = one_way_terms(w, scene, np.asarray(pts, dtype=float))
    return [drive * _combine(p, a, b) for p in paths]


def steering(scene: Scene, grid: FrequencyGrid, pulse: Pulse, p: PathId, x: Point2, kind: str,
             matched: bool = False) -> SteeringVector:
    (vals,) = steering_matrices(scene, grid, pulse, np.asarray(x, dtype=float)[None, :], kind, (p,), matched)
    return SteeringVector(vals[0], p, kind)


def music_denominator(basis: np.ndarray, steerings: Sequence[np.ndarray], conjugate: bool = False) -> np.ndarray:
    """sum_p sum_i |b_i^H g_p|^2 / |g_p|^2 for every row of each (M, L) steering array.

    ``conjugate=True`` projects conj(g_p) instead; right singular vectors of
    K_FF span the conjugated fine-frequency signatures. Rows where some g_p is
    zero come back as NaN.
    """
    m = steerings[0].shape[0]
    total = np.zeros(m)
    for g in steerings:
        if conjugate:
            g = g.conj()
        norm2 = np.sum(np.abs(g) ** 2, axis=1)
        proj = np.sum(np.abs(g @ basis.conj()) ** 2, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            total += np.where(norm2 > 0, proj / np.where(norm2 > 0, norm2, 1.0), np.nan)
    return total


def pseudospectrum(ns: NoiseSubspace, side: str, scene: Scene, grid: FrequencyGrid, pulse: Pulse,
                   pts, paths: Sequence[PathId] = ALL_PATHS, matched_steering: bool = False) -> np.ndarray:
    """Unnormalised left/right image values 1 / denominator at arbitrary points (M, 2)."""
    if side == "left":
        basis, kind, conj = ns.left_basis, "coarse", False
    elif side == "right":
        basis, kind, conj = ns.right_basis, "fine", True
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    out = np.empty(len(pts))
    for lo in range(0, len(pts), CHUNK):
        chunk = pts[lo:lo + CHUNK]
        den = music_denominator(basis, steering_matrices(scene, grid, pulse, chunk, kind, paths, matched_steering), conj)
        with np.errstate(divide="ignore", invalid="ignore"):
            out[lo:lo + CHUNK] = 1.0 / den
    return out


def subspace_image(ns: NoiseSubspace, side: str, scene: Scene, grid: FrequencyGrid, pulse: Pulse,
                   raster: RasterSpec, paths: Sequence[PathId] = ALL_PATHS, matched_steering: bool = False,
                   path_separation: float = 1.0) -> ImageGrid:
    """Left (coarse steering, U noise basis) or right (fine steering, V noise basis) image.

    Excluded pixels: on/below the wall, at the antenna, any zero-norm steering
    vector, and (for multi-path models) the wall strip where path delays are
    closer than ``path_separation`` delay cells.
    """
    if ns.size < 1:
        raise ValueError("noise subspace is empty")
    pts = raster.centers().reshape(-1, 2)
    excluded = _base_mask(scene, pts)
    if len(paths) > 1:
        excluded |= path_separation_mask(scene, grid, pts, path_separation)
    vals = np.zeros(len(pts))
    keep = ~excluded
    vals[keep] = pseudospectrum(ns, side, scene, grid, pulse, pts[keep], paths, matched_steering)
    bad = ~np.isfinite(vals)
    flags = ()
    if np.any(bad):
        excluded |= bad
        flags = ("degenerate-pixels",)
    if np.all(excluded):
        raise DegenerateImageError("every pixel of the raster is degenerate")
    return _image(raster, vals, excluded, flags)


def tr_image(sv: SpectrumVector, scene: Scene, grid: FrequencyGrid, pulse: Pulse, raster: RasterSpec,
             normalize_steering: bool = True) -> ImageGrid:
    """Time-reversal image |sum_n w_n^2 S_n^* G^2(w_n, r_A, x)|.

    With ``normalize_steering`` each pixel is divided by the norm of its
    backprojection kernel w_n^2 G^2(w_n, r_A, x); without it the 1/d growth of
    G^2 makes the pixels next to the antenna dominate the image.
    """
    pts = raster.centers().reshape(-1, 2)
    excluded = _base_mask(scene, pts)
    vals = np.zeros(len(pts))
    if not np.any(sv.values):
        return _image(raster, vals, excluded)
    w = grid.omegas()
    weighted = w**2 * np.conj(sv.values)
    idx = np.flatnonzero(~excluded)
    for lo in range(0, len(idx), CHUNK):
        sel = idx[lo:lo + CHUNK]
        g2 = _total(w, scene, pts[sel])
        vals[sel] = np.abs(g2 @ weighted)
        if normalize_steering:
            vals[sel] /= np.linalg.norm(w**2 * g2, axis=1)
    return _image(raster, vals, excluded)


def _total(w, scene, pts):
    a, b = one_way_terms(w, scene, pts)
    s = a + b
    return s * s


def equal_delay_curve(scene: Scene, x: Point2, shifts_mm) -> tuple[np.ndarray, np.ndarray]:
    """Points whose direct and wall-image distances both exceed those of ``x`` by ``s``.

    Along this curve every path length grows by the same amount, so it is a
    one-dimensional round-trip delay axis through ``x`` (delay shift 2 s / c).
    Returns (points (S, 2), valid mask); invalid entries have no real solution
    on the side x >= antenna x or fall on/below the wall.
    """
    ax, ay = scene.antenna
    s = np.asarray(shifts_mm, dtype=float)
    d1 = np.hypot(x[0] - ax, x[1] - ay) + s
    d2 = np.hypot(x[0] - ax, x[1] + ay) + s
    y = (d2**2 - d1**2) / (4.0 * ay)
    with np.errstate(invalid="ignore"):
        dx = np.sqrt(d1**2 - (y - ay) ** 2)
    side = 1.0 if x[0] >= ax else -1.0
    pts = np.stack([ax + side * dx, y], axis=-1)
    valid = np.isfinite(dx) & (d1 > 0) & (y > 0)
    return pts, valid


def dort_image(left: ImageGrid, right: ImageGrid) -> ImageGrid:
    """Pixel-wise product of the left and right images, renormalised to max 1."""
    if not left.same_raster(right):
        raise ValueError("left and right images are on different rasters")
    excl = np.zeros((left.height, left.width), dtype=bool)
    for im in (left, right):
        if im.excluded is not None:
            excl |= im.excluded
    prod = left.intensities * right.intensities
    flags = tuple(f for f in dict.fromkeys(left.flags + right.flags) if f != "zero-image")
    return _image(left.raster, prod.ravel(), excl.ravel(), flags)
