"""Monostatic single-wall scene: antenna above a PEC wall lying on y = 0."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

SPEED_OF_LIGHT_MM = 2.9979e11  # mm/s


class SceneError(ValueError):
    """A scene or target invariant is violated."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Target:
    center: Point2
    radius: float = 0.0
    contrast: float = 1.0


@dataclass(frozen=True)
class Scene:
    antenna: Point2
    targets: tuple[Target, ...] = ()
    reflection_coeff: complex = -1.0
    speed: float = SPEED_OF_LIGHT_MM

    def with_targets(self, *targets: Target) -> "Scene":
        return Scene(self.antenna, tuple(targets), self.reflection_coeff, self.speed)


def reference_scene(radius: float = 0.0) -> Scene:
    """Antenna at (0, 600) mm, one PEC target centred at (600, 750) mm."""
    return Scene(Point2(0.0, 600.0), (Target(Point2(600.0, 750.0), radius, 1.0),))


def mirror(p: Point2) -> Point2:
    """Image of ``p`` in the wall (the x-axis)."""
    return Point2(p[0], -p[1])


def _finite(p) -> bool:
    return math.isfinite(p[0]) and math.isfinite(p[1])


def validate_scene(s: Scene) -> None:
    """Raise ``SceneError`` naming the first violated invariant."""
    if not _finite(s.antenna):
        raise SceneError("antenna", "coordinates must be finite")
    if not s.antenna[1] > 0:
        raise SceneError("antenna", f"must lie above the wall (y > 0), got y={s.antenna[1]}")
    if not abs(s.reflection_coeff) <= 1:
        raise SceneError("reflection_coeff", f"|rho| must be <= 1, got {s.reflection_coeff}")
    if not (math.isfinite(s.speed) and s.speed > 0):
        raise SceneError("speed", "must be finite and positive")
    for i, t in enumerate(s.targets):
        name = f"targets[{i}]"
        if not _finite(t.center):
            raise SceneError(f"{name}.center", "coordinates must be finite")
        if not (math.isfinite(t.radius) and t.radius >= 0):
            raise SceneError(f"{name}.radius", f"must be >= 0, got {t.radius}")
        if not t.center[1] > 0:
            raise SceneError(f"{name}.center", f"must lie above the wall, got y={t.center[1]}")
        if not t.center[1] - t.radius > 0:
            raise SceneError(f"{name}.radius", "target intersects the wall")
        if not math.isfinite(t.contrast):
            raise SceneError(f"{name}.contrast", "must be finite")


def path_lengths(s: Scene, p: Point2) -> tuple[float, float]:
    """Distances from ``p`` to the antenna and to its wall image."""
    a = s.antenna
    d_direct = math.hypot(a[0] - p[0], a[1] - p[1])
    d_mirror = math.hypot(a[0] - p[0], -a[1] - p[1])
    return d_direct, d_mirror
