"""Run configuration: an INI manifest with one section per concern.

Every float is written with ``repr`` so ``parse_config(serialize_config(c)) == c``.
"""

from __future__ import annotations

import configparser
import io
import math
from dataclasses import dataclass, field, replace

from .imaging import RasterSpec
from .scene import Point2, Scene, Target, validate_scene
from .waveform import FrequencyGrid, Pulse

METHODS = ("tr", "dort", "both")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ImagingOptions:
    methods: str = "both"
    p_paths: int = 3
    k_targets: int = 1
    steering: str = "raw"          # raw: w^2 G_p^2 S_T; matched: w^2 G_p^2 |S_T|^2
    synthesis: str = "matched"     # matched: |S_T|^2; raw: S_T
    tr_normalize: bool = True
    path_separation: float = 1.0   # delay cells; 0 keeps the wall strip
    q: float = 4.0

    def __post_init__(self):
        if self.methods not in METHODS:
            raise ConfigError(f"imaging.methods must be one of {METHODS}, got {self.methods!r}")
        if self.steering not in ("raw", "matched") or self.synthesis not in ("raw", "matched"):
            raise ConfigError("imaging.steering and imaging.synthesis must be 'raw' or 'matched'")
        if self.p_paths < 1 or self.k_targets < 1:
            raise ConfigError("imaging.p_paths and imaging.k_targets must be >= 1")
        if self.q < 1:
            raise ConfigError("imaging.q must be >= 1")


@dataclass(frozen=True)
class NoiseOptions:
    snr_db: float = math.inf   # inf disables noise
    seed: int = 0

    @property
    def enabled(self) -> bool:
        return not (math.isinf(self.snr_db) and self.snr_db > 0)


def _reference_scene() -> Scene:
    return Scene(Point2(0.0, 600.0), (Target(Point2(600.0, 750.0), 0.0, 1.0),))


@dataclass(frozen=True)
class RunConfig:
    scene: Scene = field(default_factory=_reference_scene)
    grid: FrequencyGrid = field(default_factory=FrequencyGrid)
    pulse: Pulse = field(default_factory=Pulse)
    raster: RasterSpec = field(default_factory=RasterSpec)
    imaging: ImagingOptions = field(default_factory=ImagingOptions)
    noise: NoiseOptions = field(default_factory=NoiseOptions)
    output_dir: str = "out"
    radii: tuple[float, ...] = (1.0, 5.0, 20.0, 50.0)

    def with_radius(self, radius: float) -> "RunConfig":
        targets = tuple(replace(t, radius=radius) for t in self.scene.targets)
        return replace(self, scene=self.scene.with_targets(*targets))

    def validate(self) -> None:
        try:
            validate_scene(self.scene)
        except ValueError as exc:
            raise ConfigError(f"scene: {exc}") from exc
        if self.imaging.p_paths * self.imaging.k_targets >= self.grid.L:
            raise ConfigError("imaging: P*K must be smaller than L")


def _fmt_complex(z: complex) -> str:
    z = complex(z)
    return repr(z.real) if z.imag == 0 else repr(z)


def serialize_config(cfg: RunConfig) -> str:
    cp = configparser.ConfigParser(interpolation=None)
    s = cfg.scene
    cp["scene"] = {
        "antenna_x": repr(float(s.antenna[0])),
        "antenna_y": repr(float(s.antenna[1])),
        "targets": "; ".join(",".join(repr(float(v)) for v in (t.center[0], t.center[1], t.radius, t.contrast))
                             for t in s.targets),
        "reflection_coeff": _fmt_complex(s.reflection_coeff),
        "speed_mm_s": repr(float(s.speed)),
    }
    g = cfg.grid
    cp["grid"] = {"omega0": repr(float(g.omega0)), "delta_omega": repr(float(g.delta_omega)),
                  "n_total": str(g.n_total), "n_coarse_split": str(g.n_coarse_split)}
    cp["pulse"] = {"center_freq_hz": repr(float(cfg.pulse.center_freq)),
                   "amplitude": repr(float(cfg.pulse.amplitude))}
    r = cfg.raster
    cp["raster"] = {"origin_x": repr(float(r.origin[0])), "origin_y": repr(float(r.origin[1])),
                    "pixel_mm": repr(float(r.pixel_size)), "width": str(r.width), "height": str(r.height)}
    im = cfg.imaging
    cp["imaging"] = {"methods": im.methods, "p_paths": str(im.p_paths), "k_targets": str(im.k_targets),
                     "steering": im.steering, "synthesis": im.synthesis,
                     "tr_normalize": str(im.tr_normalize).lower(),
                     "path_separation": repr(float(im.path_separation)), "q": repr(float(im.q))}
    cp["noise"] = {"snr_db": repr(float(cfg.noise.snr_db)), "seed": str(cfg.noise.seed)}
    cp["output"] = {"directory": cfg.output_dir}
    cp["sweep"] = {"radii": ", ".join(repr(float(x)) for x in cfg.radii)}
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()


def _targets(text: str) -> tuple[Target, ...]:
    out = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        parts = [float(v) for v in chunk.split(",")]
        if len(parts) not in (2, 3, 4):
            raise ConfigError(f"target spec {chunk!r} needs x,y[,radius[,contrast]]")
        x, y, *rest = parts
        radius = rest[0] if rest else 0.0
        contrast = rest[1] if len(rest) > 1 else 1.0
        out.append(Target(Point2(x, y), radius, contrast))
    return tuple(out)


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def apply_overrides(cp: configparser.ConfigParser, overrides) -> None:
    """Apply ``section.key=value`` strings on top of a parsed manifest."""
    for item in overrides or ():
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise ConfigError(f"override {item!r} must look like section.key=value")
        lhs, value = item.split("=", 1)
        section, key = lhs.strip().split(".", 1)
        if not cp.has_section(section):
            cp.add_section(section)
        cp.set(section, key, value.strip())


def parse_config(text: str = "", overrides=None) -> RunConfig:
    """Build a RunConfig from INI text; missing keys fall back to the reference setup."""
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
        apply_overrides(cp, overrides)
        d = RunConfig()
        sec = lambda name: cp[name] if cp.has_section(name) else {}
        s = sec("scene")
        scene = Scene(
            Point2(float(s.get("antenna_x", d.scene.antenna[0])), float(s.get("antenna_y", d.scene.antenna[1]))),
            _targets(s["targets"]) if "targets" in s else d.scene.targets,
            complex(s.get("reflection_coeff", "-1").replace(" ", "")),
            float(s.get("speed_mm_s", d.scene.speed)),
        )
        if scene.reflection_coeff.imag == 0:
            scene = Scene(scene.antenna, scene.targets, scene.reflection_coeff.real, scene.speed)
        g = sec("grid")
        grid = FrequencyGrid(float(g.get("omega0", d.grid.omega0)), float(g.get("delta_omega", d.grid.delta_omega)),
                             int(g.get("n_total", d.grid.n_total)), int(g.get("n_coarse_split", d.grid.n_coarse_split)))
        p = sec("pulse")
        pulse = Pulse(float(p.get("center_freq_hz", d.pulse.center_freq)), float(p.get("amplitude", d.pulse.amplitude)))
        r = sec("raster")
        raster = RasterSpec(Point2(float(r.get("origin_x", d.raster.origin[0])), float(r.get("origin_y", d.raster.origin[1]))),
                            float(r.get("pixel_mm", d.raster.pixel_size)),
                            int(r.get("width", d.raster.width)), int(r.get("height", d.raster.height)))
        i = sec("imaging")
        di = d.imaging
        imaging = ImagingOptions(i.get("methods", di.methods).strip(), int(i.get("p_paths", di.p_paths)),
                                 int(i.get("k_targets", di.k_targets)), i.get("steering", di.steering).strip(),
                                 i.get("synthesis", di.synthesis).strip(),
                                 _bool(i["tr_normalize"]) if "tr_normalize" in i else di.tr_normalize,
                                 float(i.get("path_separation", di.path_separation)), float(i.get("q", di.q)))
        n = sec("noise")
        noise = NoiseOptions(float(n.get("snr_db", d.noise.snr_db)), int(n.get("seed", d.noise.seed)))
        o = sec("output")
        sw = sec("sweep")
        radii = tuple(float(v) for v in sw["radii"].split(",") if v.strip()) if "radii" in sw else d.radii
        cfg = RunConfig(scene, grid, pulse, raster, imaging, noise, o.get("directory", d.output_dir).strip(), radii)
    except ConfigError:
        raise
    except (ValueError, KeyError, configparser.Error) as exc:
        raise ConfigError(str(exc)) from exc
    cfg.validate()
    return cfg
