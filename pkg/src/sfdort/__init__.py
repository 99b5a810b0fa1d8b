"""Single-antenna multipath UWB radar imaging: time reversal and stepped-frequency DORT."""

from .forward import PathId, SpectrumVector, add_noise, synthesize
from .imaging import ImageGrid, RasterSpec, dort_image, subspace_image, tr_image
from .metrics import EvalReport, mb_sharpness, peak_position, position_error
from .scene import Point2, Scene, Target, mirror, reference_scene, path_lengths, validate_scene
from .subspace import build_kff, noise_subspace, svd
from .waveform import FrequencyGrid, Pulse

__version__ = "0.1.0"
