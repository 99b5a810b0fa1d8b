import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sfdort.forward import synthesize
from sfdort.imaging import RasterSpec, dort_image, subspace_image, tr_image
from sfdort.scene import reference_scene
from sfdort.subspace import build_kff, noise_subspace, svd
from sfdort.waveform import FrequencyGrid, Pulse

TARGET = (600.0, 750.0)


@pytest.fixture(scope="session")
def grid():
    return FrequencyGrid()


@pytest.fixture(scope="session")
def pulse():
    return Pulse()


@pytest.fixture(scope="session")
def scene():
    return reference_scene()


@dataclass
class RefRun:
    sv: object
    svd: object
    ns: object
    tr: object
    left: object
    right: object
    dort: object


def run_pipeline(scene, grid, pulse, raster, **kw):
    sv = synthesize(scene, grid, pulse)
    r = svd(build_kff(sv))
    ns = noise_subspace(r, 3, 1)
    tr = tr_image(sv, scene, grid, pulse, raster)
    left = subspace_image(ns, "left", scene, grid, pulse, raster, **kw)
    right = subspace_image(ns, "right", scene, grid, pulse, raster, **kw)
    return RefRun(sv, r, ns, tr, left, right, dort_image(left, right))


@pytest.fixture(scope="session")
def ref_run(scene, grid, pulse):
    """Full default 241 x 301 raster, r = 0, noiseless."""
    return run_pipeline(scene, grid, pulse, RasterSpec())


@pytest.fixture(scope="session")
def coarse_raster():
    return RasterSpec.spanning((0.0, 1200.0), (10.0, 1490.0), 20.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
