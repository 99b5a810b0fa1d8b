import numpy as np
import pytest

from sfdort import io as sfio
from sfdort.forward import SpectrumVector
from sfdort.imaging import ImageGrid
from sfdort.metrics import EvalReport
from sfdort.scene import Point2
from sfdort.subspace import svd
from sfdort.waveform import FrequencyGrid


def test_spectrum_round_trip(rng):
    g = FrequencyGrid()
    sv = SpectrumVector(rng.standard_normal(100) + 1j * rng.standard_normal(100), g)
    text = sfio.spectrum_to_csv(sv)
    assert text.splitlines()[0] == "n,omega_rad_s,re,im"
    back = sfio.spectrum_from_csv(text)
    np.testing.assert_array_equal(back.values, sv.values)
    assert back.grid.L == 10 and back.grid.N == 100
    np.testing.assert_allclose(back.grid.omegas(), g.omegas(), rtol=1e-14)
    assert sfio.spectrum_to_csv(sfio.spectrum_from_csv(text, g)) == text


def test_spectrum_grid_mismatch(rng):
    sv = SpectrumVector(np.ones(100, complex), FrequencyGrid())
    with pytest.raises(ValueError):
        sfio.spectrum_from_csv(sfio.spectrum_to_csv(sv), FrequencyGrid(omega0=1e9))


def test_image_round_trip(rng):
    img = ImageGrid(Point2(-2.5, 7.5), 5.0, 4, 3, rng.random((3, 4)))
    back = sfio.image_from_csv(sfio.image_to_csv(img))
    assert back.same_raster(img)
    np.testing.assert_array_equal(back.intensities, img.intensities)


def test_image_csv_bad_header():
    with pytest.raises(ValueError):
        sfio.image_from_csv("x\n1\n")


def test_pgm_layout():
    vals = np.array([[0.0, 0.5], [1.0, 0.25], [0.0, 0.0]])
    data = sfio.image_to_pgm(ImageGrid(Point2(0, 0), 1.0, 2, 3, vals))
    header = b"P5\n2 3\n65535\n"
    assert data.startswith(header)
    body = np.frombuffer(data[len(header):], dtype=">u2").reshape(3, 2)
    np.testing.assert_array_equal(body[0], [0, 0])          # top row is the largest y
    np.testing.assert_array_equal(body[2], [0, 32768])


def test_svd_csv_rows(rng):
    r = svd(rng.standard_normal((3, 3)) + 0j)
    lines = sfio.svd_to_csv(r).splitlines()
    assert lines[0] == "i,sigma,component,u_re,u_im,v_re,v_im"
    assert len(lines) == 1 + 9
    assert float(lines[1].split(",")[1]) == r.s[0]


def test_results_table(tmp_path):
    reps = [EvalReport("tr", 5.0, Point2(600.0, 750.0), 0.0, 0.01, 1.5),
            EvalReport("dort", 5.0, Point2(605.0, 750.0), 0.0, 0.001, 0.5)]
    path = tmp_path / "t.csv"
    sfio.append_results(path, reps[:1])
    sfio.append_results(path, reps[1:])
    assert path.read_text() == sfio.results_to_csv(reps)
    rows = sfio.read_results(path)
    assert [r["method"] for r in rows] == ["tr", "dort"]
    assert rows[1]["est_x_mm"] == 605.0
    assert "runtime" not in path.read_text()


def test_atomic_write_leaves_no_temp(tmp_path):
    sfio.atomic_write(tmp_path / "a" / "b.txt", "hi")
    sfio.atomic_write(tmp_path / "a" / "b.txt", b"yo")
    assert (tmp_path / "a" / "b.txt").read_bytes() == b"yo"
    assert [p.name for p in (tmp_path / "a").iterdir()] == ["b.txt"]
