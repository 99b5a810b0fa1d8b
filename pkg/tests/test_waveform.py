import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sfdort.waveform import FrequencyGrid, Pulse, coarse_indices, fine_indices, omega, spectrum

TWO_PI = 2 * math.pi


def test_omega_default_grid():
    g = FrequencyGrid()
    assert omega(g, 1) == pytest.approx(TWO_PI * 1.56e9, rel=1e-12)
    assert omega(g, 100) == pytest.approx(TWO_PI * 7.5e9, rel=1e-12)
    with pytest.raises(IndexError):
        omega(g, 0)
    with pytest.raises(IndexError):
        omega(g, 101)


def test_grid_requires_square_count():
    with pytest.raises(ValueError, match="L\\*\\*2"):
        FrequencyGrid(n_total=90, n_coarse_split=10)
    with pytest.raises(ValueError):
        FrequencyGrid(n_total=1, n_coarse_split=1)
    with pytest.raises(ValueError):
        FrequencyGrid(omega0=-1e9, delta_omega=1e8, n_total=4, n_coarse_split=2)


def test_tau_from_center_frequency():
    p = Pulse(4e9)
    assert p.tau == pytest.approx(39.789e-12, rel=1e-4)
    # magnitude of w exp(-w^2 tau^2 / 2) is maximal at w = 1 / tau
    w = np.linspace(0.2, 3.0, 20001) / p.tau
    assert w[np.argmax(np.abs(spectrum(p, w)))] == pytest.approx(1 / p.tau, rel=1e-3)


def test_spectrum_ratio_closed_form():
    p = Pulse(4e9)
    ratio = abs(spectrum(p, TWO_PI * 1.56e9)) / abs(spectrum(p, TWO_PI * 4e9))
    a = 1.56 / 4.0
    assert ratio == pytest.approx(a * math.exp(-(a * a - 1) / 2), rel=1e-12)
    assert ratio == pytest.approx(0.5959, abs=1e-4)


def test_spectrum_is_imaginary_positive():
    assert spectrum(Pulse(), 1e10).real == 0.0
    assert spectrum(Pulse(), 1e10).imag > 0


@given(st.floats(1.0, 50.0), st.floats(0.0, 50.0))
def test_spectrum_decays_past_peak(a, b):
    p = Pulse()
    w1 = (1 + a / 10) / p.tau
    w2 = w1 + (b + 1e-3) / p.tau
    assert abs(spectrum(p, w2)) < abs(spectrum(p, w1))


def test_index_lists():
    g = FrequencyGrid()
    assert coarse_indices(g) == [1, 11, 21, 31, 41, 51, 61, 71, 81, 91]
    assert fine_indices(g) == list(range(1, 11))
    small = FrequencyGrid(1e9, 1e8, 4, 2)
    assert coarse_indices(small) == [1, 3]
    assert fine_indices(small) == [1, 2]


@given(st.integers(2, 40))
def test_index_list_properties(L):
    g = FrequencyGrid(1e9, 1e7, L * L, L)
    c, f = coarse_indices(g), fine_indices(g)
    assert len(c) == len(f) == L
    assert min(c + f) == 1 and max(c) == g.N - L + 1
    assert all(1 <= i <= g.N for i in c + f)
    w = g.omegas()
    assert np.all(np.diff(w) > 0)
