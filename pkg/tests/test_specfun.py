import csv
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles.bessel_series import j0_y0
from sfdort.specfun import DomainError, RangeError, bessel_j0, bessel_y0, hankel0

FIXTURE = Path(__file__).parent / "data" / "bessel_oracle.csv"


def load_fixture():
    with open(FIXTURE) as fh:
        rows = list(csv.DictReader(fh))
    return (np.array([float(r[k]) for r in rows]) for k in ("x", "j0", "y0"))


def test_fixture_matches_oracle_spot_checks():
    # the committed file is what scripts/make_bessel_fixture.py produces
    x, j, y = load_fixture()
    for i in (0, 137, 500, 999):
        oj, oy = j0_y0(x[i])
        assert float(oj) == pytest.approx(j[i], abs=1e-15)
        assert float(oy) == pytest.approx(y[i], abs=1e-15)


def test_oracle_agrees_with_mpmath_builtin():
    import mpmath as mp
    for x in (0.5, 3.0, 17.0, 120.0):
        oj, oy = j0_y0(x)
        assert float(oj) == pytest.approx(float(mp.besselj(0, x)), abs=1e-15)
        assert float(oy) == pytest.approx(float(mp.bessely(0, x)), abs=1e-15)


def test_j0_examples():
    assert bessel_j0(0.0) == 1.0
    assert abs(bessel_j0(2.404825557695773)) <= 1e-8
    assert bessel_j0(1.0) == pytest.approx(0.7651976866, abs=1e-10)


def test_y0_examples():
    assert bessel_y0(1.0) == pytest.approx(0.0882569642, abs=1e-10)
    assert abs(bessel_y0(0.8935769663)) <= 1e-7
    with pytest.raises(DomainError):
        bessel_y0(0.0)


def test_zeros_by_bisection_on_series_oracle():
    def bisect(f, lo, hi):
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if f(lo) * f(mid) <= 0:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    zj = bisect(lambda t: float(j0_y0(t)[0]), 2.0, 3.0)
    zy = bisect(lambda t: float(j0_y0(t)[1]), 0.5, 1.5)
    assert zj == pytest.approx(2.404825557695773, abs=1e-12)
    assert zy == pytest.approx(0.8935769663, abs=1e-9)


def test_hankel_examples():
    h = hankel0(1.0)
    assert h.real == pytest.approx(0.7651976866, abs=1e-10)
    assert h.imag == pytest.approx(0.0882569642, abs=1e-10)
    for bad in (0.0, -1.0):
        with pytest.raises(DomainError):
            hankel0(bad)
    assert abs(hankel0(100.0)) == pytest.approx(math.sqrt(2 / (100 * math.pi)), rel=0.01)


def test_range_cap():
    hankel0(5000.0)
    with pytest.raises(RangeError):
        hankel0(5000.5)


def test_hankel_magnitude_near_asymptote_beyond_10():
    x = np.linspace(10, 500, 200)
    assert np.all(np.abs(np.abs(hankel0(x)) / np.sqrt(2 / (np.pi * x)) - 1) < 0.01)


def test_phase_at_200():
    x = 200.0
    d = np.angle(hankel0(x) * np.exp(-1j * (x - math.pi / 4)))
    assert abs(d) < 0.02


def test_wronskian():
    x = np.linspace(0.5, 100, 2000)
    h = 1e-4 * x
    dj = (bessel_j0(x + h) - bessel_j0(x - h)) / (2 * h)
    dy = (bessel_y0(x + h) - bessel_y0(x - h)) / (2 * h)
    w = bessel_j0(x) * dy - dj * bessel_y0(x)
    assert np.max(np.abs(w - 2 / (np.pi * x))) < 1e-6


def test_against_brute_force_200_term_series(rng):
    import mpmath as mp
    x = rng.uniform(0.01, 50, 1000)
    j = bessel_j0(x)
    y = bessel_y0(x)
    ej = ey = 0.0
    for xi, ji, yi in zip(x, j, y):
        oj, oy = j0_y0(xi, terms=200)
        ej = max(ej, abs(ji - float(oj)))
        ey = max(ey, abs(yi - float(oy)))
    assert ej < 1e-8 and ey < 1e-8


def test_vectorised_matches_scalar():
    x = np.array([0.3, 5.0, 11.99, 12.0, 40.0, 999.0])
    assert np.array_equal(hankel0(x), np.array([hankel0(v) for v in x]))
    assert np.ndim(bessel_j0(3.0)) == 0


@settings(max_examples=200)
@given(st.floats(1e-3, 5000.0))
def test_hankel_components(x):
    h = hankel0(x)
    assert h.real == bessel_j0(x) and h.imag == bessel_y0(x)
    assert np.isfinite(h)


def test_scipy_cross_check():
    special = pytest.importorskip("scipy.special")
    x = np.logspace(-3, np.log10(4000), 5000)
    assert np.max(np.abs(hankel0(x) - special.hankel1(0, x))) < 1e-10
