"""Gaussian-monocycle transmit spectrum and the stepped-frequency grid."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FrequencyGrid:
    """Samples at omega_n = omega0 + n * delta_omega for n = 1..N, N = L**2."""

    omega0: float = TWO_PI * 1.5e9
    delta_omega: float = TWO_PI * 60e6
    n_total: int = 100
    n_coarse_split: int = 10

    def __post_init__(self):
        L, N = self.n_coarse_split, self.n_total
        if L < 2:
            raise ValueError(f"L must be >= 2, got {L}")
        if N != L * L:
            raise ValueError(f"N must equal L**2 (N={N}, L={L})")
        if not self.delta_omega > 0:
            raise ValueError("delta_omega must be positive")
        if not self.omega0 + self.delta_omega > 0:
            raise ValueError("all sample frequencies must be positive (omega0 + delta_omega > 0)")

    @property
    def L(self) -> int:
        return self.n_coarse_split

    @property
    def N(self) -> int:
        return self.n_total

    def omegas(self) -> np.ndarray:
        return self.omega0 + self.delta_omega * np.arange(1, self.n_total + 1)


@dataclass(frozen=True)
class Pulse:
    """Gaussian monocycle; tau puts the spectral magnitude peak at ``center_freq``."""

    center_freq: float = 4.0e9
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.center_freq > 0:
            raise ValueError("center_freq must be positive")

    @property
    def tau(self) -> float:
        return 1.0 / (TWO_PI * self.center_freq)


def omega(g: FrequencyGrid, n: int) -> float:
    if not 1 <= n <= g.n_total:
        raise IndexError(f"frequency index {n} outside 1..{g.n_total}")
    return g.omega0 + n * g.delta_omega


def spectrum(p: Pulse, omega):
    """S_T(w) = j A w tau^2 exp(-w^2 tau^2 / 2)."""
    w = np.asarray(omega, dtype=float)
    tau = p.tau
    out = 1j * p.amplitude * w * tau * tau * np.exp(-0.5 * (w * tau) ** 2)
    return out[()] if out.ndim == 0 else out


def coarse_indices(g: FrequencyGrid) -> list[int]:
    """1-based indices 1, L+1, ..., N-L+1."""
    return list(range(1, g.n_total - g.L + 2, g.L))


def fine_indices(g: FrequencyGrid) -> list[int]:
    """1-based indices 1..L."""
    return list(range(1, g.L + 1))
