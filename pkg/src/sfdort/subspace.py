"""Frequency-frequency matrix, its SVD, and noise-subspace selection.

Row i of K_FF holds S_{iL+1} .. S_{iL+L}: rows step the frequency by L*dw
(coarse), columns by dw (fine). Left singular vectors therefore carry the
coarse-frequency structure and right singular vectors the fine one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forward import SpectrumVector
from .waveform import FrequencyGrid


class SvdConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class KffMatrix:
    entries: np.ndarray
    grid: FrequencyGrid

    @property
    def L(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class SvdResult:
    u: np.ndarray  # columns are left singular vectors
    s: np.ndarray  # descending
    v: np.ndarray  # columns are right singular vectors

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.s) @ self.v.conj().T


@dataclass(frozen=True, eq=False)
class NoiseSubspace:
    left_basis: np.ndarray  # (L, L - PK)
    right_basis: np.ndarray
    p_paths: int
    k_targets: int

    @property
    def size(self) -> int:
        return self.left_basis.shape[1]


def build_kff(sv: SpectrumVector) -> KffMatrix:
    values = np.asarray(sv.values)
    L = sv.grid.L
    if values.shape != (L * L,):
        raise ValueError(f"spectrum length {values.size} is not L**2 = {L * L}")
    return KffMatrix(values.reshape(L, L).copy(), sv.grid)


def fine_adjustment(k: KffMatrix) -> np.ndarray:
    """Row-normalised entries k[i, j] / k[i, 0]; rows agree when K_FF is separable."""
    return k.entries / k.entries[:, :1]


def _canonical_phase(u, v):
    # largest-magnitude component of each u_i made real-positive; v_i rotated alike
    idx = np.argmax(np.abs(u), axis=0)
    lead = u[idx, np.arange(u.shape[1])]
    mag = np.abs(lead)
    phase = np.where(mag > 0, lead / np.where(mag > 0, mag, 1.0), 1.0)
    return u * phase.conj(), v * phase.conj()


def svd(k) -> SvdResult:
    """Full SVD K = U diag(s) V^H with deterministic per-pair phase."""
    a = k.entries if isinstance(k, KffMatrix) else np.asarray(k)
    a = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    try:
        u, s, vh = np.linalg.svd(a)
    except np.linalg.LinAlgError as exc:
        cond = np.linalg.norm(a, 2) / max(np.linalg.norm(a, -2), np.finfo(float).tiny)
        raise SvdConvergenceError(f"SVD did not converge (condition estimate {cond:.3e})") from exc
    u, v = _canonical_phase(u, vh.conj().T)
    return SvdResult(u, s, v)


def noise_subspace(r: SvdResult, p_paths: int = 3, k_targets: int = 1,
                   energy_threshold: float | None = None) -> NoiseSubspace:
    """Trailing L - P*K singular vectors on each side.

    With ``energy_threshold`` set, singular values with s_i / s_1 below it are
    also moved into the noise subspace (for rank-deficient data).
    """
    L = r.u.shape[1]
    signal = p_paths * k_targets
    if signal >= L:
        raise ValueError(f"P*K = {signal} leaves no noise subspace for L = {L}")
    if energy_threshold is not None and r.s[0] > 0:
        strong = int(np.sum(r.s / r.s[0] >= energy_threshold))
        signal = min(signal, strong)
    return NoiseSubspace(r.u[:, signal:], r.v[:, signal:], p_paths, k_targets)
