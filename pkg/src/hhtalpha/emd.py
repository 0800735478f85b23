"""Empirical mode decomposition (sifting) and its noise-ensemble variant."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .signal import Signal


@dataclass(frozen=True)
class EmdConfig:
    max_modes: int = 10
    sift_sd_threshold: float = 0.2
    max_sift_iters: int = 100
    boundary_pad_extrema: int = 2

    def __post_init__(self):
        if self.max_modes < 1:
            raise ValueError("max_modes must be >= 1")
        if self.sift_sd_threshold <= 0:
            raise ValueError("sift_sd_threshold must be positive")
        if self.max_sift_iters < 1:
            raise ValueError("max_sift_iters must be >= 1")


@dataclass(frozen=True)
class EemdConfig:
    emd: EmdConfig = field(default_factory=EmdConfig)
    ensemble_size: int = 50
    ensemble_snr_db: float = 30.0
    master_seed: int = 0

    def __post_init__(self):
        if self.ensemble_size < 1:
            raise ValueError("ensemble_size must be >= 1")


@dataclass(frozen=True)
class ImfSet:
    """Ordered oscillatory modes plus the leftover trend of one signal."""

    modes: tuple
    residual: Signal

    @property
    def source_len(self) -> int:
        return len(self.residual)

    @property
    def mode_count(self) -> int:
        return len(self.modes)

    def mode_matrix(self) -> np.ndarray:
        """Modes stacked as a (mode_count, source_len) array."""
        if not self.modes:
            return np.empty((0, self.source_len))
        return np.stack([m.samples for m in self.modes])

    def total(self) -> np.ndarray:
        """Sum of all modes plus the residual."""
        out = self.residual.samples.copy()
        for m in self.modes:
            out += m.samples
        return out


def find_extrema(signal: Signal):
    """Locate strict local maxima and minima.

    Returns ((max_idx, max_val), (min_idx, min_val)).  A flat plateau
    contributes the floor-midpoint of its index range once; endpoints are
    never extrema.
    """
    x = signal.samples
    if len(x) < 3:
        return (np.array([], int), np.array([])), (np.array([], int), np.array([]))
    change = np.flatnonzero(np.diff(x) != 0)
    starts = np.concatenate(([0], change + 1))
    ends = np.concatenate((change, [len(x) - 1]))
    v = x[starts]
    if len(v) < 3:
        return (np.array([], int), np.array([])), (np.array([], int), np.array([]))
    mid = v[1:-1]
    is_max = (mid > v[:-2]) & (mid > v[2:])
    is_min = (mid < v[:-2]) & (mid < v[2:])
    mid_idx = (starts[1:-1] + ends[1:-1]) // 2
    return (
        (mid_idx[is_max], mid[is_max]),
        (mid_idx[is_min], mid[is_min]),
    )


def envelope(indices: np.ndarray, values: np.ndarray, length: int, pad: int) -> np.ndarray:
    """Natural cubic spline through extrema, with mirrored boundary points.

    Up to `pad` extrema are reflected beyond each end of [0, length) before
    fitting, to tame end swings.
    """
    indices = np.asarray(indices, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if pad > 0 and len(indices) > 0:
        k = min(pad, len(indices))
        left_t = -indices[:k][::-1]
        left_v = values[:k][::-1]
        right_t = 2 * (length - 1) - indices[-k:][::-1]
        right_v = values[-k:][::-1]
        indices = np.concatenate([left_t, indices, right_t])
        values = np.concatenate([left_v, values, right_v])
        # mirroring can duplicate knots when an extremum sits at an end
        indices, keep = np.unique(indices, return_index=True)
        values = values[keep]
    if len(indices) < 2:
        raise ValueError("need at least 2 envelope points after mirroring")
    spline = CubicSpline(indices, values, bc_type="natural")
    return spline(np.arange(length))


def _mean_envelope(x: np.ndarray, pad: int):
    (max_i, max_v), (min_i, min_v) = find_extrema(Signal(x, 1))
    if len(max_i) < 2 or len(min_i) < 2:
        return None
    upper = envelope(max_i, max_v, len(x), pad)
    lower = envelope(min_i, min_v, len(x), pad)
    return 0.5 * (upper + lower)


def sift(signal: Signal, cfg: EmdConfig) -> Signal:
    """Extract one oscillatory mode by repeated mean-envelope subtraction.

    Stops when SD = sum((h_prev - h)**2) / sum(h_prev**2) drops below
    cfg.sift_sd_threshold or cfg.max_sift_iters is reached.
    """
    h = signal.samples.copy()
    for _ in range(cfg.max_sift_iters):
        mean = _mean_envelope(h, cfg.boundary_pad_extrema)
        if mean is None:
            break
        denom = np.sum(h * h)
        if denom == 0.0:
            break
        sd = np.sum(mean * mean) / denom
        h = h - mean
        if sd < cfg.sift_sd_threshold:
            break
    return Signal(h, signal.sample_rate)


def emd(signal: Signal, cfg: EmdConfig = EmdConfig()) -> ImfSet:
    """Decompose a signal into oscillatory modes plus a residual trend.

    Modes are extracted from the running residual until cfg.max_modes are
    found or the residual has fewer than 2 maxima or 2 minima.  The sum of
    all modes plus the residual reproduces the input to round-off.
    """
    if len(signal) < 16:
        raise ValueError("signal too short to decompose (need >= 16 samples)")
    residual = signal.samples.copy()
    modes = []
    for _ in range(cfg.max_modes):
        (max_i, _), (min_i, _) = find_extrema(Signal(residual, signal.sample_rate))
        if len(max_i) < 2 or len(min_i) < 2:
            break
        imf = sift(Signal(residual, signal.sample_rate), cfg)
        modes.append(imf)
        residual = residual - imf.samples
    return ImfSet(tuple(modes), Signal(residual, signal.sample_rate))


def eemd(signal: Signal, cfg: EemdConfig = EemdConfig()) -> ImfSet:
    """Noise-ensemble decomposition.

    Runs plain EMD on cfg.ensemble_size white-Gaussian-noise-perturbed copies
    of the signal (noise level set by cfg.ensemble_snr_db relative to the
    signal variance) and averages the m-th modes across trials.  The residual
    is defined as the input minus the summed averaged modes, so completeness
    holds exactly.  Fully deterministic given cfg.master_seed.
    """
    x = signal.samples
    std_x = float(np.std(x))
    if np.isinf(cfg.ensemble_snr_db) or std_x == 0.0:
        noise_std = 0.0
    else:
        noise_std = std_x * 10.0 ** (-cfg.ensemble_snr_db / 20.0)
    if noise_std == 0.0:
        # every trial would be identical; the ensemble degenerates to plain EMD
        return emd(signal, cfg.emd)
    acc = np.zeros((cfg.emd.max_modes, len(x)))
    produced = 0
    for n in range(cfg.ensemble_size):
        if noise_std > 0.0:
            rng = np.random.default_rng(np.random.SeedSequence([cfg.master_seed, n]))
            trial = x + noise_std * rng.standard_normal(len(x))
        else:
            trial = x
        imfs = emd(Signal(trial, signal.sample_rate), cfg.emd)
        produced = max(produced, imfs.mode_count)
        for m, mode in enumerate(imfs.modes):
            acc[m] += mode.samples
    modes = tuple(
        Signal(acc[m] / cfg.ensemble_size, signal.sample_rate) for m in range(produced)
    )
    residual = x - acc[:produced].sum(axis=0) / cfg.ensemble_size if produced else x.copy()
    return ImfSet(modes, Signal(residual, signal.sample_rate))
