"""Impulsiveness-guided mode selection and speech reconstruction.

Pipeline: ensemble decomposition -> per-frame per-mode impulsiveness-index
profiling -> adaptive threshold + prefix selection -> windowed overlap-add
reconstruction.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .emd import EemdConfig, ImfSet, eemd
from .signal import FrameGrid, Signal, Window, extract_frames, frame_grid, make_window, overlap_add
from .stable import AlphaLookup, default_lookup

# Frames where the quantile estimator degenerates (zero spread, e.g. all-zero
# padding) are scored as maximally noise-like.
DEGENERATE_ALPHA = 2.0


@dataclass(frozen=True)
class EnhanceConfig:
    eemd: EemdConfig = field(default_factory=EemdConfig)
    frame_len: int = 10240
    step: int = 128
    mu: float = 0.8
    alpha_min: float = 1.1
    threshold_combine: str = "floor"
    window: str = "hann"

    def __post_init__(self):
        if not (0.0 < self.mu <= 1.0):
            raise ValueError("mu must lie in (0, 1]")
        if not (0.5 <= self.alpha_min <= 2.0):
            raise ValueError("alpha_min must lie in [0.5, 2.0]")
        if self.threshold_combine not in ("floor", "literal_min"):
            raise ValueError("threshold_combine must be 'floor' or 'literal_min'")
        if self.step <= 0 or self.step > self.frame_len:
            raise ValueError("step must satisfy 0 < step <= frame_len")


@dataclass
class AlphaProfile:
    """Per-frame impulsiveness estimates and the resulting mode selections.

    per_mode is (frames x modes); `noisy` holds the estimate for the corrupted
    signal frame itself.  `thresholds` and `cut_index` stay None until the
    selection step fills them in.
    """

    per_mode: np.ndarray
    noisy: np.ndarray
    thresholds: np.ndarray | None = None
    cut_index: np.ndarray | None = None

    @property
    def frame_count(self) -> int:
        return self.per_mode.shape[0]

    @property
    def mode_count(self) -> int:
        return self.per_mode.shape[1]

    def write_csv(self, path) -> None:
        """Dump the profile for external plotting (one row per frame)."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            header = [f"alpha_{m + 1}" for m in range(self.mode_count)]
            header += ["alpha_u", "rho_alpha", "Z"]
            writer.writerow(header)
            for q in range(self.frame_count):
                row = [f"{a:.6f}" for a in self.per_mode[q]]
                row.append(f"{self.noisy[q]:.6f}")
                row.append("" if self.thresholds is None else f"{self.thresholds[q]:.6f}")
                row.append("" if self.cut_index is None else str(int(self.cut_index[q])))
                writer.writerow(row)


def _frame_alphas(samples: np.ndarray, grid: FrameGrid, lookup: AlphaLookup) -> np.ndarray:
    """Impulsiveness index of every frame of one sample sequence."""
    frames = extract_frames(samples, grid)
    q05, q25, q75, q95 = np.quantile(frames, [0.05, 0.25, 0.75, 0.95], axis=1, method="hazen")
    iqr = q75 - q25
    out = np.full(grid.count, DEGENERATE_ALPHA)
    ok = iqr > 0.0
    nu = (q95[ok] - q05[ok]) / iqr[ok]
    out[ok] = np.clip(np.interp(nu, lookup.nu, lookup.alpha), 0.5, 2.0)
    return out


def profile_alpha(imfs: ImfSet, noisy: Signal, grid: FrameGrid,
                  lookup: AlphaLookup | None = None) -> AlphaProfile:
    """Estimate the impulsiveness index per frame for every mode and for the
    noisy signal itself.  Degenerate frames get the sentinel value 2.0."""
    if lookup is None:
        lookup = default_lookup()
    if imfs.source_len != len(noisy):
        raise ValueError("mode length does not match the noisy signal")
    if grid.total_len != len(noisy):
        raise ValueError("frame grid does not match the noisy signal")
    per_mode = np.empty((grid.count, imfs.mode_count))
    for m, mode in enumerate(imfs.modes):
        per_mode[:, m] = _frame_alphas(mode.samples, grid, lookup)
    noisy_alpha = _frame_alphas(noisy.samples, grid, lookup)
    return AlphaProfile(per_mode=per_mode, noisy=noisy_alpha)


def threshold(alpha_u: float, cfg: EnhanceConfig) -> float:
    """Adaptive per-frame selection threshold.

    "floor" keeps the threshold at least alpha_min (prevents over-removal in
    speech-dominant frames); "literal_min" takes min(mu*alpha_u, alpha_min)
    instead.
    """
    scaled = cfg.mu * alpha_u
    if cfg.threshold_combine == "floor":
        return max(scaled, cfg.alpha_min)
    return min(scaled, cfg.alpha_min)


def select_cut(alphas: np.ndarray, rho: float) -> int:
    """Index of the last mode whose impulsiveness is at or below the threshold.

    Returns 0 when no mode qualifies (the frame is reconstructed as silence).
    Modes past the returned index are treated as noise-like and dropped.
    """
    alphas = np.asarray(alphas)
    below = np.flatnonzero(alphas <= rho)
    return int(below[-1] + 1) if below.size else 0


def apply_selection(profile: AlphaProfile, cfg: EnhanceConfig) -> AlphaProfile:
    """Fill in per-frame thresholds and mode cut indices."""
    rho = np.array([threshold(a, cfg) for a in profile.noisy])
    cuts = np.array(
        [select_cut(profile.per_mode[q], rho[q]) for q in range(profile.frame_count)],
        dtype=int,
    )
    profile.thresholds = rho
    profile.cut_index = cuts
    return profile


def reconstruct(imfs: ImfSet, profile: AlphaProfile, grid: FrameGrid,
                window: Window) -> Signal:
    """Windowed per-frame sum of the kept mode prefix, overlap-added.

    The residual trend is never included.  Output length equals the source
    length exactly.
    """
    if profile.cut_index is None:
        raise ValueError("profile has no cut indices; run apply_selection first")
    if profile.frame_count != grid.count or imfs.source_len != grid.total_len:
        raise ValueError("profile/grid/mode shapes are inconsistent")
    # prefix sums let each frame pick "modes 1..Z" with one row lookup
    prefix = np.cumsum(imfs.mode_matrix(), axis=0)
    frames = np.zeros((grid.count, grid.frame_len))
    for q in range(grid.count):
        z = int(profile.cut_index[q])
        if z == 0:
            continue
        start = q * grid.step
        chunk = prefix[z - 1, start : start + grid.frame_len]
        frames[q, : len(chunk)] = chunk
    frames *= window.values
    return overlap_add(frames, grid, window, imfs.residual.sample_rate)


def enhance(noisy: Signal, cfg: EnhanceConfig = EnhanceConfig(),
            lookup: AlphaLookup | None = None):
    """Full pipeline; returns (enhanced signal, filled-in AlphaProfile)."""
    if len(noisy) < cfg.frame_len // 4:
        raise ValueError("input shorter than a quarter frame; nothing to enhance")
    if lookup is None:
        lookup = default_lookup()
    grid = frame_grid(len(noisy), cfg.frame_len, cfg.step)
    window = make_window(cfg.window, cfg.frame_len)
    imfs = eemd(noisy, cfg.eemd)
    profile = profile_alpha(imfs, noisy, grid, lookup)
    apply_selection(profile, cfg)
    enhanced = reconstruct(imfs, profile, grid, window)
    return enhanced, profile
