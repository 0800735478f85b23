"""Objective speech quality and intelligibility measures.

LLR (LPC spectral distance), frequency-weighted segmental SNR, the
short-time envelope-correlation intelligibility score, and the logistic
mapping from scores to intelligibility percentages.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz

from .signal import Signal, resample

# Logistic mapping coefficients f(d) = 100 / (1 + exp(a*d + b))
STOI_MAP_A = -13.45
STOI_MAP_B = 9.36
CSII_MAP_A = -10.09
CSII_MAP_B = 4.65

_EPS = 1e-15


@dataclass(frozen=True)
class MetricConfig:
    frame_ms: float = 32.0
    hop_ms: float = 16.0
    lpc_order: int = 16
    n_bands: int = 25                  # fwSNRseg triangular bands
    band_lo_hz: float = 50.0
    band_hi_hz: float = 8000.0
    active_floor_db: float = 40.0      # frames this far below peak are skipped
    # envelope-correlation intelligibility constants
    stoi_rate: int = 10000
    stoi_frame: int = 256
    stoi_hop: int = 128
    stoi_nfft: int = 512
    stoi_bands: int = 15
    stoi_min_freq: float = 150.0
    stoi_seg_frames: int = 30
    stoi_clip_db: float = -15.0
    stoi_dyn_range_db: float = 40.0


@dataclass
class MetricReport:
    llr: float | None = None
    fwsnrseg_db: float | None = None
    stoi: float | None = None
    stoi_pct: float | None = None
    csii_pct: float | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in vars(self).items() if v is not None}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def map_intelligibility(d: float, a: float, b: float) -> float:
    """Logistic mapping from an objective score to an intelligibility %."""
    return 100.0 / (1.0 + np.exp(a * d + b))


def _check_pair(clean: Signal, processed: Signal) -> None:
    if len(clean) != len(processed):
        raise ValueError("clean and processed lengths differ")
    if clean.sample_rate != processed.sample_rate:
        raise ValueError("clean and processed sample rates differ")


def _frame_pair(clean: Signal, processed: Signal, cfg: MetricConfig):
    """Windowed frame matrices plus the active-frame mask (clean energy
    within cfg.active_floor_db of the loudest frame)."""
    n = int(round(cfg.frame_ms * clean.sample_rate / 1000.0))
    hop = int(round(cfg.hop_ms * clean.sample_rate / 1000.0))
    if len(clean) < n:
        raise ValueError("signal shorter than one analysis frame")
    count = 1 + (len(clean) - n) // hop
    win = np.hanning(n)
    starts = np.arange(count) * hop
    idx = starts[:, None] + np.arange(n)
    c = clean.samples[idx] * win
    p = processed.samples[idx] * win
    energy = np.sum(c * c, axis=1)
    active = energy >= energy.max() * 10.0 ** (-cfg.active_floor_db / 10.0)
    return c, p, active


def _levinson(r: np.ndarray, order: int) -> np.ndarray:
    """LPC coefficients [1, a_1 .. a_order] from autocorrelation values."""
    a = np.zeros(order + 1)
    a[0] = 1.0
    err = r[0]
    for i in range(1, order + 1):
        acc = r[i] + np.dot(a[1:i], r[i - 1:0:-1])
        k = -acc / err
        a[1:i + 1] += k * a[i - 1::-1][:i]
        err *= 1.0 - k * k
        if err <= 0.0:
            break
    return a


def llr(clean: Signal, processed: Signal, cfg: MetricConfig = MetricConfig()) -> float:
    """LPC log-likelihood ratio, averaged over active frames.

    Per frame: log(a_p R_c a_p' / a_c R_c a_c'), clamped to [0, 2], with R_c
    the clean-frame autocorrelation matrix.  0 when processed == clean.
    """
    _check_pair(clean, processed)
    c_frames, p_frames, active = _frame_pair(clean, processed, cfg)
    order = cfg.lpc_order
    if c_frames.shape[1] <= order:
        raise ValueError("analysis frame shorter than the LPC order")
    scores = []
    for c, p in zip(c_frames[active], p_frames[active]):
        rc = np.array([np.dot(c[: len(c) - k], c[k:]) for k in range(order + 1)])
        rp = np.array([np.dot(p[: len(p) - k], p[k:]) for k in range(order + 1)])
        if rc[0] <= 0.0 or rp[0] <= 0.0:
            continue
        ac = _levinson(rc, order)
        ap = _levinson(rp, order)
        R = toeplitz(rc)
        num = ap @ R @ ap
        den = ac @ R @ ac
        if den <= 0.0 or num <= 0.0:
            continue
        scores.append(np.clip(np.log(num / den), 0.0, 2.0))
    if not scores:
        raise ValueError("no usable frames for LLR")
    return float(np.mean(scores))


def _triangular_bank(n_bands: int, lo: float, hi: float, freqs: np.ndarray) -> np.ndarray:
    """Triangular filters with centers spaced on a mel-like log scale."""
    def mel(f):
        return 2595.0 * np.log10(1.0 + f / 700.0)

    def imel(m):
        return 700.0 * (10.0 ** (m / 2595.0) - 1.0)

    edges = imel(np.linspace(mel(lo), mel(hi), n_bands + 2))
    bank = np.zeros((n_bands, len(freqs)))
    for j in range(n_bands):
        f0, f1, f2 = edges[j], edges[j + 1], edges[j + 2]
        up = (freqs - f0) / max(f1 - f0, _EPS)
        down = (f2 - freqs) / max(f2 - f1, _EPS)
        bank[j] = np.clip(np.minimum(up, down), 0.0, 1.0)
    return bank


def fwsnrseg(clean: Signal, processed: Signal, cfg: MetricConfig = MetricConfig()) -> float:
    """Frequency-weighted segmental SNR in dB.

    Band magnitudes from triangular filters over the power spectrum; band
    weights are (clean magnitude)**0.2; per-band SNR clamped to [-10, 35] dB;
    averaged over active frames.  Identical inputs score the 35 dB ceiling.
    """
    _check_pair(clean, processed)
    c_frames, p_frames, active = _frame_pair(clean, processed, cfg)
    n = c_frames.shape[1]
    freqs = np.fft.rfftfreq(n, 1.0 / clean.sample_rate)
    hi = min(cfg.band_hi_hz, clean.sample_rate / 2.0)
    bank = _triangular_bank(cfg.n_bands, cfg.band_lo_hz, hi, freqs)
    cs = np.abs(np.fft.rfft(c_frames[active], axis=1))
    ps = np.abs(np.fft.rfft(p_frames[active], axis=1))
    xb = np.sqrt(cs ** 2 @ bank.T)
    yb = np.sqrt(ps ** 2 @ bank.T)
    err = (xb - yb) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        snr = 10.0 * np.log10(xb ** 2 / err)
    snr = np.clip(np.nan_to_num(snr, nan=35.0, posinf=35.0, neginf=-10.0), -10.0, 35.0)
    weights = xb ** 0.2
    frame_scores = np.sum(weights * snr, axis=1) / np.maximum(np.sum(weights, axis=1), _EPS)
    if frame_scores.size == 0:
        raise ValueError("no active frames for fwSNRseg")
    return float(np.mean(frame_scores))


def _octave_band_matrix(cfg: MetricConfig) -> np.ndarray:
    """Binary one-third-octave band assignment over the rfft bins."""
    freqs = np.fft.rfftfreq(cfg.stoi_nfft, 1.0 / cfg.stoi_rate)
    centers = cfg.stoi_min_freq * 2.0 ** (np.arange(cfg.stoi_bands) / 3.0)
    lo = centers / 2.0 ** (1.0 / 6.0)
    hi = centers * 2.0 ** (1.0 / 6.0)
    mat = np.zeros((cfg.stoi_bands, len(freqs)))
    for j in range(cfg.stoi_bands):
        mat[j, (freqs >= lo[j]) & (freqs < hi[j])] = 1.0
    return mat


def _remove_silent_frames(x: np.ndarray, y: np.ndarray, cfg: MetricConfig):
    n, hop = cfg.stoi_frame, cfg.stoi_hop
    win = np.hanning(n + 2)[1:-1]
    count = 1 + (len(x) - n) // hop
    idx = np.arange(count)[:, None] * hop + np.arange(n)
    xf = x[idx] * win
    yf = y[idx] * win
    energy = 20.0 * np.log10(np.linalg.norm(xf, axis=1) + _EPS)
    keep = energy > energy.max() - cfg.stoi_dyn_range_db
    xf, yf = xf[keep], yf[keep]
    out_len = (len(xf) - 1) * hop + n if len(xf) else 0
    xs = np.zeros(out_len)
    ys = np.zeros(out_len)
    for i in range(len(xf)):
        xs[i * hop : i * hop + n] += xf[i]
        ys[i * hop : i * hop + n] += yf[i]
    return xs, ys


def stoi(clean: Signal, processed: Signal, cfg: MetricConfig = MetricConfig()) -> float:
    """Short-time envelope-correlation intelligibility score in [0, 1].

    Both signals are resampled to 10 kHz; silent frames are removed; band
    envelopes from a 512-point DFT (256-sample Hann frames, 50% overlap) are
    grouped into 15 one-third-octave bands from 150 Hz; correlations of
    normalized, clipped 30-frame segments are averaged over bands and time.
    """
    _check_pair(clean, processed)
    if clean.duration < 0.5:
        raise ValueError("signals shorter than 0.5 s are not supported")
    x = resample(clean, cfg.stoi_rate).samples
    y = resample(processed, cfg.stoi_rate).samples
    x, y = _remove_silent_frames(x, y, cfg)
    n, hop = cfg.stoi_frame, cfg.stoi_hop
    if len(x) < n + cfg.stoi_seg_frames * hop:
        raise ValueError("too little active signal for the segment analysis")
    win = np.hanning(n + 2)[1:-1]
    count = 1 + (len(x) - n) // hop
    idx = np.arange(count)[:, None] * hop + np.arange(n)
    X = np.fft.rfft(x[idx] * win, cfg.stoi_nfft, axis=1)
    Y = np.fft.rfft(y[idx] * win, cfg.stoi_nfft, axis=1)
    octmat = _octave_band_matrix(cfg)
    # band envelopes, shape (bands, frames)
    Xb = np.sqrt(octmat @ (np.abs(X) ** 2).T)
    Yb = np.sqrt(octmat @ (np.abs(Y) ** 2).T)
    N = cfg.stoi_seg_frames
    clip = 10.0 ** (-cfg.stoi_clip_db / 20.0)
    scores = []
    for m in range(N, Xb.shape[1] + 1):
        xs = Xb[:, m - N : m]
        ys = Yb[:, m - N : m]
        scale = np.linalg.norm(xs, axis=1, keepdims=True) / (
            np.linalg.norm(ys, axis=1, keepdims=True) + _EPS
        )
        ys = np.minimum(ys * scale, xs * (1.0 + clip))
        xc = xs - xs.mean(axis=1, keepdims=True)
        yc = ys - ys.mean(axis=1, keepdims=True)
        denom = np.linalg.norm(xc, axis=1) * np.linalg.norm(yc, axis=1)
        corr = np.sum(xc * yc, axis=1) / np.maximum(denom, _EPS)
        scores.append(corr)
    d = float(np.mean(scores))
    return float(np.clip(d, 0.0, 1.0))


def evaluate(clean: Signal, processed: Signal, which=("llr", "fwsnrseg", "stoi"),
             cfg: MetricConfig = MetricConfig()) -> MetricReport:
    """Compute the requested metrics for a clean/processed pair."""
    report = MetricReport()
    for name in which:
        if name == "llr":
            report.llr = llr(clean, processed, cfg)
        elif name == "fwsnrseg":
            report.fwsnrseg_db = fwsnrseg(clean, processed, cfg)
        elif name == "stoi":
            report.stoi = stoi(clean, processed, cfg)
            report.stoi_pct = float(map_intelligibility(report.stoi, STOI_MAP_A, STOI_MAP_B))
        else:
            raise ValueError(f"unknown metric: {name!r}")
    return report
