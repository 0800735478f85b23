"""Signal container, mono WAV I/O, framing, windowing and overlap-add."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.io import wavfile
from scipy.signal import resample_poly

# Overlap sums below this level are treated as "no window coverage" and the
# corresponding output samples are emitted as zero.
OVERLAP_EPS = 1e-8


@dataclass(frozen=True)
class Signal:
    """Mono sample sequence with its sample rate.

    Samples are stored as a float64 array, nominally in [-1, 1].
    """

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError("Signal requires a 1-D sample array")
        if not np.all(np.isfinite(samples)):
            raise ValueError("Signal samples must be finite")
        if int(self.sample_rate) <= 0:
            raise ValueError("sample_rate must be positive")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))

    def __len__(self):
        return len(self.samples)

    @property
    def duration(self) -> float:
        """Length in seconds."""
        return len(self.samples) / self.sample_rate


@dataclass(frozen=True)
class FrameGrid:
    """Overlapping frame layout: frames of `frame_len` samples every `step`."""

    frame_len: int
    step: int
    count: int
    total_len: int


@dataclass(frozen=True)
class Window:
    """Precomputed window coefficients for one frame length."""

    kind: str
    values: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.values)


def make_window(kind: str, length: int) -> Window:
    """Build a window of the given kind ("hann" or "rectangular").

    The Hann window uses half-sample-centred sampling,
    w[k] = 0.5 * (1 - cos(2*pi*(k + 0.5)/length)), which is symmetric,
    strictly positive, and sums to a constant under any hop that divides
    the frame length.
    """
    if length <= 0:
        raise ValueError("window length must be positive")
    if kind == "hann":
        k = np.arange(length)
        values = 0.5 * (1.0 - np.cos(2.0 * np.pi * (k + 0.5) / length))
    elif kind == "rectangular":
        values = np.ones(length)
    else:
        raise ValueError(f"unknown window kind: {kind!r}")
    return Window(kind=kind, values=values)


def frame_grid(total_len: int, frame_len: int, step: int) -> FrameGrid:
    """Lay out overlapping frames over a signal of `total_len` samples.

    Frame q covers [q*step, q*step + frame_len); frames running past the end
    are zero-padded.  The count is the smallest Q with Q*step >= total_len,
    so every sample is covered by at least one frame.
    """
    if frame_len <= 0:
        raise ValueError("frame_len must be positive")
    if step <= 0 or step > frame_len:
        raise ValueError("step must satisfy 0 < step <= frame_len")
    if total_len < 0:
        raise ValueError("total_len must be non-negative")
    count = math.ceil(total_len / step)
    return FrameGrid(frame_len=frame_len, step=step, count=count, total_len=total_len)


def extract_frames(samples: np.ndarray, grid: FrameGrid) -> np.ndarray:
    """Cut `samples` into the grid's frames as a (count, frame_len) array.

    Positions past the end of the signal are zero.
    """
    samples = np.asarray(samples, dtype=np.float64)
    if len(samples) != grid.total_len:
        raise ValueError("sample count does not match grid.total_len")
    padded = np.zeros((grid.count - 1) * grid.step + grid.frame_len if grid.count else 0)
    padded[: grid.total_len] = samples
    out = np.empty((grid.count, grid.frame_len))
    for q in range(grid.count):
        start = q * grid.step
        out[q] = padded[start : start + grid.frame_len]
    return out


def overlap_add(frames: np.ndarray, grid: FrameGrid, window: Window,
                sample_rate: int = 1) -> Signal:
    """Reassemble windowed frames by overlap-add with pointwise normalization.

    Each output sample is divided by the window-overlap sum
    P(t) = sum_q w(t - q*step); samples where P(t) < 1e-8 are emitted as 0.
    The result is trimmed to grid.total_len.
    """
    frames = np.asarray(frames, dtype=np.float64)
    if frames.shape != (grid.count, grid.frame_len):
        raise ValueError("frames shape does not match grid")
    if len(window.values) != grid.frame_len:
        raise ValueError("window length does not match grid.frame_len")
    ext = (grid.count - 1) * grid.step + grid.frame_len if grid.count else 0
    acc = np.zeros(ext)
    overlap = np.zeros(ext)
    for q in range(grid.count):
        start = q * grid.step
        acc[start : start + grid.frame_len] += frames[q]
        overlap[start : start + grid.frame_len] += window.values
    covered = overlap >= OVERLAP_EPS
    out = np.zeros(ext)
    out[covered] = acc[covered] / overlap[covered]
    return Signal(out[: grid.total_len], sample_rate)


def window_frames(samples: np.ndarray, grid: FrameGrid, window: Window) -> np.ndarray:
    """Frame `samples` on the grid and apply the window to every frame."""
    return extract_frames(samples, grid) * window.values


def read_wav(path) -> Signal:
    """Read a mono PCM16 or float32 WAV file.

    PCM16 samples are scaled by 1/32768 so that -32768 maps to -1.0.
    """
    rate, data = wavfile.read(path)
    if data.ndim != 1:
        raise ValueError(f"expected mono WAV, got {data.shape[1]} channels: {path}")
    if data.dtype == np.int16:
        samples = data.astype(np.float64) / 32768.0
    elif data.dtype == np.float32:
        samples = data.astype(np.float64)
    else:
        raise ValueError(f"unsupported WAV encoding {data.dtype}: {path}")
    return Signal(samples, rate)


def write_wav(signal: Signal, path) -> None:
    """Write a Signal as a float32 mono WAV file (lossless round-trip)."""
    wavfile.write(path, signal.sample_rate, signal.samples.astype(np.float32))


def resample(signal: Signal, target_rate: int) -> Signal:
    """Polyphase rate conversion to `target_rate` Hz.

    Output length is round(len * target/source).
    """
    if target_rate <= 0:
        raise ValueError("target_rate must be positive")
    if target_rate == signal.sample_rate:
        return signal
    g = math.gcd(target_rate, signal.sample_rate)
    up = target_rate // g
    down = signal.sample_rate // g
    out = resample_poly(signal.samples, up, down)
    want = round(len(signal) * target_rate / signal.sample_rate)
    if len(out) > want:
        out = out[:want]
    elif len(out) < want:
        out = np.pad(out, (0, want - len(out)))
    return Signal(out, target_rate)
