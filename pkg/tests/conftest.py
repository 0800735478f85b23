import numpy as np
import pytest
from scipy.signal import butter, lfilter

from hhtalpha import Signal, sample_sas

RATE = 16000


def make_speech_proxy(n=38400, rate=RATE, seed=5,
                      bursts=((0.2, 0.3), (0.75, 0.25), (1.3, 0.3), (1.9, 0.25)),
                      breath=0.08):
    """Bursty harmonic signal standing in for clean speech.

    Hann-enveloped bursts of a 500 Hz harmonic stack plus a high-passed
    noise floor; the on/off bursts make the sample distribution heavy-tailed
    the way real speech is.
    """
    rng = np.random.default_rng(seed)
    t = np.arange(n) / rate
    env = np.zeros(n)
    for center, dur in bursts:
        i0 = int(center * rate)
        i1 = min(n, i0 + int(dur * rate))
        if i1 > i0:
            env[i0:i1] = np.hanning(i1 - i0)
    x = np.zeros(n)
    for k, a in [(1, 1.0), (2, 0.7), (3, 0.5), (4, 0.4), (6, 0.3), (8, 0.2)]:
        x += a * np.sin(2 * np.pi * 500 * k * t + rng.uniform(0, 2 * np.pi))
    b, a_ = butter(4, 400 / (rate / 2), "highpass")
    floor = lfilter(b, a_, rng.standard_normal(n)) * breath
    return env * (x + floor)


def mix_at_snr(clean: np.ndarray, noise: np.ndarray, snr_db: float) -> np.ndarray:
    """Scale `noise` so 10*log10(P_clean/P_noise) == snr_db, then add."""
    p_clean = np.mean(clean ** 2)
    p_noise = np.mean(noise ** 2)
    gain = np.sqrt(p_clean / p_noise * 10.0 ** (-snr_db / 10.0))
    return clean + gain * noise


@pytest.fixture(scope="session")
def speech_proxy():
    return Signal(make_speech_proxy(), RATE)


@pytest.fixture(scope="session")
def noisy_pair(speech_proxy):
    """(clean, noisy) pair: proxy + alpha=1.2 impulsive noise at 0 dB."""
    noise = sample_sas(1.2, len(speech_proxy), 13)
    noisy = mix_at_snr(speech_proxy.samples, noise, 0.0)
    return speech_proxy, Signal(noisy, RATE)
