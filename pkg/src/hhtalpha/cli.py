"""Command-line entry points: enhance, decompose, alpha, mix, synth-noise, eval."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .enhance import EnhanceConfig, apply_selection, profile_alpha
from .enhance import enhance as run_enhance
from .metrics import evaluate
from .emd import EemdConfig, EmdConfig, eemd
from .signal import Signal, frame_grid, read_wav, write_wav
from .stable import default_lookup, estimate_alpha, sample_sas


def _eemd_config(args) -> EemdConfig:
    return EemdConfig(
        emd=EmdConfig(max_modes=args.modes),
        ensemble_size=args.ensemble,
        ensemble_snr_db=args.ensemble_snr,
        master_seed=args.seed,
    )


def _add_eemd_flags(p):
    p.add_argument("--ensemble", type=int, default=50, help="ensemble size N (default 50)")
    p.add_argument("--ensemble-snr", type=float, default=30.0,
                   help="ensemble noise SNR in dB (default 30)")
    p.add_argument("--modes", type=int, default=10, help="number of modes M (default 10)")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")


def cmd_enhance(args) -> int:
    noisy = read_wav(args.infile)
    cfg = EnhanceConfig(
        eemd=_eemd_config(args),
        frame_len=args.frame,
        step=args.step,
        mu=args.mu,
        alpha_min=args.alpha_min,
        threshold_combine=args.threshold_mode.replace("-", "_"),
    )
    enhanced, profile = run_enhance(noisy, cfg)
    write_wav(enhanced, args.outfile)
    if args.profile:
        profile.write_csv(args.profile)
    return 0


def cmd_decompose(args) -> int:
    signal = read_wav(args.infile)
    imfs = eemd(signal, _eemd_config(args))
    for m, mode in enumerate(imfs.modes, start=1):
        write_wav(mode, f"{args.out_prefix}IMF_{m:02d}.wav")
    write_wav(imfs.residual, f"{args.out_prefix}residual.wav")
    print(f"wrote {imfs.mode_count} modes + residual with prefix {args.out_prefix}")
    return 0


def cmd_alpha(args) -> int:
    signal = read_wav(args.infile)
    imfs = eemd(signal, _eemd_config(args))
    grid = frame_grid(len(signal), args.frame, args.step)
    profile = profile_alpha(imfs, signal, grid)
    cfg = EnhanceConfig(
        frame_len=args.frame, step=args.step, mu=args.mu, alpha_min=args.alpha_min,
        threshold_combine=args.threshold_mode.replace("-", "_"),
    )
    apply_selection(profile, cfg)
    profile.write_csv(args.outfile)
    return 0


def cmd_mix(args) -> int:
    clean = read_wav(args.clean)
    noise = read_wav(args.noise)
    if clean.sample_rate != noise.sample_rate:
        raise ValueError("clean and noise sample rates differ")
    rng = np.random.default_rng(args.seed)
    n = noise.samples
    if len(n) < len(clean):
        n = np.tile(n, -(-len(clean) // len(n)))
    offset = int(rng.integers(0, len(n) - len(clean) + 1))
    n = n[offset : offset + len(clean)]
    active = _active_mask(clean.samples, clean.sample_rate)
    p_clean = float(np.mean(clean.samples[active] ** 2))
    p_noise = float(np.mean(n ** 2))
    if p_noise == 0.0:
        raise ValueError("noise file is silent")
    gain = np.sqrt(p_clean / p_noise * 10.0 ** (-args.snr_db / 10.0))
    write_wav(Signal(clean.samples + gain * n, clean.sample_rate), args.outfile)
    return 0


def _active_mask(x: np.ndarray, rate: int, frame_ms=32.0, floor_db=40.0) -> np.ndarray:
    """Sample mask covering frames within floor_db of the loudest frame."""
    n = int(round(frame_ms * rate / 1000.0))
    if len(x) < n:
        return np.ones(len(x), bool)
    count = len(x) // n
    energy = np.sum(x[: count * n].reshape(count, n) ** 2, axis=1)
    keep = energy >= energy.max() * 10.0 ** (-floor_db / 10.0)
    mask = np.zeros(len(x), bool)
    mask[: count * n] = np.repeat(keep, n)
    mask[count * n :] = keep[-1] if count else True
    return mask


def cmd_synth_noise(args) -> int:
    n = int(round(args.duration * args.rate))
    samples = sample_sas(args.alpha, n, args.seed)
    peak = np.max(np.abs(samples))
    if peak > 0:
        samples = samples / peak * 0.5
    write_wav(Signal(samples, args.rate), args.outfile)
    return 0


def cmd_eval(args) -> int:
    clean = read_wav(args.clean)
    processed = read_wav(args.processed)
    which = [m.strip() for m in args.metrics.split(",") if m.strip()]
    for name in which:
        if name not in ("llr", "fwsnrseg", "stoi"):
            raise ValueError(f"unknown metric: {name!r}")
    report = evaluate(clean, processed, which)
    print(report.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hht-alpha",
        description="Time-domain impulsive-noise speech enhancement toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enhance", help="enhance a noisy mono WAV file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--frame", type=int, default=10240, help="frame length T_d (default 10240)")
    p.add_argument("--step", type=int, default=128, help="frame step S_d (default 128)")
    p.add_argument("--mu", type=float, default=0.8, help="threshold scale mu (default 0.8)")
    p.add_argument("--alpha-min", type=float, default=1.1,
                   help="threshold floor alpha_min (default 1.1)")
    p.add_argument("--threshold-mode", choices=["floor", "literal-min"], default="floor")
    p.add_argument("--profile", help="optional CSV path for the per-frame alpha profile")
    _add_eemd_flags(p)
    p.set_defaults(func=cmd_enhance)

    p = sub.add_parser("decompose", help="write the modes and residual of a WAV file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out-prefix", required=True)
    _add_eemd_flags(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("alpha", help="dump the per-frame alpha profile as CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--frame", type=int, default=10240)
    p.add_argument("--step", type=int, default=128)
    p.add_argument("--mu", type=float, default=0.8)
    p.add_argument("--alpha-min", type=float, default=1.1)
    p.add_argument("--threshold-mode", choices=["floor", "literal-min"], default="floor")
    _add_eemd_flags(p)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("mix", help="mix clean speech with noise at a target SNR")
    p.add_argument("--clean", required=True)
    p.add_argument("--noise", required=True)
    p.add_argument("--snr-db", type=float, required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_mix)

    p = sub.add_parser("synth-noise", help="generate impulsive alpha-stable noise")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--duration", type=float, required=True, help="seconds")
    p.add_argument("--rate", type=int, default=16000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", dest="outfile", required=True)
    p.set_defaults(func=cmd_synth_noise)

    p = sub.add_parser("eval", help="objective metrics for a clean/processed pair")
    p.add_argument("--clean", required=True)
    p.add_argument("--processed", required=True)
    p.add_argument("--metrics", default="llr,fwsnrseg,stoi",
                   help="comma-separated subset of llr,fwsnrseg,stoi")
    p.set_defaults(func=cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
