import json

import numpy as np
import pytest

from hhtalpha import Signal, estimate_alpha, read_wav, write_wav
from hhtalpha.cli import main

from conftest import make_speech_proxy

RATE = 16000


@pytest.fixture()
def clean_wav(tmp_path):
    path = tmp_path / "clean.wav"
    write_wav(Signal(make_speech_proxy(n=16384, bursts=((0.1, 0.3), (0.55, 0.3))), RATE), path)
    return path


def run(*args):
    return main([str(a) for a in args])


class TestSynthNoise:
    def test_gaussian_file(self, tmp_path):
        out = tmp_path / "g.wav"
        assert run("synth-noise", "--alpha", 2.0, "--duration", 2.4, "--rate", RATE,
                   "--seed", 1, "--out", out) == 0
        sig = read_wav(out)
        assert len(sig) == 38400
        assert np.max(np.abs(sig.samples)) == pytest.approx(0.5, abs=1e-6)
        assert estimate_alpha(sig.samples).alpha >= 1.95

    def test_impulsive_file(self, tmp_path):
        out = tmp_path / "i.wav"
        assert run("synth-noise", "--alpha", 1.2, "--duration", 2.0, "--seed", 2,
                   "--out", out) == 0
        a = estimate_alpha(read_wav(out).samples).alpha
        assert 1.1 <= a <= 1.3

    def test_alpha_out_of_range(self, tmp_path):
        assert run("synth-noise", "--alpha", 2.5, "--duration", 1.0,
                   "--out", tmp_path / "x.wav") == 1


class TestMix:
    def test_zero_db_equal_powers(self, tmp_path, clean_wav):
        noise_path = tmp_path / "n.wav"
        run("synth-noise", "--alpha", 2.0, "--duration", 2.0, "--seed", 3,
            "--out", noise_path)
        out = tmp_path / "mix.wav"
        assert run("mix", "--clean", clean_wav, "--noise", noise_path,
                   "--snr-db", 0, "--out", out, "--seed", 4) == 0
        clean = read_wav(clean_wav)
        mixed = read_wav(out)
        added = mixed.samples - clean.samples
        from hhtalpha.cli import _active_mask
        act = _active_mask(clean.samples, RATE)
        snr = 10 * np.log10(np.mean(clean.samples[act] ** 2) / np.mean(added ** 2))
        assert snr == pytest.approx(0.0, abs=0.01)

    def test_minus_ten_db(self, tmp_path, clean_wav):
        noise_path = tmp_path / "n.wav"
        run("synth-noise", "--alpha", 2.0, "--duration", 2.0, "--seed", 3,
            "--out", noise_path)
        out = tmp_path / "mix.wav"
        run("mix", "--clean", clean_wav, "--noise", noise_path, "--snr-db", -10,
            "--out", out, "--seed", 4)
        clean = read_wav(clean_wav)
        added = read_wav(out).samples - clean.samples
        from hhtalpha.cli import _active_mask
        act = _active_mask(clean.samples, RATE)
        ratio = np.mean(added ** 2) / np.mean(clean.samples[act] ** 2)
        assert ratio == pytest.approx(10.0, rel=0.01)

    def test_seed_determinism(self, tmp_path, clean_wav):
        noise_path = tmp_path / "n.wav"
        run("synth-noise", "--alpha", 1.5, "--duration", 0.5, "--seed", 3,
            "--out", noise_path)
        a, b = tmp_path / "a.wav", tmp_path / "b.wav"
        run("mix", "--clean", clean_wav, "--noise", noise_path, "--snr-db", 5,
            "--out", a, "--seed", 9)
        run("mix", "--clean", clean_wav, "--noise", noise_path, "--snr-db", 5,
            "--out", b, "--seed", 9)
        assert a.read_bytes() == b.read_bytes()

    def test_rate_mismatch(self, tmp_path, clean_wav):
        noise_path = tmp_path / "n8k.wav"
        write_wav(Signal(np.random.default_rng(0).standard_normal(8000) * 0.1, 8000),
                  noise_path)
        assert run("mix", "--clean", clean_wav, "--noise", noise_path,
                   "--snr-db", 0, "--out", tmp_path / "x.wav") == 1


class TestEval:
    def test_identity_report(self, tmp_path, clean_wav, capsys):
        assert run("eval", "--clean", clean_wav, "--processed", clean_wav) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["llr"] == 0.0
        assert report["fwsnrseg_db"] == 35.0
        assert report["stoi"] >= 0.999
        assert "stoi_pct" in report

    def test_metric_subset(self, tmp_path, clean_wav, capsys):
        assert run("eval", "--clean", clean_wav, "--processed", clean_wav,
                   "--metrics", "llr,fwsnrseg") == 0
        report = json.loads(capsys.readouterr().out)
        assert set(report) == {"llr", "fwsnrseg_db"}

    def test_unknown_metric_fails(self, clean_wav):
        assert run("eval", "--clean", clean_wav, "--processed", clean_wav,
                   "--metrics", "pesq") == 1


class TestDecompose:
    def test_writes_modes_and_residual(self, tmp_path, clean_wav):
        prefix = str(tmp_path / "dec_")
        assert run("decompose", "--in", clean_wav, "--out-prefix", prefix,
                   "--ensemble", 3, "--modes", 6, "--seed", 1) == 0
        files = sorted(tmp_path.glob("dec_IMF_*.wav"))
        assert len(files) == 6
        total = sum(read_wav(f).samples for f in files)
        total += read_wav(tmp_path / "dec_residual.wav").samples
        x = read_wav(clean_wav).samples
        assert np.max(np.abs(total - x)) < 1e-6 * np.max(np.abs(x))

    def test_constant_input_residual_only(self, tmp_path):
        path = tmp_path / "const.wav"
        write_wav(Signal(np.full(4096, 0.25), RATE), path)
        prefix = str(tmp_path / "c_")
        assert run("decompose", "--in", path, "--out-prefix", prefix,
                   "--ensemble", 1, "--seed", 0) == 0
        assert not list(tmp_path.glob("c_IMF_*.wav"))
        res = read_wav(tmp_path / "c_residual.wav")
        np.testing.assert_allclose(res.samples, 0.25, atol=1e-6)


class TestEnhanceCommand:
    def test_output_shape_and_profile(self, tmp_path, clean_wav):
        out = tmp_path / "enh.wav"
        csv_path = tmp_path / "prof.csv"
        assert run("enhance", "--in", clean_wav, "--out", out,
                   "--frame", 4096, "--step", 512, "--ensemble", 3,
                   "--modes", 6, "--seed", 7, "--profile", csv_path) == 0
        sig = read_wav(out)
        clean = read_wav(clean_wav)
        assert len(sig) == len(clean) and sig.sample_rate == clean.sample_rate
        header = csv_path.read_text().splitlines()[0]
        assert header.startswith("alpha_1") and header.endswith("alpha_u,rho_alpha,Z")

    def test_seed_determinism(self, tmp_path, clean_wav):
        a, b = tmp_path / "a.wav", tmp_path / "b.wav"
        for out in (a, b):
            assert run("enhance", "--in", clean_wav, "--out", out,
                       "--frame", 4096, "--step", 512, "--ensemble", 3,
                       "--modes", 6, "--seed", 7) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_paper_defaults_accepted(self, tmp_path, clean_wav):
        parser_args = ["enhance", "--in", str(clean_wav), "--out",
                       str(tmp_path / "o.wav"), "--mu", "0.8", "--alpha-min", "1.1",
                       "--frame", "10240", "--step", "128"]
        from hhtalpha.cli import build_parser
        args = build_parser().parse_args(parser_args)
        assert args.mu == 0.8 and args.alpha_min == 1.1
        assert args.frame == 10240 and args.step == 128
        assert args.ensemble == 50 and args.modes == 10

    def test_missing_file_fails(self, tmp_path):
        assert run("enhance", "--in", tmp_path / "nope.wav",
                   "--out", tmp_path / "o.wav") == 1
