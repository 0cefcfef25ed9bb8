import subprocess
import sys

import numpy as np
import pytest

from morlet_ridge.cli import main
from morlet_ridge.formats import read_ridge_csv, read_scalogram, read_signal_csv

CHIRP = ["synth", "--kind", "linear_chirp", "--n", "4096", "--dt", "1e-3", "--f0", "20", "--rate", "10"]
COSINE = ["synth", "--kind", "sinusoid", "--n", "4096", "--dt", "1e-3", "--freq", "50"]
# 50 Hz sits exactly on this grid: 200 * 2**(-16/8)
BAND = ["--fmin", "10", "--fmax", "200"]


def probe_values(capsys, sigma):
    assert main(["probe", "--sigma", str(sigma)]) == 0
    lines = capsys.readouterr().out.splitlines()
    return {k.strip(): float(v) for k, v in (line.split("=") for line in lines)}


def test_probe_large_sigma(capsys):
    values = probe_values(capsys, 10)
    assert values["p"] == pytest.approx(0.7511256, abs=1e-7)
    assert values["q"] == pytest.approx(0.7511256, abs=1e-7)


def test_probe_sigma2(capsys):
    values = probe_values(capsys, 2)
    assert values["env_var"] == pytest.approx(0.610864, abs=1e-6)
    assert set(values) == {"sigma", "kappa", "p", "q", "env_var", "omega_p"}


def test_probe_prints_15_digits(capsys):
    main(["probe", "--sigma", "2"])
    line = [l for l in capsys.readouterr().out.splitlines() if l.startswith("p =")][0]
    assert len(line.split("=")[1].strip().replace(".", "").lstrip("0")) == 15


def test_probe_domain_error(capsys):
    assert main(["probe", "--sigma", "0.1"]) == 2
    assert "error" in capsys.readouterr().err


def test_probe_csv(tmp_path):
    out = tmp_path / "psi.csv"
    assert main(["probe", "--sigma", "5", "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "t,re,im"
    assert len(rows) == 1 + 1025
    assert rows[1].startswith("-8.0,") and rows[-1].startswith("8.0,")


def test_synth_rows_and_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["synth", "--kind", "sinusoid", "--n", "8", "--dt", "0.1", "--noise", "0.1", "--seed", "17"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text().splitlines()
    assert sum(1 for l in text if l and l[0] not in "#t") == 8
    assert "# seed: 17" in text and any(l.startswith("# noise_algorithm:") for l in text)


def test_synth_errors(tmp_path):
    assert main(["synth", "--kind", "sinusoid", "--n", "8", "--dt", "0.1", "--freq", "9",
                 "--out", str(tmp_path / "x.csv")]) == 2
    assert main(["synth", "--kind", "sinusoid", "--n", "8", "--dt", "0.1",
                 "--out", str(tmp_path / "missing" / "x.csv")]) == 3


def test_synth_rdf_shells(tmp_path):
    out = tmp_path / "rdf.csv"
    assert main(["synth", "--kind", "rdf_like", "--n", "100", "--dt", "0.05",
                 "--shell", "1,3,0.5,0.01", "--shell", "0.5,2,0.8,0", "--out", str(out)]) == 0
    assert len(read_signal_csv(out)) == 100


@pytest.fixture
def chirp_csv(tmp_path):
    path = tmp_path / "chirp.csv"
    assert main(CHIRP + ["--out", str(path)]) == 0
    return path


@pytest.fixture
def cosine_csv(tmp_path):
    path = tmp_path / "cos.csv"
    assert main(COSINE + ["--out", str(path)]) == 0
    return path


def run_pipeline(tmp_path, signal_csv, tag, extra=(), penalty="0"):
    wscg, ridge = tmp_path / f"{tag}.wscg", tmp_path / f"{tag}.csv"
    assert main(["cwt", str(signal_csv), "--out", str(wscg), *BAND, *extra]) == 0
    assert main(["ridge", str(wscg), "--out", str(ridge), "--penalty", penalty]) == 0
    return wscg, ridge


def test_synth_output_consumed_by_cwt(tmp_path, chirp_csv):
    signal = read_signal_csv(chirp_csv)
    assert len(signal) == 4096 and signal.dt == 1e-3
    wscg, _ = run_pipeline(tmp_path, chirp_csv, "c")
    assert read_scalogram(wscg, 5.0).n_samples == 4096


def test_chirp_pipeline(tmp_path, chirp_csv):
    _, ridge = run_pipeline(tmp_path, chirp_csv, "c")
    cols = read_ridge_csv(ridge)
    ok = cols["edge_ok"]
    assert np.max(np.abs(cols["freq"][ok] / (20 + 10 * cols["b"][ok]) - 1)) < 0.02


def test_cosine_pipeline(tmp_path, cosine_csv):
    _, ridge = run_pipeline(tmp_path, cosine_csv, "c")
    cols = read_ridge_csv(ridge)
    ok = cols["edge_ok"]
    assert np.max(np.abs(cols["amp"][ok] - 1)) < 0.01


def test_engines_agree_downstream(tmp_path, chirp_csv):
    _, fast = run_pipeline(tmp_path, chirp_csv, "fast")
    _, slow = run_pipeline(tmp_path, chirp_csv, "slow", ["--engine", "direct"])
    a, b = read_ridge_csv(fast), read_ridge_csv(slow)
    np.testing.assert_array_equal(a["edge_ok"], b["edge_ok"])
    ok = a["edge_ok"]
    np.testing.assert_allclose(a["freq"][ok], b["freq"][ok], rtol=1e-6)
    np.testing.assert_allclose(a["amp"][ok], b["amp"][ok], rtol=1e-6)


def test_pgm_brightest_row(tmp_path, cosine_csv):
    wscg, pgm = tmp_path / "c.wscg", tmp_path / "c.pgm"
    assert main(["cwt", str(cosine_csv), "--out", str(wscg), "--pgm", str(pgm), *BAND, "--engine", "direct"]) == 0
    sc = read_scalogram(wscg, 5.0)
    blob = pgm.read_bytes()
    header = f"P5\n4096 {len(sc.scales)}\n65535\n".encode()
    pixels = np.frombuffer(blob[len(header):], ">u2").reshape(len(sc.scales), 4096)
    target = sc.shape.peak_frequency / (2 * np.pi * 50)
    nearest = int(np.argmin(np.abs(np.log(sc.scales / target))))
    brightest = np.argmax(pixels[:, 1000:3000], axis=0)
    assert np.all(brightest == nearest)
    np.testing.assert_array_equal(brightest, np.argmax(sc.modulus[:, 1000:3000], axis=0))


def test_zero_signal_cwt_and_ridge(tmp_path, capsys):
    sig = tmp_path / "zero.csv"
    sig.write_text("\n".join(["0"] * 64) + "\n")
    wscg = tmp_path / "zero.wscg"
    assert main(["cwt", str(sig), "--dt", "1", "--out", str(wscg), "--fmin", "0.1", "--fmax", "0.2"]) == 0
    assert np.all(read_scalogram(wscg, 5.0).coefficients == 0)
    assert main(["ridge", str(wscg), "--out", str(tmp_path / "r.csv")]) == 5


def test_cwt_resolution_errors(tmp_path, cosine_csv, capsys):
    out = str(tmp_path / "x.wscg")
    assert main(["cwt", str(cosine_csv), "--out", out, "--fmin", "10", "--fmax", "600"]) == 4
    assert "scale" in capsys.readouterr().err
    assert main(["cwt", str(cosine_csv), "--out", out, "--fmin", "0.5", "--fmax", "100"]) == 4
    assert "scale" in capsys.readouterr().err


def test_cwt_parse_and_io_errors(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,value\n0,x\n")
    out = str(tmp_path / "x.wscg")
    assert main(["cwt", str(bad), "--out", out]) == 2
    assert main(["cwt", str(tmp_path / "nope.csv"), "--out", out]) == 3
    assert main(["cwt", str(bad), "--out", out, "--fmin", "-1", "--fmax", "2"]) == 2


def test_ridge_malformed(tmp_path):
    junk = tmp_path / "junk.wscg"
    junk.write_bytes(b"NOPE" + bytes(40))
    assert main(["ridge", str(junk), "--out", str(tmp_path / "r.csv")]) == 2


def test_verify_pass(capsys):
    assert main(["verify", "--sigma", "1,2,5", "--tol", "1e-10"]) == 0
    out = capsys.readouterr().out
    assert "zero_mean" in out and "FAIL" not in out.upper().replace("FAILED: 0", "")


def test_verify_perturbed_kappa(capsys):
    assert main(["verify", "--sigma", "1,2,5", "--tol", "1e-10", "--kappa-scale", "1.001"]) == 1
    err = capsys.readouterr().err
    assert "zero_mean" in err and "residual" in err


def test_verify_domain_gate(capsys, monkeypatch):
    import morlet_ridge.verify as verify

    calls = []
    monkeypatch.setattr(verify, "integrate", lambda *a, **k: calls.append(1))
    assert main(["verify", "--sigma", "1,0.1,5"]) == 2
    assert calls == []


def test_rerun_byte_identical_across_jobs(tmp_path, chirp_csv):
    outputs = []
    for jobs in ("1", "1", "4"):
        tag = f"j{jobs}_{len(outputs)}"
        wscg, ridge = run_pipeline(tmp_path, chirp_csv, tag, ["--jobs", jobs], penalty="0.5")
        outputs.append((wscg.read_bytes(), ridge.read_bytes()))
    assert outputs[0] == outputs[1] == outputs[2]


def test_console_entry_point(tmp_path):
    done = subprocess.run([sys.executable, "-m", "morlet_ridge", "probe", "--sigma", "2"],
                          capture_output=True, text=True)
    assert done.returncode == 0
    assert "env_var = 0.61086" in done.stdout
