import numpy as np

from hypervlc.cli import main
from hypervlc.pgm import read_pgm, write_pgm

FAST = ["--set", "bits_per_point=5040", "--set", "snr_grid_db=5,25"]


def test_sweep_ber_to_file_deterministic(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    args = ["sweep-ber", *FAST, "--seed", "3"]
    assert main([*args, "--out", str(out1)]) == 0
    assert main([*args, "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0] == "snr_db,scheme,scrambler_mode,role,ber,leakage,frames,seed"
    assert len(lines) == 5


def test_sweep_leakage_stdout(capsys):
    assert main(["sweep-leakage", *FAST, "--roles", "eavesdropper",
                 "--seed", "4"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("snr_db,")
    assert len(out.splitlines()) == 3


def test_set_override_changes_output(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert main(["sweep-ber", *FAST, "--seed", "3", "--out", str(a)]) == 0
    assert main(["sweep-ber", "--set", "bits_per_point=5040",
                 "--set", "snr_grid_db=5,25", "--set", "scheme=bpsk",
                 "--seed", "3", "--out", str(b)]) == 0
    assert a.read_bytes() != b.read_bytes()


def test_config_file_and_unknown_key(tmp_path):
    cfg = tmp_path / "link.cfg"
    cfg.write_text("scheme=qpsk\nbits_per_point=5040\nsnr_grid_db=25\n")
    assert main(["sweep-ber", "--config", str(cfg), "--seed", "1",
                 "--out", str(tmp_path / "ok.csv")]) == 0
    bad = tmp_path / "bad.cfg"
    bad.write_text("warp_factor=9\n")
    assert main(["sweep-ber", "--config", str(bad)]) == 1


def test_invalid_override_exits_nonzero():
    assert main(["sweep-ber", "--set", "scheme=64qam"]) == 1
    assert main(["sweep-ber", "--set", "nonsense"]) == 1


def test_send_image_round_trip(tmp_path, test_image):
    src = tmp_path / "in.pgm"
    dst = tmp_path / "out.pgm"
    rpt = tmp_path / "report.csv"
    write_pgm(src, test_image)
    rc = main(["send-image", "--image", str(src), "--recovered", str(dst),
               "--snr", "25", "--seed", "11", "--out", str(rpt)])
    assert rc == 0
    recovered = read_pgm(dst)
    assert np.array_equal(recovered, test_image)
    header = rpt.read_text().splitlines()[0]
    assert header.startswith("snr_db,") and "ks_p_value" in header


def test_send_image_deterministic(tmp_path, test_image):
    src = tmp_path / "in.pgm"
    write_pgm(src, test_image)
    outs = []
    for name in ("r1.pgm", "r2.pgm"):
        dst = tmp_path / name
        assert main(["send-image", "--image", str(src), "--recovered",
                     str(dst), "--snr", "10", "--seed", "2",
                     "--out", str(tmp_path / (name + ".csv"))]) == 0
        outs.append(dst.read_bytes())
    assert outs[0] == outs[1]
    assert (tmp_path / "r1.pgm.csv").read_bytes() == \
        (tmp_path / "r2.pgm.csv").read_bytes()


def test_send_image_eavesdropper_garbled(tmp_path, test_image):
    src = tmp_path / "in.pgm"
    dst = tmp_path / "eve.pgm"
    write_pgm(src, test_image)
    rc = main(["send-image", "--image", str(src), "--recovered", str(dst),
               "--snr", "25", "--seed", "11", "--set", "role=eavesdropper",
               "--out", str(tmp_path / "eve.csv")])
    assert rc == 0
    eve = read_pgm(dst)
    assert np.mean(eve != test_image) > 0.9
    row = (tmp_path / "eve.csv").read_text().splitlines()[1].split(",")
    assert float(row[7]) < 1e-10  # ks_p_value column


def test_sync_demo(tmp_path):
    out = tmp_path / "sync.csv"
    assert main(["sync-demo", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "iteration,e1,e2,e3,e4,sup_norm"
    assert len(lines) > 2
    # strict tolerance that cannot be met in one iteration
    assert main(["sync-demo", "--tol", "0", "--max-iter", "3",
                 "--out", str(tmp_path / "fail.csv")]) == 3


def test_bench_cli(tmp_path):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--sizes", "64,128", "--symbols", "2048",
                 "--repeats", "1", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n_fft,mode,frames,seconds_per_frame"
    assert len(lines) == 5


def test_missing_image_errors(tmp_path):
    rc = main(["send-image", "--image", str(tmp_path / "nope.pgm"),
               "--recovered", str(tmp_path / "out.pgm")])
    assert rc == 1
