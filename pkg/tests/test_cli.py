import csv

import numpy as np
import pytest

from src.cli.main import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, parse_levels, run_cli
from src.watermark.grid import SensorGrid
from src.watermark.pgm import read_pgm, write_pgm


@pytest.fixture
def keys(tmp_path):
    pub, priv = tmp_path / "k.pub.json", tmp_path / "k.priv.json"
    assert run_cli(["keygen", "--tau", "8", "--out-pub", str(pub), "--out-priv", str(priv), "--seed", "3"]) == EXIT_OK
    return pub, priv


@pytest.fixture
def grid_file(tmp_path):
    path = tmp_path / "field.pgm"
    write_pgm(SensorGrid.random(np.random.default_rng(0), 16, 16), path)
    return path


def encrypt(tmp_path, pub, value, name):
    out = tmp_path / name
    assert run_cli(["encrypt", "--pub", str(pub), "--value", str(value), "--out", str(out)]) == EXIT_OK
    return out


def decrypt(capsys, pub, priv, path) -> str:
    capsys.readouterr()
    assert run_cli(["decrypt", "--pub", str(pub), "--priv", str(priv), "--in", str(path)]) == EXIT_OK
    return capsys.readouterr().out.strip()


def test_encrypt_decrypt(tmp_path, keys, capsys):
    pub, priv = keys
    assert decrypt(capsys, pub, priv, encrypt(tmp_path, pub, 5, "a.bin")) == "5"


def test_add_and_mul(tmp_path, keys, capsys):
    pub, priv = keys
    a, b = encrypt(tmp_path, pub, 5, "a.bin"), encrypt(tmp_path, pub, 3, "b.bin")
    total, product = tmp_path / "sum.bin", tmp_path / "prod.bin"
    assert run_cli(["add", "--pub", str(pub), "--in", str(a), str(b), "--out", str(total)]) == EXIT_OK
    assert run_cli(["mul", "--pub", str(pub), "--in", str(a), str(b), "--out", str(product)]) == EXIT_OK
    assert decrypt(capsys, pub, priv, total) == "8"
    assert decrypt(capsys, pub, priv, product) == "15"


def test_domain_error_exit_code(tmp_path, keys, capsys):
    pub, _ = keys
    code = run_cli(["encrypt", "--pub", str(pub), "--value", "1000000", "--out", str(tmp_path / "x.bin")])
    assert code == EXIT_DOMAIN
    assert "MessageOutOfRange" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["simulate", "--pipeline", "median"],
    ["bench", "--levels", "0-2"],
    ["encrypt"],
    ["frobnicate"],
    ["decrypt", "--pub", "no-such-key.json"],
    ["keygen", "--tau", "1"],
    ["simulate", "--tau", "1"],
    ["simulate", "--k", "-1"],
    ["simulate", "--max-reading", "-2"],
    ["bench", "--levels", "1", "--rounds", "0"],
    ["wm", "attack", "--in", "a.pgm", "--out", "b.pgm", "--type", "zero", "--param", "-3"],
    ["wm", "attack", "--in", "a.pgm", "--out", "b.pgm", "--type", "noise", "--param", "-0.5"],
    ["wm", "attack", "--in", "a.pgm", "--out", "b.pgm", "--type", "jpeg", "--param", "-1"],
    ["wm", "attack", "--in", "a.pgm", "--out", "b.pgm", "--type", "rotate", "--param", "nan"],
])
def test_usage_errors(argv, capsys):
    assert run_cli(argv) == EXIT_USAGE
    err = capsys.readouterr().err
    assert err.startswith("secagg: error:")
    assert len(err.strip().splitlines()) == 1


def test_parse_levels():
    assert parse_levels("1-4") == {1, 2, 3, 4}
    assert parse_levels("1,3") == {1, 3}


@pytest.mark.parametrize("pipeline", ["sum", "mean", "variance", "wmean"])
def test_simulate(tmp_path, capsys, pipeline):
    report, topology = tmp_path / "sim.csv", tmp_path / "topo.json"
    argv = ["simulate", "--sensors", "12", "--aggregators", "3", "--tau", "12", "--pipeline", pipeline,
            "--k", "1.0", "--report", str(report), "--topology-out", str(topology), "--seed", "4"]
    assert run_cli(argv) == EXIT_OK
    assert "oracle match" in capsys.readouterr().out
    lines = report.read_text().splitlines()
    assert lines[0].startswith("# secagg ")
    row = next(csv.DictReader(lines[1:]))
    assert row["match"] == "True"
    assert (row["truth_num"], row["truth_den"]) == (row["decrypted_num"], row["decrypted_den"])
    assert float(row["network_energy"]) > 0
    assert topology.exists()


def test_bench(tmp_path):
    report, series = tmp_path / "bench.csv", tmp_path / "series.csv"
    argv = ["bench", "--levels", "1", "--trials", "2", "--rounds", "3", "--k", "1.0",
            "--report", str(report), "--series", str(series)]
    assert run_cli(argv) == EXIT_OK
    rows = list(csv.DictReader(line for line in report.read_text().splitlines() if not line.startswith("#")))
    assert len(rows) == 4 and all(r["status"] == "ok" for r in rows)
    assert series.exists()


@pytest.mark.parametrize("mode", ["auth", "robust"])
def test_wm_embed_then_check(tmp_path, grid_file, capsys, mode):
    marked = tmp_path / "marked.pgm"
    assert run_cli(["wm", "embed", "--in", str(grid_file), "--key", "7", "--mode", mode, "--out", str(marked)]) == EXIT_OK
    capsys.readouterr()
    assert run_cli(["wm", "check", "--in", str(marked), "--key", "7", "--mode", mode]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "100.00"


def test_wm_explicit_watermark(tmp_path, grid_file, capsys):
    watermark, marked = tmp_path / "w.txt", tmp_path / "marked.pgm"
    watermark.write_text("1011 0010\n0111\n")
    base = ["--key", "2", "--watermark", str(watermark)]
    assert run_cli(["wm", "embed", "--in", str(grid_file), "--out", str(marked), *base]) == EXIT_OK
    capsys.readouterr()
    assert run_cli(["wm", "check", "--in", str(marked), *base]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "100.00"
    watermark.write_text("10x1")
    assert run_cli(["wm", "check", "--in", str(marked), *base]) == EXIT_USAGE


def test_wm_attack_and_view(tmp_path, grid_file):
    attacked = tmp_path / "attacked.pgm"
    assert run_cli(["wm", "attack", "--in", str(grid_file), "--out", str(attacked),
                    "--type", "zero", "--param", "4"]) == EXIT_OK
    assert np.count_nonzero(read_pgm(attacked).values == 0) >= 16
    msc, lsc = tmp_path / "msc.pgm", tmp_path / "lsc.pgm"
    assert run_cli(["wm", "view", "--in", str(grid_file), "--msc-out", str(msc), "--lsc-out", str(lsc)]) == EXIT_OK
    original = read_pgm(grid_file).values
    assert np.array_equal(read_pgm(msc).values, original & 0xF0)
    assert np.array_equal(read_pgm(lsc).values, (original & 0x0F) * 17)


def test_wm_suite(tmp_path, grid_file):
    report = tmp_path / "suite.csv"
    assert run_cli(["wm", "suite", "--in", str(grid_file), "--key", "1", "--report", str(report)]) == EXIT_OK
    rows = list(csv.DictReader(line for line in report.read_text().splitlines() if not line.startswith("#")))
    assert len(rows) == 24


def test_malformed_pgm_is_a_domain_error(tmp_path):
    bad = tmp_path / "bad.pgm"
    bad.write_bytes(b"P2 1 1 65535 9")
    assert run_cli(["wm", "view", "--in", str(bad), "--msc-out", str(tmp_path / "m"), "--lsc-out", str(tmp_path / "l")]) \
        == EXIT_DOMAIN


def without_timing(report) -> list[dict]:
    rows = list(csv.DictReader(report.read_text().splitlines()[1:]))
    for row in rows:
        del row["network_energy"]
    return rows


def test_same_seed_same_outputs(tmp_path, grid_file, capsys):
    runs = []
    for run in ("a", "b"):
        report, topology = tmp_path / f"{run}.csv", tmp_path / f"{run}.json"
        assert run_cli(["simulate", "--sensors", "10", "--aggregators", "2", "--tau", "12", "--pipeline", "wmean",
                        "--k", "1.0", "--report", str(report), "--topology-out", str(topology),
                        "--seed", "9"]) == EXIT_OK
        marked = tmp_path / f"{run}.pgm"
        assert run_cli(["wm", "embed", "--in", str(grid_file), "--key", "5", "--mode", "robust",
                        "--out", str(marked)]) == EXIT_OK
        capsys.readouterr()
        assert run_cli(["wm", "check", "--in", str(marked), "--key", "5", "--mode", "robust"]) == EXIT_OK
        runs.append((without_timing(report), topology.read_bytes(), marked.read_bytes(), capsys.readouterr().out))
    assert runs[0] == runs[1]
