import json
import math

import numpy as np
import pytest

from mindist_tomo.cli import main
from mindist_tomo.linalg import random_density, random_hermitian
from mindist_tomo.matjson import read_matrix, write_matrix
from mindist_tomo.metrics import distance_report
from mindist_tomo.pauli import basis_from_json, build_pauli_basis
from mindist_tomo.projection import project_density, project_density_smoothed
from mindist_tomo.simulate import PauliOutcome, read_dataset_csv, simulate


def test_project_subcommand(tmp_path):
    z = random_hermitian(4, 10, scale=2.0)
    inp = tmp_path / "z.json"
    out = tmp_path / "proj.json"
    write_matrix(inp, z)
    assert main(["project", "--input", str(inp), "--output", str(out)]) == 0
    result = read_matrix(out)
    np.testing.assert_allclose(result, project_density(z), atol=1e-12)


def test_project_subcommand_with_delta(tmp_path):
    z = random_hermitian(4, 11, scale=2.0)
    inp = tmp_path / "z.json"
    out = tmp_path / "proj.json"
    write_matrix(inp, z)
    assert main(["project", "--input", str(inp), "--delta", "0.2",
                 "--output", str(out)]) == 0
    result = read_matrix(out)
    np.testing.assert_allclose(result, project_density_smoothed(z, 0.2), atol=1e-12)
    assert np.linalg.eigvalsh(result).min() >= 0.05 - 1e-12


def test_basis_subcommand(tmp_path):
    out = tmp_path / "basis.json"
    assert main(["basis", "--qubits", "2", "--out", str(out)]) == 0
    loaded = basis_from_json(out)
    assert loaded.m == 4
    assert loaded.size == 16


def test_simulate_and_estimate_round_trip(tmp_path):
    rho = random_density(4, 12)
    state = tmp_path / "rho.json"
    data_csv = tmp_path / "data.csv"
    write_matrix(state, rho)
    assert main(["simulate", "--state", str(state), "--qubits", "2",
                 "--n", "4096", "--model", "pauli:1", "--seed", "3",
                 "--out", str(data_csv)]) == 0
    loaded = read_dataset_csv(data_csv, m=4)
    reference = simulate(rho, build_pauli_basis(2), 4096, PauliOutcome(1), seed=3)
    assert np.array_equal(loaded.basis_indices, reference.basis_indices)
    assert np.array_equal(loaded.outcomes, reference.outcomes)

    for method in ("mindist", "smoothed:auto", "smoothed:0.1", "svt", "raw"):
        out = tmp_path / f"{method.replace(':', '_')}.json"
        assert main(["estimate", "--data", str(data_csv), "--qubits", "2",
                     "--method", method, "--out", str(out)]) == 0
        est = read_matrix(out)
        if method != "raw":
            assert np.linalg.eigvalsh(est).min() >= -1e-10
            assert np.trace(est).real == pytest.approx(1.0, abs=1e-10)
            assert np.linalg.norm(est - rho) < 0.8


def test_distance_subcommand(tmp_path, capsys):
    a = np.diag([1.0, 0.0]).astype(complex)
    b = np.eye(2, dtype=complex) / 2
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    write_matrix(pa, a)
    write_matrix(pb, b)
    assert main(["distance", "--a", str(pa), "--b", str(pb), "--p", "1,2,inf"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "schatten_1,schatten_2,schatten_inf,bures_sq,fidelity,kl"
    values = dict(zip(lines[0].split(","), lines[1].split(",")))
    report = distance_report(a, b, [1, 2, math.inf])
    assert float(values["schatten_1"]) == pytest.approx(report.schatten[1.0])
    assert float(values["bures_sq"]) == pytest.approx(2 - math.sqrt(2))
    assert float(values["kl"]) == pytest.approx(math.log(2))

    # reversed arguments: the full-support state against the pure one
    assert main(["distance", "--a", str(pb), "--b", str(pa), "--p", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[1].split(",")[-1] == "inf"


def test_bench_subcommand(tmp_path):
    config = {
        "qubits_grid": [1],
        "rank_grid": [1],
        "n_grid": [64],
        "model": "pauli:1",
        "estimators": ["mindist"],
        "p_grid": [1, 2],
        "replications": 2,
        "master_seed": 5,
    }
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(config))
    out1 = tmp_path / "r1.csv"
    out2 = tmp_path / "r2.csv"
    assert main(["bench", "--config", str(cfg), "--out", str(out1)]) == 0
    assert main(["bench", "--config", str(cfg), "--out", str(out2),
                 "--threads", "4"]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert len(lines) == 1 + 4  # header + p=1, p=2, bures, kl


def test_bench_invalid_config_exit_code(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"qubits_grid": [1]}))
    out = tmp_path / "out.csv"
    assert main(["bench", "--config", str(cfg), "--out", str(out)]) == 2
    assert not out.exists()


def test_bench_trial_errors_exit_code(tmp_path, capsys):
    config = {
        "qubits_grid": [1],
        "rank_grid": [1],
        "n_grid": [2],
        "model": "pauli:1",
        "estimators": ["smoothed:auto"],  # saturates at n=2, every trial fails
        "p_grid": [1],
        "replications": 2,
        "master_seed": 5,
    }
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(config))
    out = tmp_path / "out.csv"
    assert main(["bench", "--config", str(cfg), "--out", str(out)]) == 3
    assert out.exists()
