"""CLI: exit codes, config files, deterministic JSON artifacts, file IO."""

import json
import math

import numpy as np
import pytest

from cstorus.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_roots_info(capsys):
    code, doc = run(capsys, "roots", "info", "--type", "A", "--rank", "2")
    assert code == 0
    assert doc["roots"]["weyl_order"] == 6
    assert doc["config"]["command"] == "roots info"
    assert "version" in doc


def test_invalid_type_exits_schema(capsys):
    code, _ = run(capsys, "roots", "info", "--type", "E", "--rank", "2")
    assert code == 2


def test_missing_required_flag_exits_schema(capsys):
    code, _ = run(capsys, "lattice", "enumerate", "--type", "A", "--rank", "1")
    assert code == 2


def test_lattice_enumerate(capsys):
    code, doc = run(capsys, "lattice", "enumerate", "--type", "A", "--rank", "1",
                    "--level", "3")
    assert code == 0
    assert doc["lattice"]["order"] == 6


def test_rep_build_worked_example(capsys):
    code, doc = run(capsys, "rep", "build", "--type", "A", "--rank", "1",
                    "--level", "2", "--sector", "1")
    assert code == 0
    assert doc["verification"]["passed"]
    s = doc["matrices"]["S"]
    assert len(s) == 1 and abs(complex(*s[0][0]) - 1) < 1e-12


def test_rep_verify_negative_control_exits_tolerance(capsys):
    code, doc = run(capsys, "rep", "verify", "--type", "A", "--rank", "2",
                    "--level", "2", "--sector", "0", "--convention", "theorem")
    assert code == 1
    assert not doc["verification"]["passed"]


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "A", "rank": 1, "level": 2, "sector": 0}))
    code, doc = run(capsys, "rep", "verify", "--config", str(cfg),
                    "--level", "3")
    assert code == 0
    assert doc["config"]["level"] == 3          # flag supersedes file
    assert doc["config"]["rank"] == 1


def test_config_file_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"no_such_key": 1}))
    code, _ = run(capsys, "roots", "info", "--config", str(cfg),
                  "--type", "A", "--rank", "1")
    assert code == 2


def test_artifact_determinism(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["compare", "compact", "--type", "A", "--rank", "1",
                     "--k", "3", "--out", str(p)]) == 0
    docs = [json.loads(p.read_text()) for p in paths]
    for d in docs:
        d["config"].pop("out")
    assert json.dumps(docs[0], sort_keys=True) == json.dumps(docs[1], sort_keys=True)
    doc = docs[0]
    assert doc["compact"]["passed"]
    assert abs(complex(*doc["compact"]["fitted_T_phase"]) - 1) < 1e-10


def test_wgz_roundtrip_artifact(tmp_path, capsys):
    code, doc = run(capsys, "wgz", "roundtrip", "--type", "A", "--rank", "1",
                    "--level", "1", "--resolution", "24", "--box-radius", "5.0",
                    "--trials", "3")
    assert code == 0
    assert doc["roundtrip"]["roundtrip_residual"] < 1e-6


def test_kernel_heat_file_io(tmp_path, capsys):
    y = np.linspace(-6, 6, 401)
    vals = np.exp(-math.pi * y ** 2).astype(complex)   # ground state at sigma = i
    src = tmp_path / "in.json"
    src.write_text(json.dumps({"y": list(y),
                               "values": [[z.real, z.imag] for z in vals]}))
    dst = tmp_path / "out.json"
    code = main(["kernel", "heat", "--k", "2", "--s", "0.0",
                 "--input", str(src), "--out", str(dst)])
    assert code == 0
    doc = json.loads(dst.read_text())
    got = np.array([complex(re, im) for re, im in doc["samples"]["values"]])
    # ground state picks up the unit phase e^{-2kr/2} = q^{1/2} = e^{i pi/4}
    target = np.exp(1j * math.pi / 4) * vals
    assert np.abs(got - target).max() < 1e-6


def test_kernel_eta_file_io(tmp_path, capsys):
    y = np.linspace(0, 8, 401)
    vals = np.exp(-math.pi * y ** 2)
    src = tmp_path / "in.json"
    src.write_text(json.dumps({"y": list(y),
                               "values": [[float(z), 0.0] for z in vals]}))
    code, doc = run(capsys, "kernel", "eta", "--k", "2", "--s", "0.0",
                    "--sector", "0", "--generator", "S", "--input", str(src))
    assert code == 0
    got = np.array([complex(re, im) for re, im in doc["samples"]["values"]])
    assert np.abs(got + 1j * vals).max() < 1e-5   # folded self-duality


def test_kernel_heat_bad_input_file(tmp_path, capsys):
    src = tmp_path / "bad.json"
    src.write_text("{\"y\": [0, 1]}")
    code, _ = run(capsys, "kernel", "heat", "--k", "2", "--s", "0.0",
                  "--input", str(src))
    assert code == 2


def test_kernel_verify_small(capsys):
    code, doc = run(capsys, "kernel", "verify", "--k", "2", "--s", "1.0",
                    "--L", "6", "--grid-points", "1201", "--box-radius", "9.0")
    assert code == 0
    assert doc["conjugation"]["max_conjugation_residual"] < 1e-5


def test_kernel_verify_bad_sigma_exits_schema(capsys):
    code, _ = run(capsys, "kernel", "verify", "--k", "2", "--s", "1.0",
                  "--sigma", "1-1i", "--L", "6")
    assert code == 2
