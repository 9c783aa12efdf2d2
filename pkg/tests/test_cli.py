from __future__ import annotations

import json

import pytest

from dirac_kahler.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


@pytest.fixture
def pair_file(tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps([[[1, 0], [0, 0], [0, 0], [0, 0]]] * 2))
    return path


def test_verify_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--seed", "42", "--samples", "200", "--output", str(a)]) == 0
    assert main(["verify", "--seed", "42", "--samples", "200", "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert report["seed"] == 42 and report["tolerance"] == 1e-12
    assert report["component_order"]["tensor"] == ["01", "02", "03", "23", "31", "12"]
    assert all(report["expectations"].values())


def test_verify_seed_changes_report(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["verify", "--seed", "1", "--samples", "20", "--output", str(a)])
    main(["verify", "--seed", "2", "--samples", "20", "--output", str(b)])
    assert a.read_bytes() != b.read_bytes()


def test_verify_zero_samples_is_usage_error(capsys):
    status, _, err = run(capsys, "verify", "--samples", "0")
    assert status == 2 and "samples" in err


def test_verify_unreachable_tolerance(capsys):
    status, out, _ = run(capsys, "verify", "--seed", "3", "--samples", "10", "--tol", "1e-30")
    report = json.loads(out)
    assert status == 1
    assert not report["expectations"]["pair_identities_hold"]
    assert "floor" in report["guidance"]
    first = report["failures"][0]
    assert first["seed"] == 3 and len(first["spinors"]) == 2


def test_decompose_pair(capsys, pair_file):
    status, out, _ = run(capsys, "decompose", "--input", str(pair_file))
    report = json.loads(out)
    assert status == 0
    t = report["tensor_set"]["tensor"]
    assert t[0] == [0.0, 0.25] and t[1] == [-0.25, 0.0] and t[3] == [0.25, 0.0] and t[4] == [0.0, 0.25]
    assert {r["name"] for r in report["identities"]} == {"orthogonality", "fierz"}


def test_decompose_quad_reports_additivity(capsys, tmp_path):
    path = tmp_path / "quad.json"
    path.write_text(json.dumps({"spinors": [[[1, 0], [2, 0], [0, 1], [0, 0]]] * 4}))
    status, out, _ = run(capsys, "decompose", "--input", str(path))
    report = json.loads(out)
    assert status == 0 and report["kind"] == "quad" and report["additivity_residual"] == 0


@pytest.mark.parametrize("text", ["", "[1, 2", "{\"x\": 1}", "[[[1,0],[0,0],[0,0]]]"])
def test_decompose_bad_input(capsys, tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    status, _, err = run(capsys, "decompose", "--input", str(path))
    assert status == 2 and err.startswith("error:")


def test_parse_error_has_location(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("[\n  [1, 2,\n")
    _, _, err = run(capsys, "decompose", "--input", str(path))
    assert "line" in err and "column" in err


def test_decompose_wrong_arity(capsys, tmp_path):
    path = tmp_path / "three.json"
    path.write_text(json.dumps([[[1, 0]] * 4] * 3))
    status, _, err = run(capsys, "decompose", "--input", str(path))
    assert status == 2 and "2 or 4" in err


def test_sector_build_classify_residuals(capsys, tmp_path):
    status, out, _ = run(capsys, "sector", "build", "--sector", "scalar", "--seed", "7")
    report = json.loads(out)
    assert status == 0
    assert report["residual_count"] == 11 and all(r["abs"] < 1e-10 for r in report["residuals"])
    quad = tmp_path / "quad.json"
    quad.write_text(json.dumps(report["spinors"]))
    status, out, _ = run(capsys, "sector", "classify", "--input", str(quad))
    assert status == 0 and json.loads(out)["classification"] == "scalar"
    status, out, _ = run(capsys, "sector", "residuals", "--sector", "scalar", "--input", str(quad))
    assert status == 0 and json.loads(out)["residual_count"] == 11
    status, out, _ = run(capsys, "sector", "residuals", "--sector", "vector", "--input", str(quad))
    assert status == 1


def test_sector_errors(capsys, pair_file):
    assert run(capsys, "sector", "build", "--sector", "bogus")[0] == 2
    assert run(capsys, "sector", "build")[0] == 2
    assert run(capsys, "sector", "residuals", "--sector", "scalar", "--input", str(pair_file))[0] == 2
    assert run(capsys, "sector", "explode")[0] == 2


def test_dynamics(capsys):
    status, out, _ = run(capsys, "dynamics", "--p", "0", "0", "0", "--mass", "1", "--branches", "0", "0")
    report = json.loads(out)
    assert status == 0
    assert report["linear"]["verdict"] == "holds"
    assert report["nonlinear"]["verdict"] == "rewrite singular"
    status, out, _ = run(capsys, "dynamics", "--p", "0.4", "-1", "0.2", "--mass", "0.8", "--branches", "0", "1")
    report = json.loads(out)
    assert status == 0 and report["nonlinear"]["verdict"] == "holds"


def test_dynamics_off_shell_boson_mass_fails(capsys):
    status, out, _ = run(capsys, "dynamics", "--branches", "0", "1", "--boson-mass", "2.5")
    assert status == 1 and json.loads(out)["linear"]["verdict"] == "fails"


def test_dynamics_rejects_bad_mass(capsys):
    assert run(capsys, "dynamics", "--mass", "-1")[0] == 2
    assert run(capsys, "dynamics", "--branches", "0", "3")[0] == 2


def test_lorentz_check(capsys):
    status, out, _ = run(capsys, "lorentz-check", "--axis", "0", "0.6", "0.8", "--rapidity", "1.5",
                         "--angle", "2.0", "--seed", "5")
    report = json.loads(out)
    assert status == 0 and report["max_covariance_residual"] < 1e-10
    assert len(report["sl2c"]) == 2
    assert run(capsys, "lorentz-check", "--axis", "1", "1", "0")[0] == 2


def test_output_file(tmp_path, pair_file):
    out = tmp_path / "report.json"
    assert main(["decompose", "--input", str(pair_file), "--output", str(out)]) == 0
    assert json.loads(out.read_text())["command"] == "decompose"


def test_no_command_is_usage_error(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "--help")[0] == 0
