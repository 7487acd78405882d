import json
import os

import pytest

from lcworkbench.cli import main

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join("data")

# name -> (argv, expected exit code); argv paths are relative to tests/
GOLDEN = {
    "factors_3a_delta0": (["factors", "--family", "V22", "--delta", "0", "--lambda", "0",
                           "--alpha", "1", "--p", "2"], 0),
    "factors_V2_K2": (["factors", "--family", "V2", "--algebra", "k2", "--delta", "0",
                       "--alpha", "-1/2"], 0),
    "module_beta_k1": (["module", "build", "--family", "V22", "--algebra", "kn", "--cutoff", "1",
                        "--delta", "1/3", "--lambda", "2", "--alpha", "0", "--beta", "1"], 0),
    "dual_path_p-1": (["ann", "verify-lemma31", "--p", "-1", "--imax", "2", "--mmax", "3"], 0),
    "g_1_1_p2": (["ann", "g", "--k", "1", "--N", "1", "--p", "2"], 0),
    "closure_V1_0": (["submodule", "closure", "--module", "data/V1_delta0.json",
                      "--gen", "(D + 1)*v0"], 0),
    "probe_V1_0": (["probe", "--family", "V1", "--delta", "0", "--alpha", "1", "--p", "2",
                    "--cutoff", "1"], 0),
    "broken_verify": (["algebra", "verify", "data/broken.toml"], 1),
    "criterion_9": (["verify-all", "--criterion", "9"], 0),
}


@pytest.fixture
def in_tests(monkeypatch):
    monkeypatch.chdir(HERE)
    monkeypatch.delenv("WORKBENCH_SEED", raising=False)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden(name, capsys, in_tests):
    argv, want = GOLDEN[name]
    code, out, _ = run(capsys, argv)
    assert code == want
    with open(os.path.join(HERE, "golden", name + ".json")) as fh:
        assert out == fh.read()
    code, again, _ = run(capsys, argv)
    assert again == out


def test_factor_list_row_delta0(capsys):
    code, out, _ = run(capsys, GOLDEN["factors_3a_delta0"][0])
    body = json.loads(out)
    assert code == 0 and body["schemaVersion"] == 1
    assert body["factors"] == ["Cc(-1)", "~V(1)[1/2, 1]", "~V(2)[1/2, 1]"]
    assert body["multiplicity_one"]


def test_broken_document_names_triple(capsys, in_tests):
    code, out, _ = run(capsys, ["algebra", "verify", "data/broken.toml"])
    body = json.loads(out)
    assert code == 1 and not body["pass"]
    jac = [c for c in body["checks"] if not c["pass"] and c["check"] == "jacobi"]
    assert jac and jac[0]["failures"][0]["cell"] == ["L_0", "G+_0", "G-_0"]
    assert "L^2*J_0" in jac[0]["failures"][0]["residual"]


def test_build_then_verify(capsys, tmp_path):
    for fmt in ("json", "toml"):
        path = tmp_path / f"alg.{fmt}"
        assert main(["algebra", "build", "--p", "-1", "--cutoff", "1", "--out", str(path)]) == 0
        code, out, _ = run(capsys, ["algebra", "verify", str(path)])
        assert code == 0 and json.loads(out)["pass"]
        mpath = tmp_path / f"mod.{fmt}"
        assert main(["module", "build", "--family", "V22", "--p", "-1", "--cutoff", "1",
                     "--delta", "1", "--lambda", "-2", "--beta", "3", "--out", str(mpath)]) == 0
        code, out, _ = run(capsys, ["module", "verify", str(mpath)])
        assert code == 0


def test_out_flag_matches_stdout(capsys, tmp_path):
    argv = ["ann", "g", "--k", "0", "--N", "1", "--p", "3"]
    _, out, _ = run(capsys, argv)
    path = tmp_path / "r.json"
    assert main(argv + ["--out", str(path)]) == 0
    assert path.read_text() == out


def test_seed_env_overrides(capsys, monkeypatch):
    argv = ["probe", "--family", "V2", "--delta", "0", "--alpha", "1", "--p", "2",
            "--cutoff", "1", "--trials", "5", "--seed", "3"]
    monkeypatch.setenv("WORKBENCH_SEED", "11")
    _, out, _ = run(capsys, argv)
    assert json.loads(out)["seed"] == 11
    monkeypatch.setenv("WORKBENCH_SEED", "eleven")
    code, _, err = run(capsys, argv)
    assert code == 2 and "WORKBENCH_SEED" in err


def test_verify_all_minus_one(capsys):
    code, out, _ = run(capsys, ["verify-all", "--p", "-1", "--cutoff", "2"])
    body = json.loads(out)
    assert code == 0 and body["failed"] == [] and body["pass"]


@pytest.mark.parametrize("argv,needle", [
    (["module", "build", "--family", "V22", "--p", "2", "--beta", "1"], "p = -1"),
    (["algebra", "verify", "no/such/file.toml"], "cannot read"),
    (["factors", "--family", "V1", "--p", "2", "--delta", "1/0"], ""),
    (["ann", "g", "--k", "1", "--N", "1", "--p", "2", "--checks", "bogus"], "unknown checks"),
    (["verify-all"], "--p"),
    (["frobnicate"], ""),
])
def test_malformed_input_exits_2(capsys, argv, needle):
    code, _, err = run(capsys, argv)
    assert code == 2
    assert needle in err


def test_negative_values_accepted(capsys):
    code, out, _ = run(capsys, ["module", "build", "--family", "V1", "--p", "-1/2", "--cutoff", "0",
                                "--delta", "-3/2", "--alpha", "-1"])
    assert code == 0
    assert json.loads(out)["family"]["delta"] == "-3/2"
