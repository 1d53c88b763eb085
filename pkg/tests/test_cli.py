import json

from dunklkit.cli import main


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


VERIFY_CFG = {
    "mode": {"type": "radial", "N": 3, "gamma": 0.0},
    "spec": {"theorem": "FractionalHardy", "params": {"N": 3, "gamma": 0.0, "s": 1.0}},
    "corpus": {"seed": 7, "count": 20,
               "families": ["Gaussian", "DilatedGaussian", "HermiteGaussian"]},
}


def test_verify_exit0_and_summary(tmp_path):
    cfg = write(tmp_path / "cfg.json", VERIFY_CFG)
    out = tmp_path / "out"
    assert main(["verify", "--config", cfg, "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["admissible"] is True
    assert summary["sup_ratio"] <= 2.0002
    assert summary["violations"] == []
    assert (out / "records.csv").exists() and (out / "metadata.json").exists()


def test_verify_deterministic_reruns(tmp_path):
    cfg = write(tmp_path / "cfg.json", VERIFY_CFG)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["verify", "--config", cfg, "--out", str(out1)]) == 0
    assert main(["verify", "--config", cfg, "--out", str(out2)]) == 0
    assert (out1 / "records.csv").read_bytes() == (out2 / "records.csv").read_bytes()
    assert (out1 / "summary.json").read_bytes() == (out2 / "summary.json").read_bytes()


def test_verify_inadmissible_reports(tmp_path):
    cfg = write(tmp_path / "cfg.json", {
        "mode": {"type": "radial", "N": 3, "gamma": 0.0},
        "spec": {"theorem": "Hardy_Lp", "params": {"N": 3, "gamma": 0.0, "p": 5.0}},
        "corpus": {"seed": 1, "count": 2, "families": ["Gaussian"]},
    })
    out = tmp_path / "out"
    assert main(["verify", "--config", cfg, "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["admissible"] is False
    assert summary["failed_conditions"]


def test_malformed_config_exit2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"broken": ')
    assert main(["verify", "--config", str(bad), "--out", str(tmp_path / "o")]) == 2
    missing = write(tmp_path / "m.json", {"mode": {"type": "radial"}})
    assert main(["verify", "--config", missing, "--out", str(tmp_path / "o2")]) == 2
    assert main(["verify", "--out", str(tmp_path / "o3")]) == 2    # --config required


def test_unknown_mode_exit2(tmp_path):
    cfg = write(tmp_path / "cfg.json", {
        "mode": {"type": "hyperbolic"},
        "spec": VERIFY_CFG["spec"],
    })
    assert main(["verify", "--config", cfg, "--out", str(tmp_path / "o")]) == 2


def test_sharp_command(tmp_path):
    cfg = write(tmp_path / "cfg.json", {
        "mode": {"type": "radial", "N": 3, "gamma": 0.0},
        "spec": {"theorem": "FractionalHardy", "params": {"N": 3, "gamma": 0.0, "s": 1.0}},
        "family": {"tag": "InversePower"},
        "optimizer": {"seed": 7},
    })
    out = tmp_path / "out"
    assert main(["sharp", "--config", cfg, "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["best_ratio"] >= 1.9
    assert summary["ceiling"] == 2.0
    assert (out / "trace.csv").exists()


def test_wave_command(tmp_path):
    cfg = write(tmp_path / "cfg.json", {
        "wave": {"b": 1.0, "m": 1.0, "epsilon": 0.01, "p": 3.0, "mode": "rank1",
                 "k": 0.5,
                 "grid": {"x_max": 14, "nx": 240, "xi_max": 18, "nxi": 240},
                 "time": {"T": 6.0, "dt": 0.02}},
    })
    out = tmp_path / "out"
    assert main(["wave", "--config", cfg, "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["delta_fit"] > 0
    assert summary["converged"] is True
    trace = (out / "trace.csv").read_text().splitlines()
    assert trace[0] == "t,h1_norm,dt_norm"
    assert len(trace) == 302


def test_selftest_command(tmp_path, capsys):
    assert main(["selftest", "--out", str(tmp_path / "o")]) == 0
    lines = capsys.readouterr().out
    assert "plancherel" in lines and "[pass]" in lines


def test_corpus_command(tmp_path):
    cfg = write(tmp_path / "cfg.json", {
        "mode": {"type": "rank1", "k": 0.5},
        "corpus": {"seed": 3, "count": 4, "families": ["Gaussian", "HermiteGaussian"]},
        "norms": [{"p": 2.0, "a": 0.0}, {"p": 1.0, "a": 1.0}],
    })
    out = tmp_path / "out"
    assert main(["corpus", "--config", cfg, "--out", str(out)]) == 0
    body = (out / "norms.csv").read_text().splitlines()
    assert body[0] == "function_id,p,a,value"
    assert len(body) == 9
    members = json.loads((out / "corpus.json").read_text())["members"]
    assert len(members) == 4
