import json

from ellid.cli import main


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "bigid" in out and "m00" in out and "warnaar-cubes" in out


def test_verify_numeric(capsys):
    assert main(["verify", "--id", "tel-c", "--n", "3", "--trials", "5",
                 "--seed", "1"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_exact(capsys):
    assert main(["verify", "--id", "warnaar-cubes", "--n", "10",
                 "--mode", "exact"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_pinned_param(capsys):
    assert main(["verify", "--id", "qodds", "--n", "4", "--trials", "3",
                 "--param", "q=0.5,0.1"]) == 0


def test_verify_json_output(tmp_path, capsys):
    path = tmp_path / "out.json"
    assert main(["verify", "--id", "geo", "--n", "4", "--trials", "3",
                 "--seed", "2", "--json", str(path)]) == 0
    data = json.loads(path.read_text())
    assert data["summary"]["geo"]["failures"] == 0
    assert len(data["results"]) == 3


def test_unknown_identity_exits_2(capsys):
    assert main(["verify", "--id", "nope", "--n", "1"]) == 2


def test_bad_flags_exit_2(capsys):
    assert main(["verify", "--id", "geo"]) == 2          # missing --n
    assert main(["verify", "--id", "geo", "--n", "1",
                 "--param", "oops"]) == 2                 # malformed param


def test_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("ELLID_SEED", "17")
    path_a = None
    assert main(["verify", "--id", "tel-c-a", "--n", "2", "--trials", "2"]) == 0
    out_env = capsys.readouterr().out
    assert main(["verify", "--id", "tel-c-a", "--n", "2", "--trials", "2",
                 "--seed", "17"]) == 0
    out_flag = capsys.readouterr().out
    assert out_env == out_flag


def test_sweep_small(tmp_path, capsys):
    path = tmp_path / "sweep.json"
    code = main(["sweep", "--suite", "all", "--n-max", "1", "--trials", "1",
                 "--seed", "3", "--json", str(path)])
    out = capsys.readouterr().out
    assert code == 0, out
    data = json.loads(path.read_text())
    assert data["config"]["sample"]["seed"] == 3
    assert all(r["pass"] for r in data["results"])
    # edges are part of the sweep
    assert any("->" in r["id"] for r in data["results"])
