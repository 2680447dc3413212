import json
import subprocess
import sys

import pytest

from octbergman.cli import main


def run(tmp_path, *args, name="r.json"):
    out = tmp_path / name
    code = main(["-q", "--out", str(out), *args])
    return code, out.read_text()


def test_algebra_suite_passes(tmp_path):
    code, text = run(tmp_path, "--suite", "algebra")
    d = json.loads(text)
    assert code == 0 and d["pass"] and d["suite"] == "algebra"


def test_config_echoed(tmp_path):
    code, text = run(tmp_path, "--suite", "counterexample", "--samples", "20000", "--seed", "7", "--h", "0.002", "--no-richardson", "--max-degree", "5")
    cfg = json.loads(text)["config"]
    assert cfg["seed"] == 7 and cfg["n_samples"] == 20000 and cfg["h"] == 0.002
    assert cfg["richardson"] is False and cfg["K"] == 5


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("OCTBERGMAN_SEED", "123")
    _, text = run(tmp_path, "--suite", "counterexample", "--strategy", "exact")
    assert json.loads(text)["config"]["seed"] == 123


def test_point_a(tmp_path):
    code, text = run(tmp_path, "--suite", "unified", "--samples", "20000", "--point-a", "0,0.2,0,0,0,0,0,0")
    assert json.loads(text)["config"]["point_a"][1] == 0.2


def test_csv(tmp_path):
    code, text = run(tmp_path, "--suite", "algebra", "--format", "csv", name="r.csv")
    assert text.startswith("id,paper_ref,lhs_0")


def test_workers_byte_identical(tmp_path):
    _, a = run(tmp_path, "--suite", "counterexample", "--samples", "50000", "--workers", "1", name="a.json")
    _, b = run(tmp_path, "--suite", "counterexample", "--samples", "50000", "--workers", "3", name="b.json")
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [["--h", "0"], ["--h", "-1"], ["--samples", "0"], ["--suite", "nope"], ["--point-a", "1,2"], ["--point-a", "0.9,0.9,0,0,0,0,0,0"], ["--strategy", "grid"]],
)
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code != 0


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "octbergman", "--suite", "algebra", "-q"], capture_output=True, text=True)
    assert p.returncode == 0
    assert json.loads(p.stdout)["pass"]
