import json
import pathlib

import jsonschema
import pytest

from qwbench.checks import ConfigError
from qwbench.cli import build_report, load_schema, main, parse_config, to_json, to_text

ROOT = pathlib.Path(__file__).resolve().parents[1]


def write(tmp_path, text, name="c.yaml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_defaults_merged():
    written, eff = parse_config("type: A\nrank: 1\ns: [1]\nwq: {box: 3}\n")
    assert written == {"type": "A", "rank": 1, "s": [1], "wq": {"box": 3}}
    assert eff["wq"] == {"max_degree": 2, "box": 3, "convention": "auto"}
    assert eff["samples"]["associativity"] == 200 and eff["degree_bound"] == 12


@pytest.mark.parametrize("text,where,msg", [
    ("type: A\nrank: 2\ns: [1, 5]\n", "x.yaml:3:8", "s/1: simple index 5 exceeds rank 2"),
    ("type: A\nrank: 2\n", "x.yaml:1:1", "'s' is a required property"),
    ("type: Q\nrank: 2\ns: []\n", "x.yaml:1:7", "type:"),
    ("type: A\nrank: 2\ns: []\nwq: {convention: sideways}\n", "x.yaml:4:18", "wq/convention"),
    ("type: A\nrank: 2\ns: [1\n", "x.yaml:4:1", "YAML parse error"),
    ("type: A\nrank: 2\ns: []\nbogus: 1\n", "x.yaml:1:1", "bogus"),
])
def test_config_errors_are_positional(text, where, msg):
    with pytest.raises(ConfigError) as err:
        parse_config(text, "x.yaml")
    assert str(err.value).startswith(where) and msg in str(err.value)


def test_k_length_error_points_at_k():
    text = "type: A\nrank: 2\ns: [1, 2]\nk: [1, 1, 1]\n"
    with pytest.raises(ConfigError) as err:
        build_report("wq", text, "k.yaml")
    assert str(err.value).startswith("k.yaml:4:4: k:")


def test_realization_command(tmp_path, capsys):
    assert main(["--config", str(ROOT / "configs/a2.yaml"), "--command", "realization"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["results"]["realization"]["c"] == [["0", "1"], ["-1", "0"]]
    assert rep["results"]["realization"]["n"] == [["0", "1/2"], ["-1/2", "0"]]
    jsonschema.validate(rep, load_schema("report.json"))


def test_root_system_and_text(tmp_path, capsys):
    out = tmp_path / "r.txt"
    code = main(["--config", str(ROOT / "configs/a1.yaml"), "--command", "root-system",
                 "--format", "text", "--out", str(out)])
    assert code == 0
    body = out.read_text()
    assert body.startswith("command: root-system\n") and "0 fail" in body and "time total:" in body
    rep = build_report("root-system", (ROOT / "configs/a1.yaml").read_text())
    assert rep["results"]["root-system"]["D"] == 1
    assert to_text(rep).count("[") == len(rep["checks"])


def test_all_on_a1_passes(tmp_path):
    rep = build_report("all", (ROOT / "configs/a1.yaml").read_text())
    jsonschema.validate(rep, load_schema("report.json"))
    assert rep["summary"]["fail"] == 0 and rep["summary"]["inconclusive"] == 0
    assert all(r["status"] == "pass" for r in rep["checks"])
    assert rep["effective_config"]["command"] == "all"


def test_exit_codes(tmp_path, capsys, monkeypatch):
    assert main(["--config", str(tmp_path / "missing.yaml")]) == 2
    bad = write(tmp_path, "type: A\nrank: 1\ns: [2]\n")
    assert main(["--config", bad]) == 2
    assert "s/0: simple index 2 exceeds rank 1" in capsys.readouterr().err

    import qwbench.cli as cli

    def failing(command, cfg, timings=None):
        return {"command": command, "results": {}, "checks": [{"name": "x", "status": "fail", "witness": {}}],
                "summary": {"pass": 0, "fail": 1, "inconclusive": 0}}
    monkeypatch.setattr(cli, "run", failing)
    assert main(["--config", str(ROOT / "configs/a1.yaml")]) == 1


def test_seed_override_recorded():
    text = (ROOT / "configs/a1.yaml").read_text()
    rep = build_report("root-system", text, seed=7)
    assert rep["effective_config"]["seed"] == 7 and rep["config"]["seed"] == 0


def test_json_is_canonical():
    rep = build_report("root-system", (ROOT / "configs/a1.yaml").read_text())
    s = to_json(rep)
    assert s.endswith("}\n") and json.loads(s) == rep
    assert s == to_json(json.loads(s))
