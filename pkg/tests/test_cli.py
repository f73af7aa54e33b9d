import json
from fractions import Fraction

import pytest

from qheun import __version__
from qheun.cli import SUITES, main, parse_config, random_rational, render, run_suite
from qheun.errors import ConfigError

F = Fraction


def _run(argv):
    cfg = parse_config(argv)
    return run_suite(cfg)


def _numbers_are_strings(node, path="$"):
    if isinstance(node, dict):
        for k, v in node.items():
            if path == "$.summary":
                assert type(v) is int
                continue
            _numbers_are_strings(v, f"{path}.{k}")
    elif isinstance(node, list):
        for v in node:
            _numbers_are_strings(v, path + "[]")
    else:
        assert node is None or isinstance(node, (str, bool)), (path, node)


def test_random_rational_bounds():
    import random
    rng = random.Random(7)
    for _ in range(500):
        v = random_rational(rng)
        assert -10 <= v.numerator <= 10 and 1 <= v.denominator <= 10


def test_parse_config_examples():
    cfg = parse_config(["run", "--q", "2", "--a", "1/3", "--suite", "qhahn"])
    assert cfg.values == {"q": 2, "a": F(1, 3)}
    assert (cfg.trials, cfg.nmax, cfg.seed) == (10, 8, 0)
    with pytest.raises(ConfigError, match="q = 1"):
        parse_config(["run", "--suite", "qhahn", "--q", "1"])
    with pytest.raises(ConfigError, match="0.5|p/q|parse"):
        parse_config(["run", "--suite", "qhahn"], {"q": 0.5})
    with pytest.raises(ConfigError, match="unknown suite"):
        parse_config(["run", "--suite", "nope"])
    with pytest.raises(ConfigError, match="trials"):
        parse_config(["run", "--suite", "qhahn", "--trials", "0"])
    with pytest.raises(ConfigError, match="nmax"):
        parse_config(["run", "--suite", "qhahn", "--nmax", "1"])
    with pytest.raises(ConfigError, match="x/y"):
        parse_config(["run", "--suite", "qhahn", "--a", "x/y"])


def test_flag_beats_file(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"suite": "qhahn", "q": "3", "a": "1/2", "trials": 2}))
    cfg = parse_config(["run", "--config", str(path), "--q", "5/2"])
    assert cfg.values["q"] == F(5, 2) and cfg.values["a"] == F(1, 2)
    assert cfg.trials == 2 and cfg.overridden == ("q",)
    report, _ = run_suite(cfg)
    assert report["config"]["overridden"] == ["q"]
    assert report["config"]["values"]["q"] == "5/2"


def test_config_file_errors(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"suite": "qhahn", "colour": "red"}))
    with pytest.raises(ConfigError, match="colour"):
        parse_config(["run", "--config", str(path)])
    with pytest.raises(ConfigError):
        parse_config(["run", "--config", str(tmp_path / "missing.json")])


def test_qhahn_twenty_trials():
    report, code = _run(["run", "--suite", "qhahn", "--trials", "20", "--seed", "1"])
    assert code == 0 and len(report["records"]) == 20
    assert all(r["status"] == "pass" for r in report["records"])
    assert report["summary"] == {"passed": 20, "failed": 0}
    assert report["version"] == __version__


def test_pastro_zero_parameter(capsys):
    assert main(["run", "--suite", "pastro", "--a", "0"]) == 2
    assert "nonzero" in capsys.readouterr().err
    assert main(["run", "--suite", "pastro", "--pastro-b", "0"]) == 2


def test_q_one_exit_code(capsys):
    assert main(["run", "--suite", "qhahn", "--q", "1"]) == 2


def test_finite_matrix_grid():
    report, code = _run(["run", "--suite", "finite-matrix", "--N", "4", "--q", "2", "--c", "1/3",
                         "--trials", "1"])
    assert code == 0
    rec = report["records"][0]
    assert rec["inputs"]["c"] == "1/32"
    matrix = rec["detail"]["matrix"]
    assert len(matrix) == 5 and all(len(row) == 5 for row in matrix)
    assert "c" in report["config"]["overridden"]


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_runs_and_is_deterministic(suite):
    argv = ["run", "--suite", suite, "--trials", "2", "--seed", "11", "--nmax", "4"]
    first, code = _run(argv)
    second, code2 = _run(argv)
    assert render(first) == render(second) and code == code2
    _numbers_are_strings(first)
    failed = sum(r["status"] == "fail" for r in first["records"])
    assert first["summary"]["failed"] == failed
    assert code == (1 if failed else 0)
    keys = [(int(r["trial"]), int(r["check"])) for r in first["records"]]
    assert keys == sorted(keys)


def test_seed_changes_draws():
    a, _ = _run(["run", "--suite", "qhahn", "--trials", "3", "--seed", "1"])
    b, _ = _run(["run", "--suite", "qhahn", "--trials", "3", "--seed", "2"])
    assert [r["inputs"] for r in a["records"]] != [r["inputs"] for r in b["records"]]


def test_heun_aw_exit_code_reflects_published_extras():
    report, code = _run(["run", "--suite", "heun-aw", "--trials", "1", "--seed", "3"])
    names = {r["name"]: r["status"] for r in report["records"]}
    assert names["heun_aw.fit[derived]"] == "pass"
    assert names["heun_aw.fit[published]"] == "fail"
    assert code == 1


def test_explicit_non_square_triple_is_reported():
    report, code = _run(["run", "--suite", "aw-triple", "--q", "2", "--a", "1/3", "--b", "1/5",
                         "--c", "1/7", "--trials", "1"])
    assert code == 1
    assert report["records"][0]["detail"]["no_solution"]["status"] == "no_solution"


def test_main_writes_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["run", "--suite", "qhahn", "--trials", "2", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["summary"]["passed"] == 2
    assert "2 passed" in capsys.readouterr().err


def test_suites_listing(capsys):
    assert main(["suites"]) == 0
    assert capsys.readouterr().out.split() == list(SUITES)
