import json

import pytest

from treelike.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, config_from_args, build_parser, main, read_config_file

FAST = ["--samples", "300", "--exist-samples", "30"]


def test_verify_axioms_json(capsys):
    assert main(["verify-axioms", "--format", "json", *FAST]) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    assert rep["ok"] and rep["config"]["samples"] == 300


def test_json_is_byte_identical(capsys):
    main(["verify-axioms", "--format", "json", "--seed", "42", *FAST])
    a = capsys.readouterr().out
    main(["verify-axioms", "--format", "json", "--seed", "42", *FAST])
    assert capsys.readouterr().out == a


def test_text_format(capsys):
    assert main(["verify-ef", "--ef-ranks", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS  verify-ef" in out and out.rstrip().endswith("OVERALL: PASS")


def test_dt_graphs_k1_is_config_error(capsys):
    assert main(["dt-graphs", "--k", "1"]) == EXIT_CONFIG
    assert "config error" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["nope"], ["all", "--seed", "x"], ["classical", "--p", "4"],
                                  ["verify-axioms", "--format", "xml"]])
def test_bad_input_exit_2(argv, capsys):
    assert main(argv) == EXIT_CONFIG


def test_shorthands():
    ap = build_parser()
    cfg = config_from_args(ap.parse_args(["dt-graphs", "--k", "3", "--l", "3", "--n", "1", "--radius", "3",
                                          "--distance-set", "1", "--distance-set", "1,3", "--p", "3", "--p", "7"]))
    assert cfg.dt_pairs == ((3, 3),) and cfg.dt_claim_kl == (3, 3) and cfg.dt_recon == ((3, 3, 1),)
    assert cfg.dt_radius == 3 and cfg.dt_claim_sets == ((1,), (1, 3)) and cfg.primes == (3, 7)


def test_config_file(tmp_path, capsys):
    f = tmp_path / "run.cfg"
    f.write_text("# small run\nseed = 7\nsamples=200\nexist-samples = 20\nprimes = 2,3\ndt_pairs = 2,3;3,3\n")
    vals = read_config_file(str(f))
    assert vals == {"seed": 7, "samples": 200, "exist_samples": 20, "primes": (2, 3), "dt_pairs": ((2, 3), (3, 3))}
    assert main(["verify-axioms", "--config", str(f), "--seed", "8", "--format", "json"]) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    assert rep["config"]["seed"] == 8 and rep["config"]["samples"] == 200
    f.write_text("bogus = 1\n")
    assert main(["verify-axioms", "--config", str(f)]) == EXIT_CONFIG
    assert main(["verify-axioms", "--config", str(tmp_path / "missing.cfg")]) == EXIT_CONFIG


def test_output_file(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify-ef", "--ef-ranks", "1", "--format", "json", "--output", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["ok"]


def test_failing_run_exits_1(monkeypatch, capsys):
    import treelike.cli as cli

    monkeypatch.setattr(cli, "run", lambda cmd, cfg: {"schema_version": 1, "command": cmd, "config": {"seed": 0},
                                                     "ok": False, "suites": [{"suite": cmd, "seed": 0, "ok": False,
                                                     "checks": [{"name": "x", "expect": "pass", "ok": False}]}]})
    assert cli.main(["verify-axioms"]) == EXIT_FAIL
    assert "BAD x" in capsys.readouterr().out
