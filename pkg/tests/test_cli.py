"""Config parsing, exit codes, and report rendering through the real entry point."""

import json
from fractions import Fraction

import pytest

from tiltval.cli import RunConfig, load_config, main, parse_rational
from tiltval.errors import ConfigError, PrecisionError


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_config(tmp_path, name, payload: str):
    path = tmp_path / name
    path.write_text(payload, encoding="utf-8")
    return str(path)


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("7") == 7
    assert parse_rational("-2/3") == Fraction(-2, 3)
    for bad in ("0.5", "1/0", "3/-4", "", "two", 0.5, None, Fraction(1, 2)):
        with pytest.raises(ConfigError):
            parse_rational(bad)


def test_load_config_defaults_and_overrides(tmp_path):
    assert load_config(None) == RunConfig()
    path = write_config(tmp_path, "c.json", '{"schema": 1, "p": 3, "ell": 7, "v_q": "3/2", "seed": 9}')
    cfg = load_config(path)
    assert (cfg.p, cfg.ell, cfg.v_q, cfg.seed) == (3, 7, Fraction(3, 2), 9)
    assert cfg.theta_truncation == 12  # untouched default


def test_load_config_rejections(tmp_path):
    cases = {
        "unknown.json": '{"elll": 7}',
        "float.json": '{"v_q": 0.5}',
        "constant.json": '{"v_q": NaN}',
        "bool.json": '{"p": true}',
        "schema.json": '{"schema": 2}',
        "number.json": '{"v_q": 3}',
        "notobj.json": "[1, 2]",
        "syntax.json": "{",
        "badell.json": '{"ell": 9}',
        "ellisp.json": '{"p": 5, "ell": 5}',
        "format.json": '{"output_format": "xml"}',
        "fmtnum.json": '{"output_format": 3}',
        "zeroden.json": '{"v_q": "1/0"}',
    }
    for name, payload in cases.items():
        with pytest.raises(ConfigError):
            load_config(write_config(tmp_path, name, payload))
    with pytest.raises(PrecisionError):
        load_config(write_config(tmp_path, "prec.json", '{"padic_precision": 2}'))


def test_bound_passes_by_default(capsys):
    code, out, _ = run_cli(capsys, "bound")
    assert code == 0
    assert "[PASS] bound.strict_inequality" in out
    assert "overall: PASS" in out
    assert "wall:" in out  # timing is text-only


def test_bound_equality_prime_exits_one(tmp_path, capsys):
    path = write_config(tmp_path, "e.json", '{"ell": 3}')
    code, out, _ = run_cli(capsys, "bound", "--config", path)
    assert code == 1
    assert "[FAIL] bound.strict_inequality" in out
    assert "margin=0/1" in out
    assert "overall: FAIL" in out


def test_usage_errors_exit_two(tmp_path, capsys):
    # truncation window too small to cover every shift
    path = write_config(tmp_path, "w.json", '{"ell": 7, "theta_truncation": 2}')
    code, _, err = run_cli(capsys, "verify-theta", "--config", path)
    assert code == 2 and "theta_truncation" in err
    # composite ell
    path = write_config(tmp_path, "c.json", '{"ell": 4}')
    code, _, err = run_cli(capsys, "bound", "--config", path)
    assert code == 2 and "odd prime" in err
    # witness exponent not representable over this residue field
    path = write_config(tmp_path, "p3.json", '{"p": 3}')
    code, _, err = run_cli(capsys, "ansatz", "--config", path)
    assert code == 2 and "power of p" in err
    # missing config file
    code, _, err = run_cli(capsys, "bound", "--config", str(tmp_path / "nope.json"))
    assert code == 2 and "error:" in err


def test_argparse_usage_exits_two(capsys):
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["bound", "--format", "yaml"])
    assert info.value.code == 2
    capsys.readouterr()


def test_json_report_shape(capsys):
    def no_floats(text):
        raise AssertionError(f"float literal {text!r} in JSON output")

    code, out, _ = run_cli(capsys, "all", "--format", "json")
    assert code == 0
    body = json.loads(out, parse_float=no_floats)
    assert body["schema"] == 1
    assert body["suite"] == "all"
    assert body["overall"] == "pass"
    assert [s["suite"] for s in body["suites"]] == ["verify-theta", "bound", "ansatz", "loglink", "sweep-ell"]
    assert body["counts"]["total"] == sum(s["counts"]["total"] for s in body["suites"])
    assert body["counts"]["failed"] == 0
    assert body["config"]["v_q"] == "1/1"
    assert "wall" not in json.dumps(body)  # no timing in machine formats
    for suite in body["suites"]:
        for check in suite["checks"]:
            assert isinstance(check["passed"], bool)
            assert all(isinstance(v, str) for v in check["witness"].values())


def test_csv_report_rows(capsys):
    code, out, _ = run_cli(capsys, "bound", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "suite,check,passed,witness"
    assert len(lines) > 1
    assert all(line.startswith("bound,") for line in lines[1:])
    assert all(",true," in line for line in lines[1:])
    strict = next(line for line in lines[1:] if "strict_inequality" in line)
    assert "lhs_log=1/8" in strict and "rhs_log=1/5" in strict and "margin=3/40" in strict


def test_output_file_matches_stdout(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "sweep-ell", "--format", "json", "--output", str(target))
    assert code == 0
    assert out == ""  # report went to the file
    code, out, _ = run_cli(capsys, "sweep-ell", "--format", "json")
    assert code == 0
    assert target.read_text(encoding="utf-8") == out


def test_json_runs_are_byte_identical(capsys):
    _, first, _ = run_cli(capsys, "all", "--format", "json")
    _, second, _ = run_cli(capsys, "all", "--format", "json")
    assert first == second


def test_seed_flag_threads_through(capsys):
    code, out, _ = run_cli(capsys, "loglink", "--seed", "7", "--format", "json")
    assert code == 0
    body = json.loads(out)
    assert body["config"]["seed"] == "7"
    code, out2, _ = run_cli(capsys, "loglink", "--seed", "7", "--format", "json")
    assert code == 0 and out == out2


def test_config_echo_renders_rationals():
    echo = dict(RunConfig().echo())
    assert echo["v_q"] == "1/1"
    assert echo["rho_weight"] == "1/1"
    assert echo["p"] == "2"


def test_every_text_line_is_gated(capsys):
    code, out, _ = run_cli(capsys, "all")
    assert code == 0
    lines = out.splitlines()
    check_lines = [line for line in lines if line.startswith("[")]
    assert len(check_lines) >= 40
    assert all(line.startswith("[PASS] ") for line in check_lines)
    assert any(line.startswith("overall: PASS (") for line in lines)
