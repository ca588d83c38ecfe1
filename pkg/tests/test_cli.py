import io
import json
import subprocess
import sys

import pytest

from borelkit.cli import parse_complex_list, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def report(*argv):
    code, text = call(*argv, "--no-timestamp")
    return code, json.loads(text)


def test_reduce_check_sphere():
    code, rep = report("reduce-check", "-p", "z1^2+z2^2+(-1/1)")
    assert code == 0 and rep["ok"] and rep["result"]["is_reduced"] is True


def test_reduce_check_double_line():
    code, rep = report("reduce-check", "-p", "z1^2*z2")
    assert code == 0 and rep["result"]["is_reduced"] is False


def test_diagram_random():
    code, rep = report("diagram-check", "--random", "100", "--seed", "7")
    assert code == 0 and rep["result"]["cases"] == 100 and rep["result"]["exact_zero"] == 100


def test_diagram_single_functional():
    code, rep = report("diagram-check", "-p", "z1*z2", "-T", "[z1] @ (1,0) + [1] @ (0,i)")
    assert code == 0 and rep["ok"]


@pytest.mark.parametrize("n, dim", [("2", 5), ("1", 2)])
def test_kernel_dim(n, dim):
    code, rep = report("kernel-dim", "-p", "z1^2", "-n", n, "-D", "2")
    assert code == 0 and rep["result"]["kernel_dim"] == dim


def test_exp_rank_reduced():
    code, rep = report("exp-rank", "-p", "z1^2+z2^2-1", "-D", "3")
    assert code == 0 and rep["result"]["numerical_rank"] == rep["result"]["kernel_dim"] == 7


@pytest.mark.parametrize("statement, extra", [
    ("l31", ["-p", "z1^2-1", "--xi", "0.5"]),
    ("l32", ["-p", "z1*z2", "--xi", "0.5,1j"]),
    ("p33", ["-p", "z1*z2", "--radii", "16", "--angles", "16"]),
])
def test_growth_check(statement, extra):
    code, rep = report("growth-check", "--statement", statement, "-f", "[1] * exp(<1/2" +
                       (">)" if statement == "l31" else ", 1/4>)"), *extra)
    assert code == 0 and rep["result"]["violated"] is False


def test_counterexample_and_reduced_input():
    code, rep = report("counterexample", "-p", "z1^2")
    assert code == 0 and rep["ok"]
    code, _ = call("counterexample", "-p", "z1*z2")
    assert code == 2


def test_nst_shadow():
    code, rep = report("nst-shadow", "-p", "z1^2+z2^2-1", "-f", "z1^3+z1*z2^2-z1")
    assert code == 0 and rep["ok"]


def test_selftest_quick():
    code, rep = report("selftest")
    assert code == 0 and rep["result"]["passed"]


def test_parse_error_reports_position(capsys):
    code, text = call("reduce-check", "-p", "z1^^2")
    err = capsys.readouterr().err
    assert code == 2 and text == "" and "position" in err


@pytest.mark.parametrize("argv", [
    ["kernel-dim", "-p", "z1^2", "-D", "30"],
    ["reduce-check"],
    ["growth-check", "--statement", "l31", "-p", "z1", "-f", "[1] * exp(<1/2>)", "--M", "1e-9"],
    ["reduce-check", "-p", "z7", "-n", "7"],
    ["frobnicate"],
])
def test_usage_errors(argv):
    code, _ = call(*argv)
    assert code == 2


def test_math_failure_exit_code():
    # a point off V_{p/q}: the separating functional must not be reported as valid
    code, _ = call("counterexample", "-p", "z1^2", "-n", "1", "--point", "1")
    assert code in (1, 2)


def test_reproducible_bytes():
    argv = ["exp-rank", "-p", "z1*z2", "-D", "3", "--seed", "11", "--no-timestamp"]
    assert call(*argv)[1] == call(*argv)[1]
    _, stamped = call("reduce-check", "-p", "z1")
    assert "timestamp" in json.loads(stamped)


def test_output_file_and_formats(tmp_path):
    path = tmp_path / "r.csv"
    code, text = call("kernel-dim", "-p", "z1*z2", "-D", "3", "--format", "csv", "--output", str(path))
    assert code == 0 and text == ""
    lines = path.read_text().splitlines()
    assert len(lines) == 2 and "result.kernel_dim" in lines[0]
    assert not list(tmp_path.glob(".borelkit-*"))


def test_sample_variety_jsonl_append(tmp_path):
    path = tmp_path / "s.jsonl"
    for _ in range(2):
        assert call("sample-variety", "-p", "z1^2+z2^2-1", "--samples", "4",
                    "--output", str(path), "--no-timestamp")[0] == 0
    recs = [json.loads(line) for line in path.read_text().splitlines()]
    assert len(recs) == 10 and "meta" in recs[0] and "meta" in recs[5]
    assert all(r["residual"] <= 1e-10 for r in recs[1:5])


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("seed = 4\ntolerances.rank_rel = 1e-7\n")
    _, rep = report("exp-rank", "-p", "z1*z2", "-D", "2", "--config", str(cfg))
    assert rep["config"]["seed"] == 4 and rep["config"]["tolerances"]["rank_rel"] == 1e-7
    _, rep = report("exp-rank", "-p", "z1*z2", "-D", "2", "--config", str(cfg), "--seed", "5")
    assert rep["config"]["seed"] == 5
    bad = tmp_path / "bad.cfg"
    bad.write_text("format = xml\n")
    assert call("reduce-check", "-p", "z1", "--config", str(bad))[0] == 2


def test_parse_complex_list():
    assert parse_complex_list("1, 2j, -1/2+i") == [1, 2j, -0.5 + 1j]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "borelkit.cli", "reduce-check", "-p", "z1*z2",
                           "--no-timestamp"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["is_reduced"]
