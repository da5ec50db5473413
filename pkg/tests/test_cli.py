import io
import json
import subprocess
import sys

import pytest

from robustpm.cli import main, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_count():
    code, text = call("count", "--eps", "0.5")
    data = json.loads(text)
    assert code == 0
    methods = data["methods"]
    assert methods["prop1"]["collapsed_patterns"] == 2
    assert methods["prop1"]["uniform_configurations"] == 8192
    assert methods["thm1_column"]["uniform_configurations"] == 28672
    assert methods["thm1_row"]["distinct_configurations"] == 4352


def test_analyze_exit_codes():
    assert call("analyze", "--eps", "0.01", "--no-timing")[0] == 0
    code, text = call("analyze", "--eps", "0.5", "--method", "prop1", "--no-timing")
    assert code == 1 and json.loads(text)["witness"] is not None


def test_subsampled_exit_inconclusive():
    assert call("analyze", "--eps", "0.01", "--max-configs", "50")[0] == 2


def test_deterministic_output():
    a = call("analyze", "--eps", "0.0185", "--no-timing")[1]
    b = call("analyze", "--eps", "0.0185", "--no-timing", "--jobs", "2")[1]
    assert a == b


def test_table_format():
    code, text = call("kharitonov", "--entry", "D11", "--eps", "0.5", "--format", "table")
    assert code == 0 and "D11" in text


def test_enumerate_full_limit():
    data = json.loads(call("enumerate", "--eps", "0.3", "--full", "--limit", "5")[1])
    assert len(data["items"]) == 5 and data["truncated"]


def test_freq(tmp_path):
    prob = {"schema": 1, "B": [[[[0.5, 0.6]]]], "D": [[[1, 1]]]}
    path = tmp_path / "p.json"
    path.write_text(json.dumps(prob))
    assert call("freq", "hinf", str(path))[0] == 0
    assert call("freq", "sector", str(path), "--K", "1")[0] == 0


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        run(["analyze", "--method", "nonsense"])
    assert err.value.code == 3


def test_bad_input(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"schema": 1, "B": [}')
    assert main(["analyze", str(path)]) == 4
    assert "invalid input" in capsys.readouterr().err


def test_module_entry():
    res = subprocess.run([sys.executable, "-m", "robustpm", "count", "--eps", "0.1"], capture_output=True, text=True)
    assert res.returncode == 0 and "prop1" in res.stdout
