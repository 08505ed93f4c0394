import json
import re
import shlex
import shutil
import subprocess
import sys

import pytest

from relaxedchar import cli


def run(argv, capsys):
    code = cli.run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _help_examples():
    parser = cli.build_parser()
    texts = [parser.format_help()]
    sub = next(a for a in parser._actions if a.dest == "command")
    texts += [p.format_help() for p in sub.choices.values()]
    found = []
    for t in texts:
        found += re.findall(r"^\s*(?:example: )?relaxedchar (.+)$", t, re.M)
    return sorted(set(found))


def test_help_lists_every_subcommand(capsys):
    code, out, _ = run(["--help"], capsys)
    assert code == 0
    parser = cli.build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    assert set(sub.choices) == {"char", "check", "kl", "oracle", "list"}
    for name, p in sub.choices.items():
        assert name in out
        assert f"example: relaxedchar {name} " in p.format_help()


@pytest.mark.parametrize("example", _help_examples())
def test_help_examples_run(example, capsys):
    code, out, err = run(shlex.split(example), capsys)
    assert code == 0, err
    assert out.strip()


def test_char_verma_json(capsys):
    code, out, _ = run(["char", "verma", "--rank", "1", "--level", "-1/2", "--weight", "[0]", "--order", "3", "--format", "json"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["base"] == "1/24" and d["coeffs"] == ["1", "3", "9", "22"]


def test_missing_weight_is_config_error(capsys):
    code, _, err = run(["char", "verma", "--rank", "1", "--level", "-1/2"], capsys)
    assert code == 2
    assert "usage:" in err and "--weight" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["char", "verma", "--weight", "[0]", "--level", "1.5"],
        ["char", "verma", "--weight", "[0,1]", "--rank", "1"],
        ["char", "nonsense"],
        ["check", "exponents", "--rank", "1", "--level", "-2"],
        ["oracle", "rank", "--weight", "[0]"],
        ["oracle", "rank", "--weight", "[0]", "--offset", "[0]", "--depth", "9"],
    ],
)
def test_config_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_failed_check_exit_one(capsys):
    code, out, _ = run(["oracle", "string-limit", "--weight", "[-1/2]", "--nmin", "-1"], capsys)
    assert code == 1 and "no stabilisation" in out


def test_exponents(capsys):
    code, out, _ = run(["check", "exponents", "--rank", "2", "--level", "-3/2"], capsys)
    assert code == 0 and json.loads(out)["ok"]


def test_determinism(capsys):
    argv = ["list", "admissible", "--rank", "2", "--level", "-3/2"]
    first = run(argv, capsys)[1]
    second = run(argv, capsys)[1]
    assert first == second


@pytest.mark.parametrize("fmt", ["json", "csv", "table"])
def test_formats(fmt, capsys):
    code, out, _ = run(["kl", "table", "--weight", "[0]", "--bound", "4", "--format", fmt], capsys)
    assert code == 0
    if fmt == "csv":
        assert out.splitlines()[0].startswith("y_word,")
    if fmt == "table":
        assert all(len(line) == len(out.splitlines()[0]) for line in out.splitlines()[1:])


def test_out_file(tmp_path, capsys):
    path = tmp_path / "o.json"
    code, out, _ = run(["char", "w-ord", "--weight", "[-1/2]", "--order", "4", "--out", str(path)], capsys)
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["series"]["coeffs"][0] == "1"


def test_thread_setting(monkeypatch):
    monkeypatch.setenv("RELAXEDCHAR_THREADS", "3")
    assert cli.threads() == 3
    monkeypatch.setenv("RELAXEDCHAR_THREADS", "0")
    assert cli.threads() == 1


def test_threads_do_not_change_output(monkeypatch, capsys):
    argv = ["check", "identity", "--rank", "2", "--level", "-1/2", "--order", "4"]
    monkeypatch.setenv("RELAXEDCHAR_THREADS", "1")
    one = run(argv, capsys)
    monkeypatch.setenv("RELAXEDCHAR_THREADS", "4")
    four = run(argv, capsys)
    assert one == four and one[0] == 0


def test_fixture_suite_passes():
    rep = cli.fixture_regression(cli.FIXTURE_DIR)
    assert rep["ok"] and rep["fixtures"] >= 10


def test_empty_suite(tmp_path, capsys):
    assert run(["check", "fixtures", "--suite", str(tmp_path)], capsys)[0] == 0


def test_tampered_fixture(tmp_path, capsys):
    src = cli.FIXTURE_DIR / "relaxed_verma_a1.json"
    dst = tmp_path / src.name
    fx = json.loads(src.read_text())
    fx["expected"]["coeffs"][2] = "10"
    dst.write_text(json.dumps(fx))
    code, out, _ = run(["check", "fixtures", "--suite", str(tmp_path)], capsys)
    assert code == 1
    rep = json.loads(out)
    assert rep["results"][0]["first_difference"].startswith("$.coeffs[2]")


def test_console_script():
    exe = shutil.which("relaxedchar")
    cmd = [exe] if exe else [sys.executable, "-m", "relaxedchar"]
    res = subprocess.run(cmd + ["check", "exponents", "--rank", "1", "--level", "-1/2"], capture_output=True, text=True)
    assert res.returncode == 0
