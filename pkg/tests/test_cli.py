from __future__ import annotations

import re
import subprocess
import sys
from pathlib import Path

import pytest

from wreathcell.builtins import dual_numbers
from wreathcell.cli import RunConfig, cmd_wreath, config_from_args, main, run
from wreathcell.exactalg import QQ
from wreathcell.wreath import build_wreath, wreath_report

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden"


def invoke(argv, capsys):
    status = main(argv)
    out = capsys.readouterr()
    return status, out.out, out.err


def field(text, name):
    m = re.search(rf"^{re.escape(name)}: (.*)$", text, re.M)
    assert m, f"no {name!r} line"
    return m.group(1)


# --- verify --------------------------------------------------------------------


def test_verify_dual_numbers(capsys):
    status, out, _ = invoke(["verify", "--builtin", "dual_numbers", "--char", "0"], capsys)
    assert status == 0
    assert "verdict: PASS" in out
    for family in ["star swaps indices", "unit", "associativity", "multiplication rule"]:
        assert f"{family}: pass" in out


def test_verify_swapped_dual_fails_the_multiplication_rule(capsys):
    status, out, _ = invoke(["verify", "--file", str(DATA / "swapped_dual.datum")], capsys)
    assert status == 1
    assert "multiplication rule: FAIL" in out
    assert "first counterexample: C[top; 1, 1] * C[bot; x, x]" in out


def test_verify_trivial_char_7(capsys):
    status, out, _ = invoke(["verify", "--builtin", "trivial", "--char", "7"], capsys)
    assert status == 0 and "verdict: PASS" in out


def test_verify_with_n_checks_the_wreath(capsys):
    status, out, _ = invoke(["verify", "--builtin", "dual_numbers", "--n", "2"], capsys)
    assert status == 0
    assert "dual numbers wr S_2" in out
    assert "multiplication congruence: pass" in out


# --- wreath --------------------------------------------------------------------

WREATH_EXAMPLES = [
    ("trivial_n2_char2", ["--builtin", "trivial", "--n", "2", "--char", "2"], 2, 1, "no"),
    ("dual_n2_char0", ["--builtin", "dual_numbers", "--n", "2", "--char", "0"], 5, 2, "no"),
    ("kS2_n2_char0", ["--builtin", "sym_group", "--param", "n=2", "--n", "2", "--char", "0"], 5, 5, "yes"),
]


@pytest.mark.parametrize("name, args, cells, simples, semisimple", WREATH_EXAMPLES, ids=[e[0] for e in WREATH_EXAMPLES])
def test_wreath_examples(name, args, cells, simples, semisimple, capsys):
    status, out, _ = invoke(["wreath", *args], capsys)
    assert status == 0
    assert int(field(out, "cell modules")) == cells
    assert int(field(out, "simples")) == simples
    assert field(out, "semisimple").endswith(f"wreath={semisimple}")
    assert field(out, "verdict") == "PASS"
    assert out == (GOLDEN / f"{name}.txt").read_text()


def test_out_writes_the_report(tmp_path, capsys):
    target = tmp_path / "report.txt"
    status, out, _ = invoke(["wreath", "--builtin", "trivial", "--n", "2", "--char", "2", "--out", str(target)], capsys)
    assert status == 0 and out == ""
    assert target.read_text() == (GOLDEN / "trivial_n2_char2.txt").read_text()


def test_wreath_is_deterministic():
    config = config_from_args(["wreath", "--builtin", "dual_numbers", "--n", "2", "--seed", "3"])
    assert cmd_wreath(config) == cmd_wreath(config)


def test_wreath_n3_is_deterministic():
    config = RunConfig("wreath", builtin="dual_numbers", n=3, char=2)
    first, second = run(config), run(config)
    assert first[0] == 0 and first == second
    assert "inflation: exhaustive" in first[1]


def test_report_probe_path_is_deterministic():
    W = build_wreath(dual_numbers(QQ), 3)
    texts = [wreath_report(W, seed=5, probe_threshold=10, probes=50).text() for _ in range(2)]
    assert texts[0] == texts[1]
    assert "inflation: 50 random probes" in texts[0]


# --- usage errors ----------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["wreath", "--builtin", "trivial", "--n", "2", "--char", "4"],
    ["wreath", "--builtin", "dual_numbers", "--n", "3", "--max-dim", "10"],
    ["verify", "--file", "no/such/file.datum"],
    ["verify", "--builtin", "sym_group", "--param", "n=x"],
    ["verify", "--builtin", "trivial", "--param", "oops"],
    ["verify", "--builtin", "trivial", "--n", "-1"],
    ["wreath", "--builtin", "trivial"],
    ["verify", "--builtin", "trivial", "--file", "x"],
    ["verify", "--builtin", "nonsense"],
], ids=["char4", "cap", "missing-file", "bad-param", "param-syntax", "negative-n", "no-n", "two-sources", "unknown"])
def test_usage_errors_exit_2(argv, capsys):
    status, out, err = invoke(argv, capsys)
    assert status == 2
    assert out == ""
    assert err


def test_malformed_datum_file(tmp_path, capsys):
    bad = tmp_path / "bad.datum"
    bad.write_text("{not json")
    status, _, err = invoke(["verify", "--file", str(bad)], capsys)
    assert status == 2 and err.startswith("error:")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wreathcell.cli", "verify", "--builtin", "trivial"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "verdict: PASS" in proc.stdout
