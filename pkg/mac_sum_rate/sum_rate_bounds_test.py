"""
File: sum_rate_bounds_test.py
License: BSD 3-Clause
Description:
    Command line subcommands, output formats and exit codes.
"""

import csv
import io
import json
import os
import re

import pytest

from bounds import BoundReport
from sum_rate_bounds import EXIT_ERROR, EXIT_INFEASIBLE, EXIT_OK, run

MODELS = os.path.join(os.path.dirname(os.path.realpath(__file__)), "models")
SOURCE_1 = os.path.join(MODELS, "source1.json")
SOURCE_2 = os.path.join(MODELS, "source2.json")
CHANNEL = os.path.join(MODELS, "mac_channel.json")
FAST = ["--grid", "0.02", "--restarts", "4"]


def value_of(text, key):
    return float(re.search(r"^{}=(\S+)$".format(re.escape(key)), text, re.MULTILINE).group(1))


def test_report_text(capsys):
    assert run(["report", "--source", SOURCE_1, "--channel", CHANNEL] + FAST) == EXIT_OK
    out = capsys.readouterr().out
    assert "model: symmetric binary source" in out
    assert "H(U,V)=1.918" in out
    assert "lambda2=0.3333" in out
    assert value_of(out, "trivial") == pytest.approx(1.0, abs=1e-3)
    assert value_of(out, "upper") == pytest.approx(2/3, abs=0.01)
    assert "upper_error=" in out
    assert out.rstrip().endswith("verdict=INFEASIBLE_BY_TRIVIAL")


def test_report_uses_the_default_channel(capsys):
    assert run(["report", "--source", SOURCE_1] + FAST) == EXIT_OK
    assert "verdict=INFEASIBLE_BY_TRIVIAL" in capsys.readouterr().out


def test_fail_on_infeasible(capsys):
    argv = ["report", "--source", SOURCE_2, "--channel", CHANNEL, "--fail-on-infeasible"] + FAST
    assert run(argv) == EXIT_INFEASIBLE
    assert "verdict=INFEASIBLE_BY_UPPER" in capsys.readouterr().out


def test_report_json_is_reproducible(capsys):
    argv = ["--format", "json", "report", "--source", SOURCE_2, "--channel", CHANNEL] + FAST
    assert run(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    document = json.loads(first)
    assert set(document) == set(BoundReport.__dataclass_fields__)
    assert document["lambda2_uv"] == pytest.approx(1/9, abs=1e-12)


def test_report_csv(capsys):
    assert run(["report", "--source", SOURCE_2, "--format", "csv"] + FAST) == EXIT_OK
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 2
    assert rows[0] == list(BoundReport.__dataclass_fields__)
    record = dict(zip(rows[0], rows[1]))
    assert record["verdict"] == "INFEASIBLE_BY_UPPER"
    assert float(record["source_entropy"]) == pytest.approx(0.922, abs=1e-3)


def test_missing_file(capsys):
    assert run(["report", "--source", os.path.join(MODELS, "missing.json")]) == EXIT_ERROR
    assert capsys.readouterr().err.startswith("error:")


def test_channel_only_file_is_not_a_source(capsys):
    assert run(["spectrum", "--source", CHANNEL]) == EXIT_ERROR
    assert "holds no source" in capsys.readouterr().err


def test_invalid_option_value(capsys):
    assert run(["report", "--source", SOURCE_1, "--grid", "0.7"]) == EXIT_ERROR


def test_spectrum_text(capsys):
    assert run(["spectrum", "--source", SOURCE_2]) == EXIT_OK
    out = capsys.readouterr().out
    assert "singular_values=1, 0.1111" in out
    assert "lambda2=0.1111" in out
    assert "decomposition=none" in out


def test_spectrum_json(capsys):
    assert run(["spectrum", "--source", SOURCE_1, "--format", "json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["singular_values"] == pytest.approx([1.0, 1/3], abs=1e-12)
    assert document["decomposition"] is None


def test_spectrum_of_decomposable_source(tmp_path, capsys):
    path = tmp_path / "blocks.json"
    path.write_text('{"source": {"p": [[0.5, 0], [0, 0.5]]}}', encoding="utf-8")
    assert run(["spectrum", "--source", str(path), "--format", "json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["lambda2"] == pytest.approx(1.0)
    assert document["decomposition"] == [[0], [0]]


def test_spectrum_csv(capsys):
    assert run(["spectrum", "--source", SOURCE_2, "--format", "csv"]) == EXIT_OK
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["index", "singular_value"]
    assert float(rows[2][1]) == pytest.approx(1/9, abs=1e-12)


def test_verify_dpi(capsys):
    assert run(["verify", "dpi", "--seeds", "1000"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("dpi: 1000/1000 passed, min slack=")


def test_verify_json(capsys):
    assert run(["verify", "theorem1", "--seeds", "50", "--format", "json"]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert (document["suite"], document["total"], document["passed"]) == ("theorem1", 50, 50)
    assert document["failures"] == []


def test_verify_appendix(capsys):
    assert run(["verify", "appendix", "--n-max", "4"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("appendix: 4/4 passed")


def test_verify_degenerate_marginal(capsys):
    assert run(["verify", "appendix", "--p-u", "1.0"]) == EXIT_ERROR


def test_construct_table(capsys):
    assert run(["construct", "--n-max", "3"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["n", "gap", "c1", "c2", "lower_bound", "lambda2", "running"]
    assert [line.split()[0] for line in lines[1:]] == ["1", "2", "3"]


def test_construct_json(capsys):
    assert run(["construct", "--format", "json"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    assert [row["n"] for row in rows] == list(range(1, 9))
    assert rows[0]["gap"] == pytest.approx(0.1)
    assert all(row["lambda2_Pprime"] == pytest.approx(1.0, abs=1e-8) for row in rows)
    assert 1.0 - rows[-1]["running_max"] < 0.02


def test_global_flags_before_the_subcommand(capsys):
    assert run(["--format", "json", "construct", "--n-max", "2"]) == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)) == 2


@pytest.mark.parametrize("argv", [
    ["report"],
    ["verify", "appendix", "--p-u", "abc"],
    ["verify", "dpi", "--seeds", "-3"],
    ["verify", "dpi", "--seeds", "0"],
    ["construct", "--n-max", "0"],
    ["unknown"],
])
def test_bad_command_lines_exit_with_error(argv, capsys):
    assert run(argv) == EXIT_ERROR
    err = capsys.readouterr().err
    assert err.startswith("usage:")
    assert "error:" in err


@pytest.mark.parametrize("s1", ["5", "0,0"])
def test_construct_rejects_s1_outside_the_alphabet(s1, capsys):
    assert run(["construct", "--s1", s1, "--n-max", "2"]) == EXIT_ERROR
    assert capsys.readouterr().err.startswith("error:")


@pytest.mark.parametrize("flag", ["--paper-order", "--descending-order"])
def test_descending_column_order_flag(flag, tmp_path, capsys):
    channel = tmp_path / "descending.json"
    with open(CHANNEL, encoding="utf-8") as f:
        document = json.load(f)
    assert document["channel"].pop("input_order") == ["11", "10", "01", "00"]
    channel.write_text(json.dumps(document), encoding="utf-8")
    assert run(["report", "--source", SOURCE_1, "--channel", str(channel), flag] + FAST) == EXIT_OK
    out = capsys.readouterr().out
    assert value_of(out, "upper") == pytest.approx(2/3, abs=0.01)
