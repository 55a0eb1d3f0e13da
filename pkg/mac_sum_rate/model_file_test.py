"""
File: model_file_test.py
License: BSD 3-Clause
Description:
    Reading and writing JSON model files.
"""

import json
import os

import numpy as np
import pytest

from model_file import ModelFile, ParseError, emit_model, model_to_text, parse_model, parse_model_text
from probcore import InvariantViolation

MODELS = os.path.join(os.path.dirname(os.path.realpath(__file__)), "models")

# Canonical x1-major columns 00, 01, 10, 11; rows y = 1, y = 0
ADDER = [[0.0, 0.5, 0.5, 1.0], [1.0, 0.5, 0.5, 0.0]]


def test_parse_example_source():
    model = parse_model(os.path.join(MODELS, "source1.json"))
    assert model.name == "symmetric binary source"
    assert model.channel is None
    np.testing.assert_allclose(model.source.matrix, [[1/3, 1/6], [1/6, 1/3]], atol=1e-15)
    assert model.source.row_alphabet.symbols == ("1", "0")


def test_parse_example_channel_reorders_columns():
    model = parse_model(os.path.join(MODELS, "mac_channel.json"))
    assert model.source is None
    np.testing.assert_allclose(model.channel.transition, ADDER)
    assert model.channel.y_alphabet.symbols == ("1", "0")


def test_descending_order_flag():
    text = json.dumps({"channel": {"x1": ["0", "1"], "x2": ["0", "1"],
                                   "p": [[1, 0.5, 0.5, 0], [0, 0.5, 0.5, 1]]}})
    np.testing.assert_allclose(parse_model_text(text, descending_order=True).channel.transition, ADDER)
    # Without the flag the columns are taken as x1-major
    np.testing.assert_allclose(parse_model_text(text).channel.transition, [[1, 0.5, 0.5, 0], [0, 0.5, 0.5, 1]])


def test_fraction_strings_and_default_labels():
    model = parse_model_text('{"source": {"p": [["1/4", "1/4"], ["1/2", 0]]}}')
    np.testing.assert_allclose(model.source.matrix, [[0.25, 0.25], [0.5, 0.0]])
    assert model.source.col_alphabet.symbols == ("0", "1")
    assert model.name == ""


def test_excess_mass_is_rejected():
    with pytest.raises(InvariantViolation):
        parse_model_text('{"source": {"p": [[0.5, 0.5], [0.25, 0.25]]}}')


def test_negative_entries_are_rejected():
    with pytest.raises(InvariantViolation):
        parse_model_text('{"source": {"p": [[-0.25, 0.75], [0.25, 0.25]]}}')


def test_tiny_deviation_is_renormalized():
    model = parse_model_text(json.dumps({"source": {"p": [[0.25, 0.25], [0.25, 0.25 + 1e-12]]}}))
    assert model.source.matrix.sum() == pytest.approx(1.0, abs=1e-15)


def test_channel_columns_must_be_stochastic():
    text = json.dumps({"channel": {"x1": ["0", "1"], "x2": ["0", "1"], "p": [[0.5] * 4, [0.6] * 4]}})
    with pytest.raises(InvariantViolation):
        parse_model_text(text)


def test_syntax_errors_report_line_and_column():
    with pytest.raises(ParseError) as error:
        parse_model_text('{\n  "source": [1, 2,\n}', origin="broken.json")
    assert error.value.line == 3
    assert error.value.column == 1
    assert str(error.value).startswith("broken.json:3:1")


@pytest.mark.parametrize("text, key_path", [
    ('{"channel": {"x2": ["0", "1"], "p": [[1, 1, 1, 1]]}}', "channel"),
    ('{"source": {"p": [[0.5, "half"], [0, 0]]}}', "source.p[0][1]"),
    ('{"source": {"p": [[0.5, 0.5], [0]]}}', "source.p[1]"),
    ('{"source": {"u": ["a"], "p": [[0.5], [0.5]]}}', "source.u"),
    ('{"source": [1, 2]}', "source"),
    ('[1, 2]', "$"),
    ('{"channel": {"x1": ["0", "1"], "x2": ["0", "1"], "input_order": ["00", "01", "10", "10"],'
     ' "p": [[1, 1, 1, 1]]}}', "channel.input_order"),
    ('{"channel": {"x1": ["0", "1"], "x2": ["0", "1"], "input_order": ["00", "01", "10", "22"],'
     ' "p": [[1, 1, 1, 1]]}}', "channel.input_order"),
])
def test_structure_errors_report_the_key_path(text, key_path):
    with pytest.raises(ParseError) as error:
        parse_model_text(text)
    assert error.value.key_path == key_path


def test_round_trip(tmp_path):
    source = parse_model(os.path.join(MODELS, "source3.json")).source
    channel = parse_model(os.path.join(MODELS, "mac_channel.json")).channel
    path = tmp_path / "model.json"
    emit_model(ModelFile("both", source, channel), path)
    again = parse_model(path)
    assert again.name == "both"
    np.testing.assert_allclose(again.source.matrix, source.matrix, atol=1e-12)
    np.testing.assert_allclose(again.channel.transition, channel.transition, atol=1e-12)
    assert again.channel.x1_alphabet == channel.x1_alphabet
    assert json.loads(model_to_text(again))["channel"]["input_order"] == ["00", "01", "10", "11"]
