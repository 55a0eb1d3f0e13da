#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
File: model_file.py
License: BSD 3-Clause
Description:
    JSON model files holding a source p(u, v), a channel p(y | x1, x2) or both:

    {
      "name": "example",
      "source": {"u": ["1", "0"], "v": ["1", "0"], "p": [["1/3", "1/6"], ["1/6", "1/3"]]},
      "channel": {"x1": ["0", "1"], "x2": ["0", "1"], "y": ["1", "0"],
                  "input_order": ["11", "10", "01", "00"],
                  "p": [[1, 0.5, 0.5, 0], [0, 0.5, 0.5, 1]]}
    }

    Entries are numbers or fraction strings. Channel rows are indexed by y and
    their columns follow input_order; without input_order the columns are
    x1-major (00, 01, 10, 11) or, with descending_order, 11, 10, 01, 00.
    Matrices whose sums are off by at most 1e-9 are renormalized.
"""

from dataclasses import dataclass
from fractions import Fraction
import json

import numpy as np

from probcore import (Alphabet, AlphabetMismatch, ChannelModel, InvariantViolation, JointDistribution,
                      ProbabilityModelError, verboseprint)

RENORMALIZE_TOL = 1e-9
DESCENDING_INPUT_ORDER = ("11", "10", "01", "00")


class ParseError(ProbabilityModelError):
    def __init__(self, message, origin="<string>", line=None, column=None, key_path=None):
        self.origin = origin
        self.line = line
        self.column = column
        self.key_path = key_path
        if line is not None:
            where = "{}:{}:{}".format(origin, line, column)
        elif key_path is not None:
            where = "{}: {}".format(origin, key_path)
        else:
            where = origin
        super().__init__("{}: {}".format(where, message))


@dataclass(frozen=True, eq=False)
class ModelFile:
    name: str = ""
    source: JointDistribution = None
    channel: ChannelModel = None


def _number(value, origin, key_path):
    if isinstance(value, bool):
        raise ParseError("expected a probability, got {!r}".format(value), origin, key_path=key_path)
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError("expected a probability, got {!r}".format(value), origin, key_path=key_path)


def _matrix(rows, origin, key_path):
    if not isinstance(rows, list) or not rows or not all(isinstance(row, list) for row in rows):
        raise ParseError("expected a non-empty list of rows", origin, key_path=key_path)
    width = len(rows[0])
    if width == 0:
        raise ParseError("rows must not be empty", origin, key_path=key_path)
    matrix = np.empty((len(rows), width))
    for (i, row) in enumerate(rows):
        if len(row) != width:
            raise ParseError("row has {} entries, expected {}".format(len(row), width), origin,
                             key_path="{}[{}]".format(key_path, i))
        for (j, value) in enumerate(row):
            matrix[i, j] = _number(value, origin, "{}[{}][{}]".format(key_path, i, j))
    if not np.all(np.isfinite(matrix)):
        raise InvariantViolation("{}: {} has non-finite entries".format(origin, key_path))
    if np.any(matrix < 0.0):
        raise InvariantViolation("{}: {} has negative entries".format(origin, key_path))
    return matrix


def _labels(section, key, size, origin, key_path):
    if key not in section:
        return Alphabet.ofSize(size)
    labels = section[key]
    if not isinstance(labels, list) or not all(isinstance(s, (str, int)) for s in labels):
        raise ParseError("expected a list of labels", origin, key_path="{}.{}".format(key_path, key))
    if size is None:
        size = len(labels)
    if len(labels) != size:
        raise ParseError("{} labels for {} symbols".format(len(labels), size), origin,
                         key_path="{}.{}".format(key_path, key))
    return Alphabet(tuple(labels))


def _renormalize(matrix, axis, origin, what):
    sums = matrix.sum(axis=axis, keepdims=axis is not None)
    deviation = float(np.max(np.abs(sums - 1.0)))
    if deviation > RENORMALIZE_TOL:
        raise InvariantViolation("{}: {} sums deviate from 1 by {:.3g}".format(origin, what, deviation))
    if deviation > 0.0:
        verboseprint("{}: renormalizing {} (deviation {:.3g})".format(origin, what, deviation))
    return matrix / sums


def _section(document, key, origin):
    section = document[key]
    if not isinstance(section, dict):
        raise ParseError("expected an object", origin, key_path=key)
    if "p" not in section:
        raise ParseError("missing key 'p'", origin, key_path=key)
    return section


def _parse_source(document, origin):
    section = _section(document, "source", origin)
    matrix = _matrix(section["p"], origin, "source.p")
    rows = _labels(section, "u", matrix.shape[0], origin, "source")
    cols = _labels(section, "v", matrix.shape[1], origin, "source")
    return JointDistribution(rows, cols, _renormalize(matrix, None, origin, "source"))


def _parse_channel(document, origin, descending_order):
    section = _section(document, "channel", origin)
    matrix = _matrix(section["p"], origin, "channel.p")
    for key in ("x1", "x2"):
        if key not in section:
            raise ParseError("missing key '{}'".format(key), origin, key_path="channel")
    x1 = _labels(section, "x1", None, origin, "channel")
    x2 = _labels(section, "x2", None, origin, "channel")
    y = _labels(section, "y", matrix.shape[0], origin, "channel")
    inputs = x1.product(x2)
    if matrix.shape[1] != len(inputs):
        raise ParseError("{} columns for {} input pairs".format(matrix.shape[1], len(inputs)), origin,
                         key_path="channel.p")

    if "input_order" in section:
        order = section["input_order"]
        if not isinstance(order, list):
            raise ParseError("expected a list of input pairs", origin, key_path="channel.input_order")
    elif descending_order:
        order = list(DESCENDING_INPUT_ORDER)
    else:
        order = list(inputs.symbols)
    if len(order) != len(inputs):
        raise ParseError("{} input pairs listed, the channel has {}".format(len(order), len(inputs)), origin,
                         key_path="channel.input_order")
    try:
        columns = [inputs.index(label) for label in order]
    except AlphabetMismatch as e:
        raise ParseError(str(e), origin, key_path="channel.input_order")
    if sorted(columns) != list(range(len(inputs))):
        raise ParseError("input pairs must each appear once", origin, key_path="channel.input_order")

    transition = np.empty_like(matrix)
    transition[:, columns] = matrix
    transition = _renormalize(transition, 0, origin, "channel columns")
    return ChannelModel(x1, x2, y, transition)


def parse_model_text(text, origin="<string>", descending_order=False):
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, origin, line=e.lineno, column=e.colno)
    if not isinstance(document, dict):
        raise ParseError("expected an object at the top level", origin, key_path="$")
    name = document.get("name", "")
    if not isinstance(name, str):
        raise ParseError("expected a string", origin, key_path="name")
    source = _parse_source(document, origin) if "source" in document else None
    channel = _parse_channel(document, origin, descending_order) if "channel" in document else None
    return ModelFile(name, source, channel)


def parse_model(path, descending_order=False):
    """
    Read a model file.

    Raises:
        ParseError: malformed JSON (line and column) or structure (key path)
        InvariantViolation: negative entries or sums off by more than 1e-9
    """
    with open(path, encoding="utf-8") as f:
        return parse_model_text(f.read(), str(path), descending_order)


def model_to_text(model):
    document = {"name": model.name}
    if model.source is not None:
        document["source"] = {
            "u": list(model.source.row_alphabet.symbols),
            "v": list(model.source.col_alphabet.symbols),
            "p": model.source.matrix.tolist(),
        }
    if model.channel is not None:
        channel = model.channel
        document["channel"] = {
            "x1": list(channel.x1_alphabet.symbols),
            "x2": list(channel.x2_alphabet.symbols),
            "y": list(channel.y_alphabet.symbols),
            "input_order": list(channel.input_alphabet.symbols),
            "p": channel.transition.tolist(),
        }
    return json.dumps(document, indent=2) + "\n"


def emit_model(model, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(model_to_text(model))
