#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
File: sum_rate_bounds.py
License: BSD 3-Clause
Description:
    Command line front end.

    python sum_rate_bounds.py report --source models/source2.json --channel models/mac_channel.json
    python sum_rate_bounds.py spectrum --source models/source2.json
    python sum_rate_bounds.py verify dpi --seeds 1000
    python sum_rate_bounds.py construct --p-u 0.6,0.4 --p-x1 0.3,0.7 --n-max 8

    Exit code 0 on success, 1 on errors or failed checks, 2 on an
    infeasible verdict when --fail-on-infeasible is given.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

import probcore
from asymptotic import verify_theorem3
from bounds import (ConfigError, INFEASIBLE_BY_TRIVIAL, INFEASIBLE_BY_UPPER, BoundReport, OptimizerConfig,
                    assess)
from model_file import parse_model
from property_suites import (APPROACH_TOL, run_appendix_suite, run_decomposition_suite, run_dpi_suite,
                             run_iid_suite, run_theorem1_suite)
from spectral import detect_decomposition, profile_of
from probcore import strip_zero_mass

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2

DEFAULT_CHANNEL = os.path.join(os.path.split(os.path.realpath(__file__))[0], "models", "mac_channel.json")

SUITES = ("theorem1", "dpi", "iid", "decomposition", "appendix")
REPORT_FIELDS = tuple(BoundReport.__dataclass_fields__)


def _bits(value):
    return "{:.3f}".format(value)


def _spectral(value):
    return "{:.4g}".format(value)


def _json_value(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def _csv_value(value):
    if isinstance(value, float):
        return repr(float(value))
    return value


def _vector(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _indices(text):
    return tuple(int(x) for x in text.split(",") if x.strip())


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer, got {}".format(text))
    return value


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """Reports bad command lines as UsageError so run() keeps its exit codes."""

    def error(self, message):
        raise UsageError("{}\n{}: error: {}".format(self.format_usage().rstrip(), self.prog, message))


def _csv_text(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _load(args):
    source_model = parse_model(args.source, args.descending_order)
    if source_model.source is None:
        raise ConfigError("{} holds no source".format(args.source))
    if args.channel is not None:
        channel = parse_model(args.channel, args.descending_order).channel
    elif source_model.channel is not None:
        channel = source_model.channel
    else:
        channel = parse_model(DEFAULT_CHANNEL).channel
    if channel is None:
        raise ConfigError("no channel found")
    return (source_model, channel)


def format_report(report, fmt, name=""):
    if fmt == "json":
        return json.dumps({k: _json_value(v) for (k, v) in report.asdict().items()}, indent=2) + "\n"
    if fmt == "csv":
        return _csv_text(REPORT_FIELDS, [[_csv_value(getattr(report, k)) for k in REPORT_FIELDS]])
    lines = []
    if name:
        lines.append("model: {}".format(name))
    lines += ["H(U,V)={}".format(_bits(report.source_entropy)),
              "lambda2={}".format(_spectral(report.lambda2_uv)),
              "trivial={}".format(_bits(report.trivial_bound)),
              "achievable={}".format(_bits(report.achievable_rate)),
              "upper={}".format(_bits(report.upper_bound))]
    if report.upper_bound_certified:
        lines.append("upper_error={:.2g}".format(report.upper_bound_error))
    else:
        lines.append("upper_certified=no")
    lines += ["classical_dpi_upper={}".format(_bits(report.classical_dpi_upper)),
              "verdict={}".format(report.verdict)]
    return "\n".join(lines) + "\n"


def run_report(args):
    (model, channel) = _load(args)
    cfg = OptimizerConfig(seed=args.seed, restarts=args.restarts, grid_resolution=args.grid,
                          convergence_tol=args.tol)
    report = assess(model.source, channel, cfg)
    sys.stdout.write(format_report(report, args.format, model.name))
    if args.fail_on_infeasible and report.verdict in (INFEASIBLE_BY_TRIVIAL, INFEASIBLE_BY_UPPER):
        return EXIT_INFEASIBLE
    return EXIT_OK


def run_spectrum(args):
    model = parse_model(args.source, args.descending_order)
    if model.source is None:
        raise ConfigError("{} holds no source".format(args.source))
    joint = strip_zero_mass(model.source)
    values = profile_of(joint).singular_values
    lam2 = float(values[1]) if len(values) > 1 else 0.0
    witness = detect_decomposition(joint)
    if args.format == "json":
        document = {"singular_values": values.tolist(), "lambda2": lam2,
                    "decomposition": None if witness is None else [list(witness[0]), list(witness[1])]}
        sys.stdout.write(json.dumps(document, indent=2) + "\n")
    elif args.format == "csv":
        sys.stdout.write(_csv_text(("index", "singular_value"), [[i + 1, repr(float(v))] for (i, v) in enumerate(values)]))
    else:
        print("singular_values={}".format(", ".join(_spectral(v) for v in values)))
        print("lambda2={}".format(_spectral(lam2)))
        if witness is None:
            print("decomposition=none")
        else:
            print("decomposition=S1{} S2{}".format(
                [joint.row_alphabet.symbols[i] for i in witness[0]],
                [joint.col_alphabet.symbols[j] for j in witness[1]]))
    return EXIT_OK


def _run_suite(args):
    seeds = range(args.seeds)
    if args.suite == "theorem1":
        return (run_theorem1_suite(seeds), "max deviation")
    if args.suite == "dpi":
        return (run_dpi_suite(seeds), "min slack")
    if args.suite == "iid":
        return (run_iid_suite(seeds), "max error")
    if args.suite == "decomposition":
        return (run_decomposition_suite(seeds), "min |lambda2 - 1|")
    return (run_appendix_suite(args.p_u, args.p_x1, args.s1, args.n_max, args.approach_tol), "max 1 - lambda2")


def run_verify(args):
    (result, label) = _run_suite(args)
    if args.format == "json":
        document = {"suite": result.name, "total": result.total, "passed": result.passed,
                    "worst_value": _json_value(result.worst_value), "worst_seed": result.worst_seed,
                    "failures": result.failures}
        sys.stdout.write(json.dumps(document, indent=2) + "\n")
    else:
        print("{}: {}/{} passed, {}={:.3g} (seed {})".format(result.name, result.passed, result.total, label,
                                                            result.worst_value, result.worst_seed))
        if result.failures:
            print("failing seeds: {}".format(" ".join(str(s) for s in result.failures[:20])))
    return EXIT_OK if result.ok else EXIT_ERROR


CONSTRUCT_FIELDS = ("n", "gap", "c1", "c2", "c3", "c4", "lower_bound", "lambda2_P", "lambda2_Pprime", "running_max")


def run_construct(args):
    rows = verify_theorem3(args.p_x1, args.s1, args.p_u, args.n_max)
    table = [[row.n, row.certificate.gap, row.certificate.c1, row.certificate.c2, row.certificate.c3,
              row.certificate.c4, row.lower_bound, row.lambda2_actual, row.certificate.lambda2_Pprime,
              row.running_max] for row in rows]
    if args.format == "json":
        sys.stdout.write(json.dumps([dict(zip(CONSTRUCT_FIELDS, r)) for r in table], indent=2) + "\n")
    elif args.format == "csv":
        sys.stdout.write(_csv_text(CONSTRUCT_FIELDS, [[r[0]] + [repr(float(v)) for v in r[1:]] for r in table]))
    else:
        print("{:>3} {:>10} {:>8} {:>8} {:>12} {:>10} {:>10}".format(
            "n", "gap", "c1", "c2", "lower_bound", "lambda2", "running"))
        for r in table:
            print("{:>3} {:>10.3e} {:>8.3f} {:>8.3f} {:>12.4f} {:>10.6f} {:>10.6f}".format(
                r[0], r[1], r[2], r[3], r[6], r[7], r[9]))
    return EXIT_OK


def build_parser():
    parser = ArgumentParser(
        description='Single-letter sum-rate bounds for correlated sources over a multiple access channel')
    parser.add_argument('--verbose', action='store_true', help='print solver progress on stderr')
    parser.add_argument('--format', choices=('text', 'csv', 'json'), default='text')
    sub = parser.add_subparsers(dest='command', required=True)

    def add_model_args(p, channel=True):
        p.add_argument('--source', required=True, help='model file with the source p(u,v)')
        if channel:
            p.add_argument('--channel', help='model file with the channel p(y|x1,x2)')
        p.add_argument('--paper-order', '--descending-order', dest='descending_order', action='store_true',
                       help='channel columns without input_order are 11 10 01 00')

    def add_common(p):
        # Accept the global flags after the subcommand too
        p.add_argument('--verbose', action='store_true', default=argparse.SUPPRESS)
        p.add_argument('--format', choices=('text', 'csv', 'json'), default=argparse.SUPPRESS)

    report = sub.add_parser('report', help='all bounds and the verdict')
    add_model_args(report)
    add_common(report)
    report.add_argument('--seed', type=int, default=42)
    report.add_argument('--restarts', type=int, default=32)
    report.add_argument('--grid', type=float, default=0.0025)
    report.add_argument('--tol', type=float, default=1e-9)
    report.add_argument('--fail-on-infeasible', action='store_true')

    spectrum = sub.add_parser('spectrum', help='singular values of the normalized source matrix')
    add_model_args(spectrum, channel=False)
    add_common(spectrum)

    def add_construction_args(p):
        p.add_argument('--p-u', type=_vector, default=[0.6, 0.4], help='marginal of one letter of U')
        p.add_argument('--p-x1', type=_vector, default=[0.3, 0.7], help='marginal of X1')
        p.add_argument('--s1', type=_indices, default=None, help='indices of S1 (default: largest atom)')
        p.add_argument('--n-max', type=_positive_int, default=8)

    verify = sub.add_parser('verify', help='seeded property suites')
    verify.add_argument('suite', choices=SUITES)
    verify.add_argument('--seeds', type=_positive_int, default=1000)
    verify.add_argument('--approach-tol', type=float, default=APPROACH_TOL,
                        help='appendix: largest 1 - lambda2 allowed at n = 8')
    add_construction_args(verify)
    add_common(verify)

    construct = sub.add_parser('construct', help='near-decomposable construction for n = 1..n_max')
    add_construction_args(construct)
    add_common(construct)
    return parser


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_ERROR
    probcore.verbose = args.verbose
    commands = {"report": run_report, "spectrum": run_spectrum, "verify": run_verify, "construct": run_construct}
    try:
        return commands[args.command](args)
    except (ValueError, RuntimeError, OSError, AssertionError) as e:
        print("error: {}".format(e), file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(run())
