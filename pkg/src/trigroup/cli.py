"""Command-line front end: sample, certify, spectrum, sweep, report.

Exit codes: 0 success, 1 usage or malformed input, 2 I/O failure, 3 solver
failure in single-shot mode.
"""

import argparse
import json
import os
import sys

from .freeness import format_certificate
from .harness import (
    SweepConfig,
    classify_trial,
    parse_sweep_config,
    run_sweep,
    TrialSettings,
    verdict_record,
)
from .spectra import SolverError, format_spectrum_csv
from .words import (
    FormatError,
    parse_presentation,
    sample_binomial,
    sample_uniform,
    serialize_presentation,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract wants 1
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_text(path):
    with open(path) as fh:
        return fh.read()


def _write_text(path, text):
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def _load_presentation(path):
    return parse_presentation(_read_text(path))


def _cmd_sample(args):
    if (args.p is None) == (args.t is None):
        raise FormatError("give exactly one of --p or --t")
    if args.p is not None:
        pres = sample_binomial(args.n, args.p, args.seed)
    else:
        pres = sample_uniform(args.n, args.t, args.seed)
    _write_text(args.output, serialize_presentation(pres))
    return 0


def _cmd_certify(args):
    pres = _load_presentation(args.presentation)
    settings = TrialSettings(tol=args.tol, margin=args.margin, spectra=not args.skip_spectra)
    verdict = classify_trial(pres, settings)
    record = verdict_record(verdict)

    lines = [f"n={verdict.n} t={verdict.t}"]
    if verdict.free_certified:
        lines.append(f"free: certified, rank {verdict.rank}")
        lines.append(format_certificate(verdict.certificate).rstrip("\n"))
    else:
        lines.append("free: inconclusive")
    lines.append(
        f"chi={verdict.chi}"
        + (f" (not free, assumes {record['chi']['assumes']})" if verdict.chi_witness else "")
    )
    if verdict.isolated:
        lines.append(
            f"isolated generators: {' '.join('g%d' % g for g in verdict.isolated)}"
            f" (not (T), assumes {record['isolated']['assumes']})"
        )
    if verdict.zuk is None:
        lines.append("(T): skipped")
    elif verdict.zuk.certified:
        lines.append(f"(T): certified, lambda2={verdict.zuk.lambda2!r}")
    else:
        lines.append(
            f"(T): inconclusive, lambda2={verdict.zuk.lambda2!r} "
            f"connected={'yes' if verdict.zuk.connected else 'no'}"
        )
    print("\n".join(lines))
    if args.json:
        _write_text(args.json, json.dumps(record, indent=2) + "\n")
    return 0


def _cmd_spectrum(args):
    from .linkgraph import build_link_graph

    pres = _load_presentation(args.presentation)
    text = format_spectrum_csv(build_link_graph(pres), tol=args.tol)
    _write_text(args.output, text)
    return 0


def _cmd_sweep(args):
    config = parse_sweep_config(_read_text(args.config))
    overrides = {}
    if args.output is not None:
        overrides["output"] = args.output
    if args.jobs is not None:
        overrides["jobs"] = args.jobs
    if overrides:
        from dataclasses import replace

        config = replace(config, **overrides)
    result = run_sweep(config)
    if config.output is None:
        sys.stdout.write(result.csv_text)
    print(result.summary, end="")
    if args.figures:
        if config.output is None:
            raise FormatError("--figures needs a CSV output path")
        from .report import render_figures

        outdir = os.path.dirname(os.path.abspath(config.output))
        stem = os.path.splitext(os.path.basename(config.output))[0]
        for path in render_figures(list(result.rows), outdir, stem=stem):
            print(f"wrote {path}")
    return 0


def _cmd_report(args):
    from .report import load_rows, render_figures, report_text

    rows = load_rows(args.csv)
    print(report_text(rows), end="")
    outdir = args.outdir or os.path.dirname(os.path.abspath(args.csv))
    stem = os.path.splitext(os.path.basename(args.csv))[0]
    for path in render_figures(rows, outdir, stem=stem):
        print(f"wrote {path}")
    return 0


def _build_parser():
    parser = _Parser(prog="trigroup", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample a presentation to a file")
    p.add_argument("-n", type=int, required=True, help="number of generators")
    p.add_argument("--p", type=float, help="per-word inclusion probability")
    p.add_argument("--t", type=int, help="exact relation count (uniform model)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", default="-", help="output path, - for stdout")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("certify", help="run all certificates on a presentation")
    p.add_argument("presentation")
    p.add_argument("--json", help="also write the verdict as JSON to this path")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--margin", type=float, default=1e-8)
    p.add_argument("--skip-spectra", action="store_true")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("spectrum", help="link-graph Laplacian spectrum as CSV")
    p.add_argument("presentation")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("sweep", help="run a seeded (n, p) sweep from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--output", help="override the config's CSV path")
    p.add_argument("--jobs", type=int, help="worker processes")
    p.add_argument("--figures", action="store_true", help="render figures next to the CSV")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("report", help="summarize a sweep CSV and render figures")
    p.add_argument("csv")
    p.add_argument("--outdir", help="figure directory (default: next to the CSV)")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, ValueError) as exc:
        print(f"trigroup: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"trigroup: i/o error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"trigroup: solver error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
