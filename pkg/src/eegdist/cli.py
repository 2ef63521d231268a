"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 invalid input data, 3 internal error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .codec import VERSION as BITSTREAM_VERSION
from .codec import CodecError, EncodedBlock, decode, encode
from .config import ConfigError, SweepConfig, load_config
from .experiment import (
    MODEL_TERMS,
    ExperimentError,
    fit_model,
    model_selection,
    predict_distortion,
    run_channel_study,
    run_sweep,
)
from .metrics import MetricError, log_distortion, prd
from .signal_io import (
    DEFAULT_SAMPLING_RATE,
    RecordFormatError,
    SignalError,
    load_ascii_signal,
    read_records,
    synth_eeg,
    write_ascii_signal,
    write_records,
)
from .stats import PaperModelCoefficients, RegressionFit, nested_anova
from .stats.groups import GroupTestError
from .stats.regression import RegressionError
from .stats.report import format_anova, format_fit, format_nested, format_tukey
from .wavelet import WaveletError, WaveletSpec

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3

DATA_ERRORS = (
    CodecError, ConfigError, ExperimentError, MetricError, RecordFormatError,
    SignalError, RegressionError, GroupTestError, WaveletError, OSError,
    json.JSONDecodeError, KeyError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _write_json(obj, path):
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=False) + "\n", encoding="utf-8")


def cmd_encode(args):
    sig = load_ascii_signal(args.input, args.sampling_rate)
    block = encode(sig, WaveletSpec(args.filter_length, args.levels), args.cr, args.qbits)
    Path(args.out).write_bytes(block.to_bytes())
    print(f"ns={block.ns} M={block.m} Cr={block.compression_ratio:.4f}% bytes={block.bit_length // 8}")


def cmd_decode(args):
    block = EncodedBlock.from_bytes(Path(args.input).read_bytes())
    sig = decode(block, lenient=args.lenient, sampling_rate=args.sampling_rate)
    write_ascii_signal(sig, args.out)


def cmd_prd(args):
    x = load_ascii_signal(args.original)
    xr = load_ascii_signal(args.reconstructed)
    ds = prd(x, xr)
    print(f"Ds = {ds:.10g}")
    print(f"D = {log_distortion(ds, args.log_base):.10g}" if ds > 0 else "D = -inf")


def _config(args) -> SweepConfig:
    cfg = load_config(args.config) if args.config else SweepConfig()
    if getattr(args, "seed", None) is not None:
        cfg = cfg.with_seed(args.seed)
    return cfg


def cmd_sweep(args):
    cfg = _config(args)
    sig = load_ascii_signal(args.signal, args.sampling_rate)
    records = run_sweep(sig, cfg, workers=args.workers)
    write_records(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")


def cmd_fit(args):
    records = read_records(args.data)
    fit = fit_model(records, MODEL_TERMS[args.model], log_base=args.log_base)
    print(format_fit(fit))
    if args.out:
        _write_json(dict(fit.to_dict(), model=args.model), args.out)


def cmd_select(args):
    records = read_records(args.data)
    report = model_selection(records, args.alpha, log_base=args.log_base)
    for i, step in enumerate(report.steps):
        title = "Full model" if i == 0 else f"Reduced model {i} (drop {step.dropped})"
        print(f"# {title}\n{format_fit(step.fit)}\n")
        if step.vs_full is not None:
            print(format_nested(report.full, step.fit, step.vs_full) + "\n")
    print(f"chosen terms: {', '.join(report.chosen.regressors)}")
    if report.n_excluded:
        print(f"excluded {report.n_excluded} records with zero distortion")
    if args.out:
        _write_json(report.to_dict(), args.out)


def cmd_channel_study(args):
    cfg = _config(args)
    sig = load_ascii_signal(args.signal, args.sampling_rate)
    study = run_channel_study(sig, cfg, workers=args.workers, confidence=args.confidence)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_records(study.records, out / "records.csv")
    _write_json(dict(study.anova.to_dict(), groups=study.channel_names), out / "anova.json")
    _write_json(study.tukey.to_dict(), out / "tukey.json")
    with open(out / "boxplot.csv", "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["channel", "name", "n", "min", "q1", "median", "q3", "max", "n_outliers"])
        for b in study.boxes:
            w.writerow([b.channel, b.name, b.n] + [format(v, ".17g") for v in
                       (b.minimum, b.q1, b.median, b.q3, b.maximum)] + [len(b.outliers)])
    print(format_anova(study.anova))
    print()
    print(format_tukey(study.tukey))


def cmd_ztest(args):
    from .stats import two_sample_ztest

    res = two_sample_ztest(args.mean1, args.sd1, args.n1, args.mean2, args.sd2, args.n2)
    print(f"z = {res.z:.10g}")
    print(f"alpha = {res.alpha:.10g}")


def cmd_predict(args):
    if args.paper:
        model = PaperModelCoefficients()
    else:
        model = RegressionFit.from_dict(json.loads(Path(args.fit).read_text(encoding="utf-8")))
    d, ds = predict_distortion(model, args.cr, args.filter_length)
    print(f"D = {d:.10g}")
    print(f"Ds = {ds:.10g}")


def cmd_plot(args):
    from .plotting import plot_records

    plot_records(read_records(args.data), args.kind, args.out)
    print(f"wrote {args.out}")


def cmd_synth(args):
    write_ascii_signal(synth_eeg(args.seed, args.ns, args.sampling_rate), args.out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eegdist", description="DWT EEG encoding distortion toolkit")
    p.add_argument("--version", action="version",
                   version=f"eegdist {__version__} (bitstream version {BITSTREAM_VERSION})")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def rate(sp):
        sp.add_argument("--sampling-rate", type=float, default=DEFAULT_SAMPLING_RATE)

    sp = sub.add_parser("encode", help="compress a signal file into an EEGC block")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--cr", type=float, required=True)
    sp.add_argument("--filter-length", type=int, required=True)
    sp.add_argument("--levels", type=int, default=5)
    sp.add_argument("--qbits", type=int, default=12)
    sp.add_argument("--out", required=True)
    rate(sp)
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="reconstruct a signal from an EEGC block")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--lenient", action="store_true")
    rate(sp)
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("prd", help="distortion between two signal files")
    sp.add_argument("--original", required=True)
    sp.add_argument("--reconstructed", required=True)
    sp.add_argument("--log-base", type=float, default=10.0)
    sp.set_defaults(func=cmd_prd)

    for name, func, help_ in (("sweep", cmd_sweep, "ideal-channel parameter sweep"),
                              ("channel-study", cmd_channel_study, "distortion by channel model")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--config")
        sp.add_argument("--signal", required=True)
        sp.add_argument("--seed", type=int, help="override master_seed from the config")
        sp.add_argument("--workers", type=int, default=1)
        rate(sp)
        if name == "sweep":
            sp.add_argument("--out", required=True)
        else:
            sp.add_argument("--out-dir", required=True)
            sp.add_argument("--confidence", type=float, default=0.95)
        sp.set_defaults(func=func)

    sp = sub.add_parser("fit", help="fit the log-distortion regression")
    sp.add_argument("--data", required=True)
    sp.add_argument("--model", choices=sorted(MODEL_TERMS), default="full")
    sp.add_argument("--out")
    sp.add_argument("--log-base", type=float, default=10.0)
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("select", help="backward model selection with nested ANOVA")
    sp.add_argument("--data", required=True)
    sp.add_argument("--alpha", type=float, default=0.05)
    sp.add_argument("--out")
    sp.add_argument("--log-base", type=float, default=10.0)
    sp.set_defaults(func=cmd_select)

    sp = sub.add_parser("ztest", help="two-sample z test on summary statistics")
    for i in (1, 2):
        sp.add_argument(f"--mean{i}", type=float, required=True)
        sp.add_argument(f"--sd{i}", type=float, required=True)
        sp.add_argument(f"--n{i}", type=int, required=True)
    sp.set_defaults(func=cmd_ztest)

    sp = sub.add_parser("predict", help="evaluate the Cr/F distortion model")
    sp.add_argument("--cr", type=float, required=True)
    sp.add_argument("--filter-length", type=float, required=True)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--fit", help="fit JSON written by `fit --model reduced2`")
    src.add_argument("--paper", action="store_true", help="use the published coefficients")
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("plot", help="SVG chart of a records file")
    sp.add_argument("--data", required=True)
    sp.add_argument("--kind", choices=("surface", "lines", "box"), required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_plot)

    sp = sub.add_parser("synth", help="write a synthetic EEG signal file")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--ns", type=int, default=4096)
    sp.add_argument("--out", required=True)
    rate(sp)
    sp.set_defaults(func=cmd_synth)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        args.func(args)
    except DATA_ERRORS as exc:
        print(f"eegdist {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"eegdist {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        print(f"eegdist {args.command}: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
