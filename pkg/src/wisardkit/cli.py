"""Command-line entry point: train, predict, crossval and sweep subcommands.

All randomness flows from explicit --seed flags; identical invocations
produce byte-identical artifacts.  Every command that writes files also
drops a run_manifest.txt with the full effective configuration beside its
outputs.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from wisardkit.dataset import load_feature_file, make_loo_plan, parse_feature_rows
from wisardkit.encoding import binarize_mean_threshold, pad_to_multiple
from wisardkit.evaluation import (
    SweepRow,
    emit_report,
    run_cross_validation,
    run_perceptron_cross_validation,
    sweep_tuple_size,
)
from wisardkit.wnn import POSITIVE_LABEL, WisardConfig, WisardModel


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {raw}")
    return value


def _fraction(raw: str) -> float:
    value = float(raw)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1], got {raw}")
    return value


def _sweep_range(raw: str) -> range:
    lo, sep, hi = raw.partition(":")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LOW:HIGH, got {raw!r}")
    if not sep or lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"expected LOW:HIGH with 1 <= LOW <= HIGH, got {raw!r}")
    return range(lo, hi + 1)


def _config_from_args(args, n: int) -> WisardConfig:
    return WisardConfig(
        n=n,
        seed=args.seed,
        mapping_kind=args.mapping,
        decision_mode=args.decision_mode,
        threshold_fraction=args.threshold_fraction,
    )


def _write_manifest(directory: str, command: str, settings: dict) -> None:
    lines = [f"command={command}"]
    lines += [f"{key}={settings[key]}" for key in sorted(settings)]
    path = os.path.join(directory, "run_manifest.txt")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def cmd_train(args) -> int:
    ds = load_feature_file(args.features)
    cfg = _config_from_args(args, args.n)
    bits = {s.id: pad_to_multiple(binarize_mean_threshold(s.values), cfg.n) for s in ds.samples}
    length = next(iter(bits.values())).size
    model = WisardModel.create(length, cfg)
    for sample in ds.samples:
        model.train(bits[sample.id], sample.label)
    _atomic_write(args.out, model.to_text())
    _write_manifest(
        os.path.dirname(os.path.abspath(args.out)),
        "train",
        {
            "features": args.features,
            "out": args.out,
            "n": cfg.n,
            "seed": cfg.seed,
            "mapping_kind": cfg.mapping_kind,
            "decision_mode": cfg.decision_mode,
            "threshold_fraction": cfg.threshold_fraction,
        },
    )
    for label in sorted(model.trained_counts):
        print(f"class {label}: {model.trained_counts[label]} samples")
    print(f"model written to {args.out} (L={length}, K={model.mapping.k})")
    return 0


def cmd_predict(args) -> int:
    model = WisardModel.load(args.model)
    with open(args.features, "r", encoding="utf-8") as fh:
        samples = parse_feature_rows(fh.read(), path=args.features)
    n = model.config.n
    if samples:
        padded = -(-samples[0].dim // n) * n
        if padded != model.mapping.length:
            raise ValueError(
                f"dimension mismatch: model retina expects {model.mapping.length} bits "
                f"(a multiple of n={n}), feature file has D={samples[0].dim} which pads "
                f"to {padded}"
            )
    threshold_mode = model.config.decision_mode == "threshold"
    print("id,predicted_label,fired,k_total")
    for sample in samples:
        bits = pad_to_multiple(binarize_mean_threshold(sample.values), n)
        decision = model.classify(bits)
        fired = decision.fired.get(POSITIVE_LABEL, 0) if threshold_mode else decision.fired[decision.label]
        print(f"{sample.id},{decision.label},{fired},{decision.k_total}")
    return 0


def _run_wisard_condition(path, args, sizes) -> list[SweepRow]:
    ds = load_feature_file(path)
    plan = make_loo_plan(ds, pos_group=args.pos_group, neg_group=args.neg_group, seed=args.seed)
    base_cfg = _config_from_args(args, sizes[0])
    return sweep_tuple_size(ds, plan, base_cfg, sizes)


def cmd_crossval(args) -> int:
    if args.sweep is not None:
        sizes = list(args.sweep)
    else:
        sizes = [args.n]

    rows = _run_wisard_condition(args.features, args, sizes)
    comparison = {"wisard_tl": max(row.accuracy for row in rows)}

    if args.features_no_tl:
        raw_rows = _run_wisard_condition(args.features_no_tl, args, sizes)
        comparison["wisard_no_tl"] = max(row.accuracy for row in raw_rows)

    if args.baseline == "perceptron":
        ds = load_feature_file(args.features)
        plan = make_loo_plan(ds, pos_group=args.pos_group, neg_group=args.neg_group, seed=args.seed)
        baseline = run_perceptron_cross_validation(
            ds, plan, learning_rate=args.lr, epochs=args.epochs, seed=args.seed
        )
        comparison["perceptron_baseline"] = baseline.pooled_accuracy

    emit_report(args.out_dir, sweep=rows, comparison=comparison)
    _write_manifest(
        args.out_dir,
        "sweep" if args.sweep is not None else "crossval",
        {
            "features": args.features,
            "features_no_tl": args.features_no_tl or "",
            "out_dir": args.out_dir,
            "n_values": ",".join(str(n) for n in sizes),
            "seed": args.seed,
            "mapping_kind": args.mapping,
            "decision_mode": args.decision_mode,
            "threshold_fraction": args.threshold_fraction,
            "pos_group": args.pos_group,
            "neg_group": args.neg_group,
            "baseline": args.baseline or "",
            "epochs": args.epochs,
            "lr": args.lr,
        },
    )
    for row in rows:
        print(f"n={row.n}: pooled accuracy {row.accuracy:.4f} over {row.confusion.total} predictions")
    for system, value in comparison.items():
        print(f"{system}: {value:.4f}")
    print(f"reports written to {args.out_dir}")
    return 0


def _add_model_flags(parser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="seed for mapping and fold grouping")
    parser.add_argument("--mapping", choices=("random", "linear"), default="random")
    parser.add_argument("--decision-mode", choices=("threshold", "argmax"), default="threshold")
    parser.add_argument("--threshold-fraction", type=_fraction, default=0.5)


def _add_crossval_flags(parser) -> None:
    parser.add_argument("--features", required=True, help="labeled feature CSV")
    parser.add_argument("--out-dir", required=True, help="directory for report CSVs")
    parser.add_argument("--features-no-tl", default=None,
                        help="second feature CSV (raw pixels) evaluated as the wisard_no_tl condition")
    parser.add_argument("--pos-group", type=_positive_int, default=3)
    parser.add_argument("--neg-group", type=_positive_int, default=1)
    parser.add_argument("--baseline", choices=("perceptron",), default=None)
    parser.add_argument("--epochs", type=_positive_int, default=100, help="perceptron baseline epochs")
    parser.add_argument("--lr", type=float, default=0.01, help="perceptron baseline learning rate")
    _add_model_flags(parser)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wisardkit",
        description="Weightless neural network classifier and evaluation harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="train a model on every labeled row of a feature file")
    train.add_argument("--features", required=True)
    train.add_argument("--out", required=True, help="model file to write")
    train.add_argument("--n", type=_positive_int, required=True, help="bits per RAM")
    _add_model_flags(train)
    train.set_defaults(func=cmd_train)

    predict = sub.add_parser("predict", help="classify a feature file with a saved model")
    predict.add_argument("--model", required=True)
    predict.add_argument("--features", required=True)
    predict.set_defaults(func=cmd_predict)

    crossval = sub.add_parser("crossval", help="grouped leave-one-out cross-validation")
    group = crossval.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=_positive_int, help="single tuple size")
    group.add_argument("--sweep", type=_sweep_range, help="tuple-size range LOW:HIGH")
    _add_crossval_flags(crossval)
    crossval.set_defaults(func=cmd_crossval)

    sweep = sub.add_parser("sweep", help="crossval over a tuple-size range (default 9:14)")
    sweep.add_argument("--range", dest="sweep", type=_sweep_range, default=range(9, 15))
    _add_crossval_flags(sweep)
    sweep.set_defaults(func=cmd_crossval, n=None)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
