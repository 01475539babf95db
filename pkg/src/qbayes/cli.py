"""Command-line entry point: ``qbayes <subcommand> [--config PATH] [--out PATH] ...``."""

import argparse
import os
import sys

from . import harness
from .errors import QBayesError

SUBCOMMANDS = {
    "run": None,
    "verify": "verify-oracle",
    "maxent-compare": "maxent-compare",
    "predict": "predict",
    "tomography": "tomography",
}


def _u64(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON experiment config")
    common.add_argument("--out", help="output file; summary.json is written next to it")
    common.add_argument("--format", choices=harness.FORMATS, help="output format (default csv)")
    common.add_argument("--seed", type=_u64, help="override the config seed")
    common.add_argument("--threads", type=_positive, default=1, help="worker threads for trials")

    parser = argparse.ArgumentParser(prog="qbayes", description="Quantum Bayes-rule experiments.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="run any experiment config (needs --config)")
    sub.add_parser("verify", parents=[common], help="brute-force oracle check of the Bayes rule")
    sub.add_parser("maxent-compare", parents=[common], help="Bayes posterior vs MAXENT assignment")
    sub.add_parser("predict", parents=[common], help="posterior predictive count distribution")
    sub.add_parser("tomography", parents=[common], help="posterior concentration under tomography")
    return parser


def _load(args):
    kind = SUBCOMMANDS[args.command]
    seed = args.seed if args.seed is not None else harness.env_seed_override()
    if args.config:
        cfg = harness.load_config(args.config, seed, args.out, args.format)
        if kind is not None and cfg.kind != kind:
            raise harness.ConfigError(f"'{args.command}' needs kind {kind!r}, config has {cfg.kind!r}", "kind")
        return cfg
    if kind is None:
        raise harness.ConfigError("'run' needs --config")
    return harness.parse_config(harness.DEFAULT_CONFIGS[kind], seed, args.out, args.format)


def _print_verify(rows, out):
    by_case = {}
    for r in rows:
        by_case.setdefault(r.step, {})[r.quantity] = r.value
    for i, q in sorted(by_case.items()):
        status = "PASS" if q["pass"] else "FAIL"
        print(
            f"case {i:3d} {status} {q['case']} trace_distance={q['trace_distance']:.3e} "
            f"|dp_k|={abs(q['p_k_bayes'] - q['p_k_brute']):.3e}",
            file=out,
        )


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _load(args)
        rows, summary = harness.run_experiment(cfg, threads=args.threads)
        if cfg.kind == "verify-oracle":
            _print_verify(rows, sys.stdout)
        if cfg.output_path:
            harness.emit_results(rows, cfg.output_format, cfg.output_path)
            summary_path = os.path.join(os.path.dirname(os.path.abspath(cfg.output_path)), "summary.json")
            harness.write_summary(summary, summary_path)
        elif cfg.kind != "verify-oracle":
            sys.stdout.write(harness.render_results(rows, cfg.output_format))
        print(harness.dumps(summary), file=sys.stdout if cfg.kind == "verify-oracle" else sys.stderr)
    except QBayesError as exc:
        print(f"qbayes: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"qbayes: error: {exc}", file=sys.stderr)
        return 3
    if cfg.kind == "verify-oracle" and not summary["flags"]["all_pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
