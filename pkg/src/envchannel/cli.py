"""Command-line entry point: ``envchannel <mode> [options]``.

Exit status is 0 on success, 1 when a verification check fails and 2 on usage
or I/O errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import harness

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2

_CONFIG_KEYS = {
    "samples": ("sample_count", int),
    "seed": ("master_seed", int),
    "theta": ("initial_theta", float),
    "out": ("output_path", str),
    "format": ("output_format", str),
    "workers": ("workers", int),
}


def read_config_file(path: str) -> dict:
    """Parse a ``key = value`` file; blank lines and ``#`` comments are ignored."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = (t.strip() for t in line.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            field, conv = _CONFIG_KEYS[key]
            out[field] = conv(value)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="envchannel",
        description="Entanglement and teleportation experiments for a Bell pair "
        "decohered by a qubit environment.",
    )
    parser.add_argument("mode", choices=harness.MODES)
    parser.add_argument("--samples", type=int, help="number of random interactions")
    parser.add_argument("--seed", type=int, help="master seed (default 0)")
    parser.add_argument("--theta", type=float, help="initial-state angle for 'partial' (default pi/8)")
    parser.add_argument("--out", help="output file (default stdout)")
    parser.add_argument("--format", choices=("csv", "jsonl"), help="output format (default csv)")
    parser.add_argument("--workers", type=int, help="worker processes (results do not depend on it)")
    parser.add_argument("--config", help="key=value file; command-line flags take precedence")
    return parser


def config_from_args(args: argparse.Namespace) -> harness.ExperimentConfig:
    values = read_config_file(args.config) if args.config else {}
    for flag, (field, _) in _CONFIG_KEYS.items():
        v = getattr(args, flag)
        if v is not None:
            values[field] = v
    return harness.ExperimentConfig(mode=args.mode, **values)


def _emit_summary(summary: dict, to_stderr: bool) -> None:
    stream = sys.stderr if to_stderr else sys.stdout
    stream.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (OSError, ValueError) as exc:
        print(f"envchannel: {exc}", file=sys.stderr)
        return EXIT_USAGE

    to_stdout = cfg.output_path is None
    try:
        if cfg.mode == "verify":
            checks = harness.run_verify(cfg)
            harness.write_records(checks, cfg.output_path, cfg.output_format, stream=sys.stdout)
            failed = [c.name for c in checks if not c.passed]
            for c in checks:
                status = "PASS" if c.passed else "FAIL"
                print(f"{status} {c.name}: max residual {c.max_residual:.3e} (tol {c.tolerance:.0e})",
                      file=sys.stderr)
            if failed:
                print(f"envchannel: failed checks: {', '.join(failed)}", file=sys.stderr)
                return EXIT_CHECK_FAILED
            return EXIT_OK

        runner = {
            "cue": harness.run_cue,
            "pq-scan": harness.run_pq_scan,
            "teleport": harness.run_teleport,
            "partial": harness.run_partial,
        }[cfg.mode]
        records, summary = runner(cfg)
        harness.write_records(records, cfg.output_path, cfg.output_format, stream=sys.stdout)
        _emit_summary(summary, to_stderr=to_stdout)
    except OSError as exc:
        print(f"envchannel: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"envchannel: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
