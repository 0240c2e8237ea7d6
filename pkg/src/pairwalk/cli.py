"""Command-line entry point.

Values are layered: preset, then ``--config`` file, then individual flags.
Success prints one JSON line describing the outputs; failure prints one
JSON line on stderr (``{"error": ..., "message": ...}``) and exits nonzero.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ._validation import BoundaryError, ValidationError
from .scenarios import (
    PRESETS,
    ScenarioConfig,
    get_preset,
    load_config,
    parse_step_list,
    run_scenario,
    run_sweep,
)

EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_RUNTIME = 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pairwalk",
        description="Simulate one- or two-particle discrete-time quantum walks with time-dependent coins.",
    )
    p.add_argument("--config", metavar="FILE", help="flat key = value scenario file")
    p.add_argument("--preset", metavar="NAME", help="start from a named preset")
    p.add_argument("--list-presets", action="store_true", help="print preset names and exit")
    p.add_argument("--mode", choices=("single", "pair"))
    p.add_argument("--initial", choices=("sep", "psi-plus", "psi-minus"))
    p.add_argument("--coin1", metavar="COIN", help="hadamard | alpha:A[:TAU] | phi:Q/P")
    p.add_argument("--coin2", metavar="COIN")
    p.add_argument("--interaction", choices=("none", "identity", "pi-phase"))
    p.add_argument("--steps", type=int, metavar="N")
    p.add_argument("--snapshot-at", metavar="LIST", help="comma-separated steps, e.g. 50,100")
    p.add_argument("--entropy-stride", type=int, metavar="K")
    p.add_argument("--no-entropy", action="store_true", help="skip the entanglement entropy column")
    p.add_argument("--label", metavar="TEXT", help="free-text label echoed into snapshot sidecars")
    p.add_argument("--out", metavar="DIR", help="output directory")
    p.add_argument("--sweep", metavar="AXESFILE", help="JSON object mapping axis -> list of values")
    p.add_argument("--workers", type=int, default=1, help="parallel sweep cells (default 1)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def config_from_args(args) -> ScenarioConfig:
    values = {}
    if args.preset:
        values.update(get_preset(args.preset).to_mapping())
    if args.config:
        values.update(load_config(args.config))

    flag_map = {
        "mode": args.mode,
        "initial": args.initial,
        "coin1": args.coin1,
        "coin2": args.coin2,
        "interaction": args.interaction,
        "steps": args.steps,
        "entropy_stride": args.entropy_stride,
        "output_dir": args.out,
        "seed_label": args.label,
    }
    values.update({k: v for k, v in flag_map.items() if v is not None})
    if args.snapshot_at is not None:
        values["snapshot_steps"] = parse_step_list(args.snapshot_at)
    if args.no_entropy:
        values["record_entropy"] = False

    if values.get("mode") == "single":
        for key in ("coin2", "interaction", "initial"):
            values.pop(key, None)
    return ScenarioConfig.from_mapping(values)


def _load_axes(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read sweep axes {path}: {exc.strerror or exc}") from exc
    try:
        axes = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"sweep axes file {path} is not valid JSON: {exc}") from None
    if not isinstance(axes, dict):
        raise ValidationError(f"sweep axes file {path} must hold a JSON object")
    return axes


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.list_presets:
        for name in sorted(PRESETS):
            print(name)
        return 0

    try:
        config = config_from_args(args)
        if args.sweep:
            manifest = run_sweep(config, _load_axes(args.sweep), max_workers=args.workers)
            summary = {"manifest": str(manifest)}
        else:
            result = run_scenario(config)
            summary = {
                "timeseries": str(result.timeseries),
                "snapshots": [str(p) for p in result.snapshots],
            }
    except ValidationError as exc:
        return _fail("validation", str(exc), EXIT_VALIDATION)
    except OSError as exc:
        return _fail("io", str(exc), EXIT_IO)
    except BoundaryError as exc:
        return _fail("boundary", str(exc), EXIT_RUNTIME)
    print(json.dumps(summary))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
