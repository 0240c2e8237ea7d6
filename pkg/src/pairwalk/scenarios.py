"""Scenario configuration, the preset catalog, file output and sweeps."""

from __future__ import annotations

import configparser
import csv
import dataclasses
import itertools
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ._validation import ValidationError, check_int
from .coins import (
    Alpha,
    CoinSpec,
    Hadamard,
    InteractionRule,
    Phi,
    format_coin,
    parse_coin,
    parse_interaction,
)
from .estimators import SingleParticleWalk, TwoParticleWalk
from .lattice import canonical_initial

__all__ = [
    "ScenarioConfig",
    "ScenarioResult",
    "PRESETS",
    "get_preset",
    "load_config",
    "run_scenario",
    "run_sweep",
    "fit_exponent",
    "SNAPSHOT_THRESHOLD",
    "TIMESERIES_HEADER",
]

log = logging.getLogger(__name__)

TIMESERIES_HEADER = ("step", "sigma", "c12", "delta12", "entropy")
SNAPSHOT_THRESHOLD = 1e-15
SWEEP_AXES = ("alpha1", "alpha2", "q", "p", "interaction", "initial", "coin1", "coin2", "steps")


@dataclass
class ScenarioConfig:
    mode: str = "pair"
    coin1: CoinSpec = field(default_factory=Hadamard)
    coin2: Optional[CoinSpec] = None
    interaction: Optional[InteractionRule] = None
    initial: Optional[str] = None
    steps: int = 100
    record_entropy: bool = True
    entropy_stride: Optional[int] = None
    snapshot_steps: Tuple[int, ...] = ()
    output_dir: str = "out"
    seed_label: str = ""

    def __post_init__(self):
        if self.mode not in ("single", "pair"):
            raise ValidationError(f"mode must be 'single' or 'pair', got {self.mode!r}")
        self.coin1 = _coin(self.coin1)
        if self.mode == "pair":
            self.coin2 = self.coin1 if self.coin2 is None else _coin(self.coin2)
            self.interaction = parse_interaction(self.interaction or "none")
            self.initial = canonical_initial(self.initial or "sep")
        else:
            extras = [n for n in ("coin2", "interaction", "initial") if getattr(self, n) is not None]
            if extras:
                raise ValidationError(f"single mode does not take pair fields: {', '.join(extras)}")
        self.steps = check_int(self.steps, "steps", minimum=0)
        if self.entropy_stride is not None:
            self.entropy_stride = check_int(self.entropy_stride, "entropy_stride", minimum=1)
        snaps = tuple(sorted({check_int(s, "snapshot step", minimum=0) for s in self.snapshot_steps}))
        if snaps and snaps[-1] > self.steps:
            raise ValidationError(f"snapshot step {snaps[-1]} is beyond steps={self.steps}")
        self.snapshot_steps = snaps
        self.record_entropy = bool(self.record_entropy)
        self.output_dir = str(self.output_dir)
        self.seed_label = str(self.seed_label)

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)

    def to_mapping(self) -> Dict[str, object]:
        """Plain-text view with the same keys the config file accepts."""
        out: Dict[str, object] = {"mode": self.mode, "coin1": format_coin(self.coin1)}
        if self.mode == "pair":
            out["coin2"] = format_coin(self.coin2)
            out["interaction"] = self.interaction.value
            out["initial"] = self.initial
        out.update(
            steps=self.steps,
            record_entropy=self.record_entropy,
            entropy_stride=self.entropy_stride,
            snapshot_steps=list(self.snapshot_steps),
            output_dir=self.output_dir,
            seed_label=self.seed_label,
        )
        return out

    @classmethod
    def from_mapping(cls, values: Mapping[str, object]) -> "ScenarioConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ValidationError(f"unknown config keys: {', '.join(unknown)}")
        kwargs = dict(values)
        for key in ("steps", "entropy_stride"):
            if isinstance(kwargs.get(key), str):
                kwargs[key] = _parse_int(kwargs[key], key)
        if isinstance(kwargs.get("record_entropy"), str):
            kwargs["record_entropy"] = _parse_bool(kwargs["record_entropy"])
        if isinstance(kwargs.get("snapshot_steps"), str):
            kwargs["snapshot_steps"] = parse_step_list(kwargs["snapshot_steps"])
        return cls(**kwargs)

    def estimator(self):
        if self.mode == "single":
            return SingleParticleWalk(coin=self.coin1, steps=self.steps, snapshot_steps=self.snapshot_steps)
        return TwoParticleWalk(
            coin1=self.coin1,
            coin2=self.coin2,
            interaction=self.interaction,
            initial=self.initial,
            steps=self.steps,
            record_entropy=self.record_entropy,
            entropy_stride=self.entropy_stride,
            snapshot_steps=self.snapshot_steps,
        )


def _coin(value) -> CoinSpec:
    return parse_coin(value) if isinstance(value, str) else value


def _parse_int(text: str, name: str) -> Optional[int]:
    text = text.strip()
    if text.lower() in ("", "none"):
        return None
    try:
        return int(text)
    except ValueError:
        raise ValidationError(f"{name} must be an integer, got {text!r}") from None


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValidationError(f"not a boolean: {text!r}")


def parse_step_list(text: str) -> Tuple[int, ...]:
    """``"0,50,100"`` or ``"[0, 50]"`` -> (0, 50, 100)."""
    text = text.strip().strip("[]")
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.replace(" ", "").split(",") if v)
    except ValueError:
        raise ValidationError(f"cannot parse step list {text!r}") from None


def load_config(path) -> Dict[str, str]:
    """Read a flat ``key = value`` file into raw strings (no section headers)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    parser = configparser.ConfigParser(interpolation=None, delimiters=("=",))
    parser.optionxform = str
    try:
        parser.read_string("[scenario]\n" + text, source=str(path))
    except configparser.Error as exc:
        raise ValidationError(f"malformed config {path}: {exc}") from None
    return dict(parser["scenario"])


# ---------------------------------------------------------------- presets

_ALPHA_PAIRS = {
    "a0": (0.0, 0.0),
    "a0.5": (0.5, 0.5),
    "a1.25": (1.25, 1.25),
    "a0-0.5": (0.0, 0.5),
    "a0-1.25": (0.0, 1.25),
}
_PHI_PARAMS = ((1, 100), (1, 50), (4, 50))
_INITIAL_TAGS = {"sep": "sep", "psiplus": "psi-plus", "psiminus": "psi-minus"}
_INTERACTION_TAGS = {
    "noninteracting": InteractionRule.NONE,
    "one": InteractionRule.IDENTITY,
    "piphase": InteractionRule.PI_PHASE,
}


def _build_presets() -> Dict[str, ScenarioConfig]:
    presets: Dict[str, ScenarioConfig] = {}

    for a in (0.0, 0.25, 0.5, 0.75, 1.25):
        name = f"single-alpha{a:g}"
        presets[name] = ScenarioConfig(mode="single", coin1=Alpha(a), steps=1000, output_dir=f"out/{name}")
    for q, p in _PHI_PARAMS + ((3, 50),):
        name = f"single-phi-q{q}p{p}"
        presets[name] = ScenarioConfig(mode="single", coin1=Phi(q, p), steps=200, output_dir=f"out/{name}")

    for init_tag, initial in _INITIAL_TAGS.items():
        for inter_tag, rule in _INTERACTION_TAGS.items():
            for a_tag, (a1, a2) in _ALPHA_PAIRS.items():
                name = f"fig-{init_tag}-{inter_tag}-{a_tag}"
                presets[name] = ScenarioConfig(
                    coin1=Alpha(a1),
                    coin2=Alpha(a2),
                    interaction=rule,
                    initial=initial,
                    steps=100,
                    snapshot_steps=(100,),
                    output_dir=f"out/{name}",
                )
            for q, p in _PHI_PARAMS:
                name = f"dynloc-{inter_tag}-{init_tag}-q{q}p{p}"
                presets[name] = ScenarioConfig(
                    coin1=Phi(q, p),
                    coin2=Phi(q, p),
                    interaction=rule,
                    initial=initial,
                    steps=200,
                    snapshot_steps=(p, 200),
                    output_dir=f"out/{name}",
                )

    for init_tag in ("psiplus", "psiminus"):
        for q, p in _PHI_PARAMS:
            name = f"comb4-{init_tag}-q{q}p{p}"
            presets[name] = ScenarioConfig(
                coin1=Hadamard(),
                coin2=Phi(q, p),
                interaction=InteractionRule.NONE,
                initial=_INITIAL_TAGS[init_tag],
                steps=200,
                snapshot_steps=(200,),
                output_dir=f"out/{name}",
            )
    return presets


PRESETS: Dict[str, ScenarioConfig] = _build_presets()


def get_preset(name: str) -> ScenarioConfig:
    try:
        return PRESETS[name].replace()
    except KeyError:
        raise ValidationError(f"unknown preset {name!r}; run with --list-presets") from None


# ---------------------------------------------------------------- running


@dataclass
class ScenarioResult:
    timeseries: Path
    snapshots: List[Path]
    estimator: object


def _fmt(value) -> str:
    if value is None:
        return ""
    value = float(value)
    if np.isnan(value):
        return ""
    return repr(value + 0.0)  # folds -0.0 into 0.0


def _write_timeseries(path: Path, config: ScenarioConfig, est) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TIMESERIES_HEADER)
        for rec in est.records():
            writer.writerow(
                [rec.step, _fmt(rec.sigma), _fmt(rec.c12), _fmt(rec.delta12), _fmt(rec.entropy)]
            )


def _write_snapshot(outdir: Path, config: ScenarioConfig, est, step: int) -> Path:
    lattice = est.lattice_
    xs = lattice.positions
    csv_path = outdir / f"snapshot_{step:05d}.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if config.mode == "pair":
            p = est.snapshots_[step].p
            writer.writerow(("x", "y", "p"))
            for i, j in zip(*np.nonzero(p > SNAPSHOT_THRESHOLD)):
                writer.writerow((int(xs[i]), int(xs[j]), repr(float(p[i, j]))))
        else:
            p = est.snapshots_[step]
            writer.writerow(("x", "p"))
            for i in np.flatnonzero(p > SNAPSHOT_THRESHOLD):
                writer.writerow((int(xs[i]), repr(float(p[i]))))
    sidecar = {
        "step": step,
        "lattice": {"x_min": int(xs[0]), "x_max": int(xs[-1]), "half_width": lattice.half_width},
        "threshold": SNAPSHOT_THRESHOLD,
        "config": config.to_mapping(),
    }
    json_path = csv_path.with_suffix(".json")
    json_path.write_text(json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    return csv_path


def run_scenario(config: ScenarioConfig) -> ScenarioResult:
    """Run one scenario and write ``timeseries.csv`` plus requested snapshots."""
    outdir = Path(config.output_dir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {outdir}: {exc.strerror or exc}") from exc

    log.info("running %s scenario for %d steps into %s", config.mode, config.steps, outdir)
    est = config.estimator().fit()
    ts_path = outdir / "timeseries.csv"
    try:
        _write_timeseries(ts_path, config, est)
        snapshots = [_write_snapshot(outdir, config, est, s) for s in config.snapshot_steps]
    except OSError as exc:
        raise OSError(f"failed writing results under {outdir}: {exc.strerror or exc}") from exc
    return ScenarioResult(ts_path, snapshots, est)


def _apply_axis(config: ScenarioConfig, name: str, value) -> ScenarioConfig:
    if name in ("alpha1", "alpha2"):
        slot = "coin1" if name == "alpha1" else "coin2"
        if slot == "coin2" and config.mode != "pair":
            raise ValidationError("alpha2 axis requires pair mode")
        current = getattr(config, slot)
        tau = current.tau if isinstance(current, Alpha) else 1
        return config.replace(**{slot: Alpha(float(value), tau)})
    if name in ("q", "p"):
        slots = [s for s in ("coin1", "coin2") if isinstance(getattr(config, s), Phi)]
        if not slots:
            raise ValidationError(f"sweep axis {name!r} needs at least one phi coin in the base config")
        changes = {s: dataclasses.replace(getattr(config, s), **{name: int(value)}) for s in slots}
        return config.replace(**changes)
    if name in ("interaction", "initial", "coin1", "coin2", "steps"):
        if name != "coin1" and name != "steps" and config.mode != "pair":
            raise ValidationError(f"{name} axis requires pair mode")
        return config.replace(**{name: value})
    raise ValidationError(f"unknown sweep axis {name!r}; expected one of {', '.join(SWEEP_AXES)}")


def expand_axes(base: ScenarioConfig, axes: Mapping[str, Sequence]) -> List[Tuple[Dict, ScenarioConfig]]:
    """Cartesian product of ``axes`` applied to ``base``; validates every cell up front."""
    for name, values in axes.items():
        if name not in SWEEP_AXES:
            raise ValidationError(f"unknown sweep axis {name!r}; expected one of {', '.join(SWEEP_AXES)}")
        if isinstance(values, (str, bytes)) or not isinstance(values, Sequence) or not values:
            raise ValidationError(f"sweep axis {name!r} needs a non-empty list of values")
    names = list(axes)
    cells = []
    for i, combo in enumerate(itertools.product(*(axes[n] for n in names))):
        params = dict(zip(names, combo))
        cfg = base
        for n, v in params.items():
            cfg = _apply_axis(cfg, n, v)
        cfg = cfg.replace(output_dir=os.path.join(base.output_dir, f"cell_{i:03d}"))
        cells.append((params, cfg))
    return cells


def _run_cell(args):
    index, params, config = args
    entry = {"cell": index, "params": params, "output_dir": config.output_dir, "config": config.to_mapping()}
    try:
        result = run_scenario(config)
    except Exception as exc:  # a failing cell must not sink the sweep
        entry.update(status="failed", error=f"{type(exc).__name__}: {exc}")
    else:
        entry.update(
            status="ok",
            timeseries=str(result.timeseries),
            snapshots=[str(p) for p in result.snapshots],
        )
    return entry


def run_sweep(base: ScenarioConfig, axes: Mapping[str, Sequence], max_workers: Optional[int] = 1) -> Path:
    """Run every cell of the axis product; returns the manifest path.

    ``max_workers > 1`` runs cells in separate processes; outputs do not
    depend on the worker count.
    """
    cells = expand_axes(base, axes)
    jobs = [(i, params, cfg) for i, (params, cfg) in enumerate(cells)]
    if max_workers is not None and max_workers <= 1:
        entries = [_run_cell(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            entries = list(pool.map(_run_cell, jobs))

    manifest = {
        "base": base.to_mapping(),
        "axes": {k: list(v) for k, v in axes.items()},
        "cells": entries,
    }
    outdir = Path(base.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n")
    return path


def fit_exponent(timeseries, n_min: int, n_max: int) -> float:
    """Least-squares slope of log(sigma) against log(n) for n_min <= n <= n_max.

    ``timeseries`` is a sequence of ``(n, sigma)`` pairs.
    """
    n_min = check_int(n_min, "n_min", minimum=1)
    n_max = check_int(n_max, "n_max")
    if n_max <= n_min:
        raise ValidationError(f"need n_max > n_min, got [{n_min}, {n_max}]")
    data = np.asarray(list(timeseries), dtype=float).reshape(-1, 2)
    n, sig = data[:, 0], data[:, 1]
    window = (n >= n_min) & (n <= n_max)
    if np.count_nonzero(window) < 2:
        raise ValidationError(f"fewer than two points in [{n_min}, {n_max}]")
    if np.any(sig[window] <= 0):
        raise ValidationError("sigma must be positive throughout the fit window")
    slope, _ = np.polyfit(np.log(n[window]), np.log(sig[window]), 1)
    return float(slope)

